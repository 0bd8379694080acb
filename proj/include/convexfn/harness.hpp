#pragma once

// Randomized property suites over generated corpora, the two counterexample
// constructions for radial densities, and the trial runner.

#include "convexfn/corpus.hpp"
#include "convexfn/symmetrization.hpp"
#include "convexfn/wulff.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <memory>
#include <thread>

namespace convexfn {

struct SuiteConfig {
  std::uint64_t seed = 7;
  int trials = 200;
  int n = 2;
  int m = 128;            // ball resolution
  int directions = 2000;  // Wulff shapes with a radial part
  double tol = 1e-9;      // identities
  bool parallel = true;
  std::shared_ptr<const RecFunction> phi;  // fixed integrand for wulff-inequality
};

// ---------------------------------------------------------------------------
// Counterexamples

/// Z_j of t|x| + I_B against a density alpha, in closed form.
inline double radial_cone_fiv(int n, int j, double alpha_t) {
  return kappa(n) / kappa(n - j) * binomial(n, j) * alpha_t;
}

namespace detail {

inline Digest digest_of(const Profile& alpha) {
  Digest d;
  d.add(alpha.knots()).add(alpha.values());
  return d;
}

inline void check_density(const Profile& alpha, const char* who) {
  if (!alpha.nonnegative()) throw InputError(std::string(who) + ": density must be non-negative");
  bool zero = true;
  for (double v : alpha.values()) zero = zero && v == 0.0;
  if (zero) throw InputError(std::string(who) + ": density vanishes identically");
}

}  // namespace detail

/// Z_j of u_{t1} box u_{t2} against the Brunn-Minkowski bound
/// (Z_j(u_{t1})^{1/j} + Z_j(u_{t2})^{1/j})^j. "holds" means the failure is
/// confirmed: strict violation, closed form matched, j = 1 additive.
inline Report counterexample_bm(int j, const Profile& alpha, double t1, double t2, int n = 2, int m = 128,
                                double tol = 1e-9) {
  Report r("brunn-minkowski-failure", tol);
  if (n < 2 || j < 2 || j > n) throw InputError("counterexample_bm: need 2 <= j <= n");
  detail::check_density(alpha, "counterexample_bm");
  if (!(t1 >= 0 && t2 >= 0)) throw InputError("counterexample_bm: t must be non-negative");
  if (!(alpha(t1) > alpha(t2))) throw InputError("counterexample_bm: need alpha(t1) > alpha(t2)");
  r.inputs_digest = detail::digest_of(alpha).add(t1).add(t2).add(static_cast<double>(n)).add(static_cast<double>(j)).hex();

  const UtPair a = make_ut(t1, n, m), b = make_ut(t2, n, m);
  const RadialFunction w = inf_convolution(a.exact, b.exact);
  const double lhs = fiv_radial(j, alpha, w);
  const double closed = kappa(n) / kappa(n - j) * binomial(n, j) * (alpha(t1) + (std::pow(2.0, j) - 1) * alpha(t2));
  const double z1 = fiv_radial(j, alpha, a.exact), z2 = fiv_radial(j, alpha, b.exact);
  const double rhs = std::pow(std::pow(z1, 1.0 / j) + std::pow(z2, 1.0 / j), j);
  const double closed_err = std::abs(lhs - closed) / std::max(std::abs(closed), 1e-300);
  r.set("lhs", lhs).set("closed_form", closed).set("closed_form_error", closed_err);
  r.set("z_t1", z1).set("z_t2", z2).set("rhs", rhs).set("gap", rhs - lhs);
  r.require(closed_err <= tol, "closed form does not match");
  r.require(lhs < rhs, "no violation of the Brunn-Minkowski bound");

  const double c_lhs = fiv_radial(1, alpha, w);
  const double c_rhs = fiv_radial(1, alpha, a.exact) + fiv_radial(1, alpha, b.exact);
  const double c_err = std::abs(c_lhs - c_rhs) / std::max(std::abs(c_rhs), 1e-300);
  r.set("control_lhs", c_lhs).set("control_rhs", c_rhs).set("control_error", c_err);
  r.require(c_err <= tol, "degree-one control is not additive");

  if (n == 2) {
    const PAFunction wp = inf_convolution(a.approx, b.approx);
    const double pa = j == n ? fiv_top(alpha, wp) : fiv_steiner_extraction(j, alpha, wp, m).value;
    const double pa_err = std::abs(pa - lhs) / lhs;
    r.set("polygonal_value", pa).set("polygonal_error", pa_err);
    r.require(pa_err <= 0.01, "polygonal path disagrees");
  } else {
    r.note = "polygonal path only for n = 2";
  }
  return r;
}

/// Members lambda(t) (.) u_t with Z_k = 1 and their Z_j, which tend to 0
/// when alpha(t) does.
inline Report counterexample_iso(int j, int k, const Profile& alpha, const std::vector<double>& ts, int n = 2,
                                 double tol = 1e-9) {
  Report r("isoperimetric-failure", tol);
  if (!(1 <= j && j < k && k <= n)) throw InputError("counterexample_iso: need 1 <= j < k <= n");
  detail::check_density(alpha, "counterexample_iso");
  if (ts.empty()) throw InputError("counterexample_iso: empty t-sequence");
  Digest dg = detail::digest_of(alpha);
  r.inputs_digest = dg.add(ts).add(static_cast<double>(j)).add(static_cast<double>(k)).add(static_cast<double>(n)).hex();
  const double c = kappa(n - k) / (kappa(n) * binomial(n, k));
  double constraint = 0, closed_err = 0;
  std::vector<double> zj;
  int skipped = 0;
  for (double t : ts) {
    if (!(t >= 0)) throw InputError("counterexample_iso: t must be non-negative");
    const double a = alpha(t);
    if (a <= 0) {
      ++skipped;
      continue;
    }
    const double lambda = std::pow(c / a, 1.0 / k);
    const RadialFunction u = RadialFunction(n, {0.0, 1.0}, {0.0, t}).epi_scale(lambda);
    const double vk = fiv_radial(k, alpha, u), vj = fiv_radial(j, alpha, u);
    const double closed = std::pow(c, static_cast<double>(j) / k) * kappa(n) / kappa(n - j) * binomial(n, j) *
                          std::pow(a, static_cast<double>(k - j) / k);
    constraint = std::max(constraint, std::abs(vk - 1.0));
    closed_err = std::max(closed_err, std::abs(vj - closed) / closed);
    const std::string i = std::to_string(zj.size());
    r.set("lambda_" + i, lambda).set("z_j_" + i, vj);
    zj.push_back(vj);
  }
  if (zj.empty()) return r.unmet("alpha vanishes along the whole sequence");
  bool decreasing = true;
  for (size_t i = 1; i < zj.size(); ++i) decreasing = decreasing && zj[i] < zj[i - 1];
  r.set("members", static_cast<double>(zj.size())).set("skipped", skipped);
  r.set("constraint_error", constraint).set("closed_form_error", closed_err);
  r.set("first", zj.front()).set("last", zj.back()).set("ratio", zj.back() / zj.front());
  r.set("decreasing", decreasing ? 1.0 : 0.0);
  r.require(constraint <= tol, "constraint Z_k = 1 fails");
  r.require(closed_err <= tol, "closed form does not match");
  r.require(*std::min_element(zj.begin(), zj.end()) > 0, "member with vanishing Z_j");
  return r;
}

/// alpha(s) = max(1 - s, 0).
inline Profile ramp_density() { return Profile({0.0, 1.0}, {1.0, 0.0}); }

/// t_l = 1 - 2^{-l}, l = 1..count.
inline std::vector<double> halving_sequence(int count = 10) {
  std::vector<double> ts;
  for (int l = 1; l <= count; ++l) ts.push_back(1.0 - std::pow(2.0, -l));
  return ts;
}

// ---------------------------------------------------------------------------
// Trial runner

namespace detail {

/// f(trial) for every trial, on a thread pool when asked; results and the
/// first failing trial's exception come back in trial order.
template <class F>
std::vector<Report> run_trials(int count, bool parallel, F&& f) {
  std::vector<Report> out(static_cast<size_t>(count));
  std::vector<std::exception_ptr> errors(static_cast<size_t>(count));
  const int workers = parallel ? std::min<int>(count, static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))) : 1;
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// One report per statement: counts, the worst "error" quantity over the
/// checked trials and the first failing trial.
inline Report aggregate(const std::string& id, const std::vector<Report>& trials, std::uint64_t seed) {
  Report r(id, trials.empty() ? 0.0 : trials.front().tolerance, seed);
  Digest dg;
  int checked = 0, unmet = 0, violations = 0, worst_trial = -1;
  double worst = 0;
  std::string first_unmet;
  for (size_t i = 0; i < trials.size(); ++i) {
    const Report& t = trials[i];
    dg.add(t.inputs_digest);
    if (t.verdict == Verdict::HypothesisUnmet) {
      ++unmet;
      if (first_unmet.empty()) first_unmet = "trial " + std::to_string(i) + ": " + t.note;
      continue;
    }
    ++checked;
    if (t.verdict == Verdict::Violated) {
      ++violations;
      if (r.note.empty()) r.note = "trial " + std::to_string(i) + ": " + t.note;
    }
    if (auto e = t.get("error"); e && (worst_trial < 0 || *e > worst)) {
      worst = *e;
      worst_trial = static_cast<int>(i);
    }
  }
  r.inputs_digest = dg.hex();
  r.set("trials", static_cast<double>(trials.size())).set("checked", checked).set("unmet", unmet);
  r.set("violations", violations).set("worst_error", worst).set("worst_trial", worst_trial);
  if (violations > 0)
    r.verdict = Verdict::Violated;
  else if (checked == 0)
    r.unmet(first_unmet.empty() ? "no trials" : first_unmet);
  return r;
}

}  // namespace detail

/// One named property, evaluated per trial from a generator seeded by the
/// trial index alone, so checks in one run share their corpus.
struct Check {
  std::string id;
  int cap = 0;  // trial limit; 0 = the configured count
  std::function<Report(std::mt19937_64&, const SuiteConfig&, int)> trial;
};

inline Report run_check(const Check& c, const SuiteConfig& cfg) {
  const int count = c.cap > 0 ? std::min(c.cap, cfg.trials) : cfg.trials;
  if (count <= 0) throw InputError("suite: trial count must be positive");
  auto trials = detail::run_trials(count, cfg.parallel, [&](int i) {
    const std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
    std::mt19937_64 rng(s);
    Report r = c.trial(rng, cfg, i);
    r.statement = c.id;
    r.seed = s;
    return r;
  });
  if (c.cap == 1) {
    trials.front().seed = cfg.seed;
    return trials.front();
  }
  return detail::aggregate(c.id, trials, cfg.seed);
}

// ---------------------------------------------------------------------------
// Trial building blocks

namespace suite_detail {

inline CorpusSpec corpus(int n, BoundaryCondition b = BoundaryCondition::Free, int max_sites = 12) {
  CorpusSpec s;
  s.n = n;
  s.min_sites = n + 1;
  s.max_sites = max_sites;
  s.boundary = b;
  return s;
}

inline Digest digest(std::initializer_list<const PAFunction*> fs) {
  Digest d;
  for (const PAFunction* f : fs) d.add(f->points()).add(f->values());
  return d;
}

inline Report within(const Digest& dg, double error, double tol, const std::string& why) {
  Report r("", tol);
  r.inputs_digest = dg.hex();
  r.set("error", error);
  r.require(error <= tol, why);
  return r;
}

/// |got - expected| relative to max(1, |expected|).
inline double rel(double got, double expected) { return std::abs(got - expected) / std::max(1.0, std::abs(expected)); }

/// lhs >= rhs up to tol relative to max(1, |rhs|); error is the scaled
/// shortfall (negative when there is slack).
inline Report at_least(const Digest& dg, double lhs, double rhs, double tol, const std::string& why) {
  Report r("", tol);
  r.inputs_digest = dg.hex();
  const double scale = std::max(1.0, std::abs(rhs));
  r.set("lhs", lhs).set("rhs", rhs).set("gap", lhs - rhs).set("error", (rhs - lhs) / scale);
  r.require(lhs >= rhs - tol * scale, why);
  return r;
}

inline Vec uniform_vec(std::mt19937_64& rng, int d, double lo, double hi) {
  std::uniform_real_distribution<double> U(lo, hi);
  Vec v(d);
  for (int k = 0; k < d; ++k) v[k] = U(rng);
  return v;
}

inline std::vector<Vec> uniform_points(std::mt19937_64& rng, int d, int count, double lo = -1, double hi = 1) {
  std::vector<Vec> pts;
  for (int i = 0; i < count; ++i) pts.push_back(uniform_vec(rng, d, lo, hi));
  return pts;
}

inline Vec sphere_point(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> G;
  Vec v(d);
  do
    for (int k = 0; k < d; ++k) v[k] = G(rng);
  while (v.norm() < 1e-6);
  return v.normalized();
}

inline Polytope random_body(std::mt19937_64& rng, int d, int count) {
  for (;;) {
    Polytope K = Polytope::hull(uniform_points(rng, d, count));
    if (K.full_dimensional() && K.volume() > 1e-3) return K;
  }
}

/// Random PA function with values in [-1, 0.5] (not necessarily in Conv_0).
inline PAFunction random_pa(std::mt19937_64& rng, int n, int sites) {
  std::uniform_real_distribution<double> V(-1.0, 0.5);
  for (;;) {
    const std::vector<Vec> pts = uniform_points(rng, n, sites);
    std::vector<double> vals;
    for (int i = 0; i < sites; ++i) vals.push_back(V(rng));
    PAFunction f(pts, vals);
    if (f.full_domain()) return f;
  }
}

inline AffineMax random_affine_max(std::mt19937_64& rng, int n, int pieces = 4) {
  AffineMax a;
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  for (int i = 0; i < pieces; ++i) {
    a.slopes.push_back(uniform_vec(rng, n, -1.5, 1.5));
    a.intercepts.push_back(U(rng));
  }
  return a;
}

/// Affine maximum with slopes around the origin and positive intercepts, so
/// the c-bound holds (n = 2).
inline AffineMax admissible_affine(std::mt19937_64& rng, int pieces = 5) {
  std::uniform_real_distribution<double> R(0.4, 1.6), B(0.3, 1.5), J(-0.3, 0.3);
  AffineMax a;
  for (int i = 0; i < pieces; ++i) {
    const double ang = 2 * std::numbers::pi * (i + J(rng)) / pieces;
    const double r = R(rng);
    a.slopes.push_back(make_vec({r * std::cos(ang), r * std::sin(ang)}));
    a.intercepts.push_back(B(rng));
  }
  return a;
}

/// Non-negative compact density with two positive knots.
inline Profile random_density(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> V(0.2, 1.2), A(0.2, 0.8), W(0.2, 1.2);
  const double a = A(rng), b = a + W(rng);
  const double v0 = V(rng), v1 = V(rng);
  return Profile({0.0, a, b}, {v0, v1, 0.0});
}

inline double vertex_distance(const Polytope& A, const Polytope& B) { return detail::vertex_distance(A, B); }

inline double level_volume_or_zero(const PAFunction& u, double s) {
  const auto L = level_set(u, s);
  return L ? L->volume() : 0.0;
}

inline void require_plane(const SuiteConfig& cfg, const std::string& suite) {
  if (cfg.n != 2) throw InputError("suite " + suite + ": only n = 2");
}

// ------------------------------------------------------------------ lift

inline std::vector<Check> lift_checks() {
  std::vector<Check> c;
  c.push_back({"lift-volume", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const ConvZFunction u = random_convz(corpus(cfg.n), rng);
                 const double v = lift_body(u).body().volume(), w = 2 * vbar_np1(u);
                 Report r = within(digest({&u.fn()}), rel(v, w), cfg.tol, "lift volume is not twice the integral");
                 return r.set("lift_volume", v).set("twice_integral", w);
               }});
  c.push_back({"lift-additivity", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int trial) {
                 const ConvZFunction u1 = random_convz(corpus(cfg.n), rng), u2 = random_convz(corpus(cfg.n), rng);
                 const double lambdas[] = {0.0, 0.3, 1.0, 2.0};
                 const double l1 = lambdas[trial % 4], l2 = lambdas[(trial / 4) % 4];
                 const ConvZFunction w(epi_combination({u1.fn(), u2.fn()}, {l1, l2}));
                 const Polytope lhs = lift_body(w).body();
                 const Polytope rhs = minkowski_combination({lift_body(u1).body(), lift_body(u2).body()}, {l1, l2});
                 Digest dg = digest({&u1.fn(), &u2.fn()});
                 Report r = within(dg.add(l1).add(l2), vertex_distance(lhs, rhs), cfg.tol, "lift of the combination differs");
                 return r.set("lambda_1", l1).set("lambda_2", l2);
               }});
  c.push_back({"lower-facet-transfer", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const ConvZFunction u = random_convz(corpus(cfg.n), rng);
                 const RecFunction affine = RecFunction::affine_max(random_affine_max(rng, cfg.n));
                 const RecFunction radial = RecFunction::radial(cfg.n, random_density(rng));
                 const AtomicMeasure ma = ma_conjugate(u.fn());
                 double err = 0;
                 for (const RecFunction* phi : {&affine, &radial}) {
                   const auto f = [&](const Vec& y) { return (*phi)(y); };
                   err = std::max(err, rel(lower_facet_integral(u, f), ma.integrate(f)));
                 }
                 return within(digest({&u.fn()}), err, cfg.tol, "lower facets and cells disagree");
               }});
  c.push_back({"equator-boundary", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const ConvZFunction u = random_convz(corpus(cfg.n), rng);
                 const double d = measure_distance(equatorial_measure(u), boundary_measure(u), 1e-7);
                 return within(digest({&u.fn()}), d, cfg.tol, "equatorial measure differs from the boundary measure");
               }});
  c.push_back({"floor-round-trip", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const ConvZFunction u = random_convz(corpus(cfg.n), rng);
                 const LiftedBody K = lift_body(u);
                 const double d = vertex_distance(lift_body(floor_function(K)).body(), K.body());
                 return within(digest({&u.fn()}), d, cfg.tol, "floor does not lift back to the body");
               }});
  c.push_back({"biconjugation", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int trial) {
                 const PAFunction u = random_pa(rng, cfg.n, 4 + trial % 20);
                 const PAFunction uss = conjugate_of_affine_max(conjugate_affine(u));
                 double err = 0;
                 for (size_t i = 0; i < u.points().size(); ++i) err = std::max(err, rel(uss.evaluate(u.points()[i]), u.values()[i]));
                 return within(digest({&u}), err, cfg.tol, "u** differs from u at a site");
               }});
  c.push_back({"conjugation-rules", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const PAFunction u = random_pa(rng, cfg.n, 10), v = random_pa(rng, cfg.n, 10);
                 const Vec x0 = uniform_vec(rng, cfg.n, -1, 1);
                 std::uniform_real_distribution<double> C(-2, 2);
                 const double shift = C(rng);
                 const AffineMax cu = conjugate_affine(u), cv = conjugate_affine(v);
                 const AffineMax cw = conjugate_affine(inf_convolution(u, v));
                 const AffineMax cc = conjugate_affine(u.plus_constant(shift)), ct = conjugate_affine(u.translated(x0));
                 double err = 0;
                 for (const Vec& y : uniform_points(rng, cfg.n, 30, -3, 3)) {
                   err = std::max(err, rel(cw(y), cu(y) + cv(y)));
                   err = std::max(err, rel(cc(y), cu(y) - shift));
                   err = std::max(err, rel(ct(y), cu(y) + x0.dot(y)));
                 }
                 return within(digest({&u, &v}).add(x0).add(shift), err, cfg.tol, "conjugation rule fails");
               }});
  c.push_back({"level-set-homogeneity", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const ConvZFunction u = random_convz(corpus(cfg.n), rng);
                 std::uniform_real_distribution<double> L(0.3, 2.5), W(0.0, 1.0);
                 const double lambda = L(rng);
                 const double s = u.fn().min_value() + W(rng) * (u.fn().max_value() - u.fn().min_value());
                 const auto a = level_set(epi_scale(lambda, u.fn()), lambda * s), b = level_set(u.fn(), s);
                 double err = 0;
                 if (a.has_value() != b.has_value())
                   err = kInf;
                 else if (a)
                   err = vertex_distance(*a, b->scaled(lambda)) / std::max(1.0, lambda);
                 Report r = within(digest({&u.fn()}).add(lambda).add(s), err, cfg.tol, "level set does not scale");
                 return r.set("lambda", lambda).set("level", s);
               }});
  c.push_back({"pa-convexity", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const PAFunction u = random_pa(rng, cfg.n, 12), v = random_pa(rng, cfg.n, 8);
                 std::uniform_real_distribution<double> W(0.0, 1.0), L(0.3, 2.5);
                 const PAFunction built[] = {u, inf_convolution(u, v), epi_scale(L(rng), u)};
                 double worst = -kInf;
                 for (const PAFunction& f : built) {
                   const Vec c0 = f.domain().centroid();
                   const auto& V = f.domain().vertices();
                   for (int k = 0; k < 30; ++k) {
                     const Vec x = c0 + W(rng) * (V[k % V.size()] - c0);
                     const Vec y = c0 + W(rng) * (V[(k + 1) % V.size()] - c0);
                     const double fx = f.evaluate(x), fy = f.evaluate(y);
                     worst = std::max(worst, (f.evaluate(0.5 * (x + y)) - 0.5 * (fx + fy)) / std::max(1.0, std::abs(fx) + std::abs(fy)));
                   }
                 }
                 return within(digest({&u, &v}), worst, cfg.tol, "midpoint inequality fails");
               }});
  return c;
}

// -------------------------------------------------------------- measures

inline std::vector<Check> measures_checks() {
  std::vector<Check> c;
  c.push_back({"polarization-symmetry", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const int d = cfg.n + 1;
                 std::vector<Polytope> bodies;
                 for (int i = 0; i < d; ++i) bodies.push_back(random_body(rng, d, 6 + 2 * i));
                 const double v = mixed_volume(bodies);
                 std::vector<int> perm(static_cast<size_t>(d));
                 for (int i = 0; i < d; ++i) perm[i] = i;
                 double err = 0;
                 while (std::next_permutation(perm.begin(), perm.end())) {
                   std::vector<Polytope> p;
                   for (int i : perm) p.push_back(bodies[i]);
                   err = std::max(err, rel(mixed_volume(p), v));
                 }
                 std::vector<ConvZFunction> fs;
                 for (int i = 0; i < cfg.n; ++i) fs.push_back(random_convz(corpus(cfg.n), rng));
                 Digest dg;
                 for (const Polytope& K : bodies) dg.add(K.vertices());
                 for (const ConvZFunction& f : fs) dg.add(f.fn().points()).add(f.fn().values());
                 if (cfg.n == 2) {
                   const std::vector<ConvZFunction> rev{fs[1], fs[0]};
                   err = std::max(err, measure_distance(mixed_ma(fs), mixed_ma(rev), 1e-7));
                   err = std::max(err, measure_distance(mixed_boundary(fs), mixed_boundary(rev), 1e-7));
                 }
                 return within(dg, err, cfg.tol, "mixed quantity depends on argument order");
               }});
  c.push_back({"mixed-volume-additivity", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const int d = cfg.n + 1;
                 const Polytope K = random_body(rng, d, 8), K2 = random_body(rng, d, 8);
                 std::vector<Polytope> rest;
                 for (int i = 1; i < d; ++i) rest.push_back(random_body(rng, d, 8));
                 auto with = [&](const Polytope& first) {
                   std::vector<Polytope> b{first};
                   b.insert(b.end(), rest.begin(), rest.end());
                   return mixed_volume(b);
                 };
                 const double lhs = with(minkowski_sum(K, K2)), rhs = with(K) + with(K2);
                 const double diag = mixed_volume(std::vector<Polytope>(static_cast<size_t>(d), K));
                 Digest dg;
                 dg.add(K.vertices()).add(K2.vertices());
                 Report r = within(dg, std::max(rel(lhs, rhs), rel(diag, K.volume())), cfg.tol, "mixed volume is not additive");
                 return r.set("lhs", lhs).set("rhs", rhs);
               }});
  c.push_back({"alexandrov-fenchel", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const int d = cfg.n + 1;
                 const Polytope K1 = random_body(rng, d, 6), K2 = random_body(rng, d, 6);
                 std::vector<Polytope> M;
                 for (int i = 2; i < d; ++i) M.push_back(random_body(rng, d, 6));
                 auto V = [&](const Polytope& a, const Polytope& b) {
                   std::vector<Polytope> bs{a, b};
                   bs.insert(bs.end(), M.begin(), M.end());
                   return mixed_volume(bs);
                 };
                 const double v12 = V(K1, K2);
                 Digest dg;
                 dg.add(K1.vertices()).add(K2.vertices());
                 return at_least(dg, v12 * v12, V(K1, K1) * V(K2, K2), cfg.tol, "Alexandrov-Fenchel fails");
               }});
  c.push_back({"brunn-minkowski", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const int d = cfg.n + 1;
                 const Polytope K = random_body(rng, d, 7), L = random_body(rng, d, 7);
                 const double lhs = std::pow(minkowski_sum(K, L).volume(), 1.0 / d);
                 const double rhs = std::pow(K.volume(), 1.0 / d) + std::pow(L.volume(), 1.0 / d);
                 Digest dg;
                 dg.add(K.vertices()).add(L.vertices());
                 return at_least(dg, lhs, rhs, cfg.tol, "Brunn-Minkowski fails");
               }});
  c.push_back({"measure-totals", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const Polytope K = random_body(rng, cfg.n + 1, 20);
                 const SphereMeasure S = K.surface_area_measure();
                 const ConvZFunction u = random_convz(corpus(cfg.n), rng);
                 const double closure = S.first_moment().norm() / S.total_mass();
                 const double mass = rel(ma_conjugate(u.fn()).total_mass(), u.fn().domain().volume());
                 Digest dg = digest({&u.fn()});
                 Report r = within(dg.add(K.vertices()), std::max(closure, mass), cfg.tol, "measure total is off");
                 return r.set("closure", closure).set("ma_mass_error", mass);
               }});
  c.push_back({"mixed-ma-multilinearity", 40, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const ConvZFunction a = random_convz(corpus(cfg.n), rng), b = random_convz(corpus(cfg.n), rng);
                 std::vector<PAFunction> rest;
                 for (int i = 1; i < cfg.n; ++i) rest.push_back(random_convz(corpus(cfg.n), rng).fn());
                 std::uniform_real_distribution<double> L(0.2, 2.0);
                 const double la = L(rng), lb = L(rng);
                 auto with = [&](const PAFunction& first) {
                   std::vector<PAFunction> fs{first};
                   fs.insert(fs.end(), rest.begin(), rest.end());
                   return mixed_ma(fs);
                 };
                 AtomicMeasure expect(cfg.n);
                 expect.add(with(a.fn()), la);
                 expect.add(with(b.fn()), lb);
                 const AtomicMeasure got = with(epi_combination({a.fn(), b.fn()}, {la, lb}));
                 const double d = measure_distance(got, expect.merged(1e-9), 1e-7);
                 return within(digest({&a.fn(), &b.fn()}).add(la).add(lb), d, cfg.tol, "mixed measure is not linear");
               }});
  c.push_back({"mixed-lower-hemisphere", 40, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 std::vector<ConvZFunction> fs;
                 std::vector<Polytope> bodies;
                 for (int i = 0; i < cfg.n; ++i) {
                   fs.push_back(random_convz(corpus(cfg.n), rng));
                   bodies.push_back(lift_body(fs.back()).body());
                 }
                 const RecFunction phi = RecFunction::affine_max(random_affine_max(rng, cfg.n));
                 const SphereMeasure S = mixed_area_measure(bodies, cfg.n + 1);
                 double lifted = 0;
                 SphereMeasure equator(cfg.n);
                 for (const Atom& a : S.atoms()) {
                   if (a.point[cfg.n] < -TildeIntegrand::kEquator) {
                     const Vec g = gnomonic(a.point);
                     lifted += phi(g) / std::sqrt(1 + g.squaredNorm()) * a.mass;
                   } else if (std::abs(a.point[cfg.n]) <= TildeIntegrand::kEquator) {
                     equator.add(a.point.head(cfg.n).normalized(), 0.5 * a.mass);
                   }
                 }
                 const double direct = mixed_ma(fs).integrate([&](const Vec& y) { return phi(y); });
                 const double err = std::max(rel(lifted, direct), measure_distance(equator.merged(1e-9), mixed_boundary(fs), 1e-7));
                 Digest dg;
                 for (const ConvZFunction& f : fs) dg.add(f.fn().points()).add(f.fn().values());
                 return within(dg, err, cfg.tol, "lifted mixed measure does not match");
               }});
  c.push_back({"boundary-measure-vanishing", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 std::vector<ConvZFunction> fs;
                 Digest dg;
                 for (int i = 0; i < cfg.n; ++i) {
                   fs.push_back(random_convz(corpus(cfg.n, BoundaryCondition::Vanishing), rng));
                   dg.add(fs.back().fn().points()).add(fs.back().fn().values());
                 }
                 const double tv = std::max(mixed_boundary(fs).total_variation(), boundary_measure(fs.front()).total_variation());
                 return within(dg, tv, cfg.tol, "boundary measure of vanishing functions is not zero");
               }});
  c.push_back({"cauchy-kubota", 10, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 if (cfg.n != 2) return Report("", 0.01).unmet("only n = 2");
                 const Profile alpha = random_density(rng);
                 std::uniform_real_distribution<double> T(0.05, 0.9);
                 const double t = T(rng) * alpha.support_radius();
                 const UtPair ut = make_ut(t, 2, cfg.m);
                 const double ck = fiv_cauchy_kubota(alpha, ut.approx, 180), exact = fiv_radial(1, alpha, ut.exact);
                 Digest dg = detail::digest_of(alpha);
                 Report r = within(dg.add(t), std::abs(ck - exact) / exact, 0.01, "line average disagrees");
                 return r.set("line_average", ck).set("closed_form", exact);
               }});
  return c;
}

// ----------------------------------------------------------- functionals

/// fiv_radial of u_t against the closed form for n = 2, 3 and every j, and
/// the polygonal path for n = 2.
inline Report radial_closed_form_trial(std::mt19937_64& rng, int m) {
  const Profile alpha = random_density(rng);
  std::uniform_real_distribution<double> T(0.0, 0.9);
  const double t = T(rng) * alpha.support_radius();
  double exact_err = 0, pa_err = 0;
  for (int n : {2, 3}) {
    const RadialFunction u(n, {0.0, 1.0}, {0.0, t});
    for (int j = 1; j <= n; ++j) {
      const double closed = radial_cone_fiv(n, j, alpha(t));
      exact_err = std::max(exact_err, std::abs(fiv_radial(j, alpha, u) - closed) / closed);
    }
  }
  const UtPair ut = make_ut(t, 2, m);
  for (int j = 1; j <= 2; ++j) {
    const double closed = radial_cone_fiv(2, j, alpha(t));
    const double pa = j == 2 ? fiv_top(alpha, ut.approx) : fiv_steiner_extraction(j, alpha, ut.approx, m).value;
    pa_err = std::max(pa_err, std::abs(pa - closed) / closed);
  }
  Report r("radial-closed-form", 1e-12);
  r.inputs_digest = detail::digest_of(alpha).add(t).hex();
  r.set("t", t).set("closed_form_error", exact_err).set("polygonal_error", pa_err).set("error", exact_err);
  r.require(exact_err <= 1e-12, "closed form does not match");
  r.require(pa_err <= 0.01, "polygonal path disagrees");
  return r;
}

inline std::vector<Check> functionals_checks() {
  std::vector<Check> c;
  c.push_back({"radial-closed-form", 20, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) { return radial_closed_form_trial(rng, cfg.m); }});
  c.push_back({"fiv-nonnegativity", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const ConvZFunction u = random_convz(corpus(2, BoundaryCondition::Free, 10), rng);
                 const Profile alpha = random_density(rng);
                 const auto coeff = fiv_steiner_all(alpha, u.fn(), 32).coefficients;
                 double scale = 1;
                 for (double x : coeff) scale = std::max(scale, std::abs(x));
                 const double lowest = *std::min_element(coeff.begin(), coeff.end());
                 Report r = within(digest({&u.fn()}).add(detail::digest_of(alpha).hex()), -lowest / scale, cfg.tol,
                                   "negative intrinsic volume");
                 return r.set("lowest", lowest);
               }});
  c.push_back({"conjugate-wulff-volume", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const ConvZFunction u = random_convz(corpus(2), rng);
                 const RecFunction phi = conjugate(u.fn());
                 const double z = z_phi(phi, u), v = 3 * vbar_np1(u);
                 const TildeIntegrand tilde(phi);
                 const Polytope K = lift_body(u).body();
                 double err = rel(z, v);
                 for (int k = 0; k < 20; ++k) {
                   const Vec nu = sphere_point(rng, 3);
                   err = std::max(err, rel(tilde(nu), K.support(nu)));
                 }
                 Report r = within(digest({&u.fn()}), err, cfg.tol, "Z_{u*}(u) differs from (n+1) V(u)");
                 return r.set("z_phi", z).set("scaled_volume", v);
               }});
  c.push_back({"lifted-integrand", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const ConvZFunction u = random_convz(corpus(2), rng);
                 const RecFunction affine = RecFunction::affine_max(random_affine_max(rng, 2));
                 const RecFunction sum = RecFunction::sum(random_affine_max(rng, 2), random_density(rng));
                 double err = 0;
                 for (const RecFunction* phi : {&affine, &sum})
                   err = std::max(err, rel(z_phi(*phi, u), z_phi_lifted(TildeIntegrand(*phi), u)));
                 return within(digest({&u.fn()}), err, cfg.tol, "lifted integral differs");
               }});
  c.push_back({"mixed-functional-representation", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const ConvZFunction a = random_convz(corpus(2, BoundaryCondition::Free, 10), rng),
                                     b = random_convz(corpus(2, BoundaryCondition::Free, 10), rng),
                                     d = random_convz(corpus(2, BoundaryCondition::Free, 10), rng);
                 const double v = vbar_mixed({a, b, d}), w = vbar_mixed_rep({a, b, d});
                 Report r = within(digest({&a.fn(), &b.fn(), &d.fn()}), rel(w, v), cfg.tol, "representations differ");
                 return r.set("lifted", v).set("measures", w);
               }});
  c.push_back({"mixed-functional-af", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const ConvZFunction a = random_convz(corpus(2, BoundaryCondition::Free, 10), rng),
                                     b = random_convz(corpus(2, BoundaryCondition::Free, 10), rng),
                                     d = random_convz(corpus(2, BoundaryCondition::Free, 10), rng);
                 const double v = vbar_mixed({a, b, d});
                 return at_least(digest({&a.fn(), &b.fn(), &d.fn()}), v * v, vbar_mixed({a, a, d}) * vbar_mixed({b, b, d}), cfg.tol,
                                 "Alexandrov-Fenchel fails for the mixed functional");
               }});
  c.push_back({"mixed-ma-inequality", 0, [](std::mt19937_64& rng, const SuiteConfig&, int) {
                 const CorpusSpec s = corpus(2, BoundaryCondition::Vanishing, 10);
                 const ConvZFunction a = random_convz(s, rng), b = random_convz(s, rng), d = random_convz(s, rng);
                 Report r = mixed_ma_inequality_check({a, b, d});
                 const double lhs = r.get("lhs").value_or(1.0);
                 const double err = std::max(-r.get("gap").value_or(0.0) / std::max(1.0, lhs),
                                             r.get("asymmetry").value_or(0.0) / std::max(1.0, std::abs(r.get("integral").value_or(1.0))));
                 return r.set("error", err);
               }});
  c.push_back({"epi-homogeneity", 20, [](std::mt19937_64& rng, const SuiteConfig&, int) {
                 const ConvZFunction u = random_convz(corpus(2, BoundaryCondition::Free, 10), rng);
                 const Profile alpha = random_density(rng);
                 std::uniform_real_distribution<double> L(0.3, 2.0);
                 const double lambda = L(rng);
                 const auto base = fiv_steiner_all(alpha, u.fn(), 32).coefficients;
                 const auto scaled = fiv_steiner_all(alpha, epi_scale(lambda, u).fn(), 32).coefficients;
                 double err = 0;
                 for (int p = 0; p <= 2; ++p) {
                   const double expect = std::pow(lambda, 2 - p) * base[p];
                   err = std::max(err, std::abs(scaled[p] - expect) / std::max(1.0, std::abs(expect)));
                 }
                 return within(digest({&u.fn()}).add(lambda), err, 1e-6, "not epi-homogeneous");
               }});
  c.push_back({"indicator-fiv", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const Polytope K = random_body(rng, 2, 8);
                 const Profile alpha = random_density(rng);
                 const PAFunction ind = PAFunction::indicator(K);
                 const double expect = alpha(0) * K.volume();
                 const double top = fiv_top(alpha, ind);
                 const double steiner = fiv_steiner_extraction(2, alpha, ind, 32).value;
                 Digest dg;
                 dg.add(K.vertices());
                 Report r = within(dg, std::max(rel(top, expect), rel(steiner, expect)), cfg.tol, "indicator value is off");
                 return r.set("value", top).set("expected", expect);
               }});
  c.push_back({"root-concavity", 20, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const CorpusSpec s = corpus(2, BoundaryCondition::Free, 10);
                 const ConvZFunction u0 = random_convz(s, rng), u1 = random_convz(s, rng), v = random_convz(s, rng);
                 double worst = -kInf;
                 for (int m = 1; m <= 3; ++m) {
                   std::vector<double> f;
                   for (int k = 0; k <= 4; ++k) {
                     const double l = k / 4.0;
                     const ConvZFunction ul(epi_combination({u0.fn(), u1.fn()}, {1 - l, l}));
                     std::vector<ConvZFunction> args(static_cast<size_t>(m), ul);
                     while (args.size() < 3) args.push_back(v);
                     f.push_back(std::pow(vbar_mixed(args), 1.0 / m));
                   }
                   for (size_t k = 1; k + 1 < f.size(); ++k)
                     worst = std::max(worst, (f[k - 1] + f[k + 1] - 2 * f[k]) / detail::abs_scale(f));
                 }
                 return within(digest({&u0.fn(), &u1.fn(), &v.fn()}), worst, cfg.tol, "root is not concave");
               }});
  c.push_back({"brunn-minkowski-failure", 1, [](std::mt19937_64&, const SuiteConfig& cfg, int) {
                 return counterexample_bm(2, ramp_density(), 0.0, 0.5, 2, cfg.m, cfg.tol);
               }});
  c.push_back({"isoperimetric-failure", 1, [](std::mt19937_64&, const SuiteConfig& cfg, int) {
                 Report r = counterexample_iso(1, 2, ramp_density(), halving_sequence(10), 2, cfg.tol);
                 r.require(r.at("decreasing") == 1.0, "values do not decrease");
                 r.require(r.at("ratio") < 0.2, "values do not approach zero");
                 return r;
               }});
  return c;
}

// ----------------------------------------------------------------- wulff

inline std::vector<Check> wulff_checks() {
  std::vector<Check> c;
  c.push_back({"wulff-inequality", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int trial) {
                 const AffineMax a = admissible_affine(rng);
                 const ConvZFunction u = random_convz(corpus(2, BoundaryCondition::Free, 10), rng);
                 const RecFunction phi = cfg.phi                ? *cfg.phi
                                         : trial % 10 == 9 ? RecFunction::sum(a, Profile({0, 0.6, 1.2}, {0.3, 0.1, 0.0}))
                                                           : RecFunction::affine_max(a);
                 Report r = wulff_inequality_report(phi, u, cfg.directions);
                 if (auto g = r.get("gap")) r.set("error", -*g / std::max(1.0, std::abs(r.at("rhs"))));
                 return r;
               }});
  c.push_back({"wulff-equality", 0, [](std::mt19937_64& rng, const SuiteConfig&, int trial) {
                 const RecFunction phi = RecFunction::affine_max(admissible_affine(rng));
                 const double lambdas[] = {0.5, 1.0, 2.0};
                 const double lambda = lambdas[trial % 3];
                 const Vec x0 = uniform_vec(rng, 2, -1, 1);
                 const ConvZFunction u(epi_scale(lambda, u_phi(phi, 16)).fn().translated(x0));
                 Report r = wulff_inequality_report(phi, u);
                 if (r.verdict == Verdict::HypothesisUnmet) return r;
                 const double g = std::abs(r.at("gap"));
                 r.set("error", g);
                 r.require(g <= 1e-6, "homothetic input does not give equality");
                 r.require(std::abs(r.at("lambda") - lambda) <= 1e-6, "fitted homothety factor is off");
                 return r;
               }});
  c.push_back({"body-wulff-inequality", 0, [](std::mt19937_64& rng, const SuiteConfig&, int) {
                 const Polytope K = random_body(rng, 3, 10);
                 const TildeIntegrand eta(RecFunction::affine_max(admissible_affine(rng)));
                 Report r = body_wulff_report(K, eta, wulff_directions(3, 500));
                 const Polytope L = random_body(rng, 3, 8);
                 const Polytope Lc = L.translated(-L.centroid());
                 const auto h = [&](const Vec& nu) { return Lc.support(nu); };
                 const Report eq = body_wulff_report(Lc.scaled(1.7).translated(L.centroid()), h, {});
                 const double eq_gap = std::abs(eq.at("gap")) / std::max(1.0, eq.at("rhs"));
                 r.set("equality_gap", eq_gap).set("error", std::max(-r.at("gap") / std::max(1.0, r.at("rhs")), eq_gap));
                 r.require(eq_gap <= 1e-6, "homothetic body does not give equality");
                 return r;
               }});
  c.push_back({"wulff-floor", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const RecFunction phi = RecFunction::affine_max(admissible_affine(rng));
                 WulffProblem p(phi, 400);
                 const ConvZFunction exact = u_phi(p);
                 p.include_normals(lift_body(exact).body());
                 const ConvZFunction floor = floor_function(LiftedBody(wulff_shape(p)));
                 const PAFunction conj = conjugate_of_affine_max(phi.affine());
                 double err = 0;
                 for (const Vec& x : uniform_points(rng, 2, 100, -2, 2)) {
                   const double cv = conj.evaluate(x);
                   const double expect = cv <= 0 ? cv : kInf, got = floor.evaluate(x);
                   if (std::isinf(expect) || std::isinf(got)) {
                     if (std::abs(cv) > 1e-6 && std::isinf(expect) != std::isinf(got)) err = kInf;
                   } else {
                     err = std::max(err, rel(got, expect));
                   }
                 }
                 return within(detail::digest_of(phi), err, cfg.tol, "Wulff floor differs from the truncated conjugate");
               }});
  c.push_back({"first-variation", 0, [](std::mt19937_64& rng, const SuiteConfig&, int trial) {
                 const ConvZFunction u = random_convz(corpus(2, BoundaryCondition::Free, 10), rng);
                 const ConvZFunction v = random_convz(corpus(2, BoundaryCondition::Free, 10), rng);
                 const RecFunction phi = trial % 2 == 0 ? conjugate(v.fn()) : conjugate(u.fn());
                 Report r = first_variation_check(u, phi);
                 if (auto e = r.get("error_1")) r.set("error", *e / std::max(1.0, std::abs(r.at("z_phi"))));
                 if (trial % 2 == 1 && r.verdict != Verdict::HypothesisUnmet) {
                   const double e = rel(r.at("z_phi"), 3 * vbar_np1(u));
                   r.set("self_error", e);
                   r.require(e <= 1e-9, "Z_{u*}(u) differs from 3 V(u)");
                 }
                 return r;
               }});
  c.push_back({"wulff-volume-identity", 0, [](std::mt19937_64& rng, const SuiteConfig&, int trial) {
                 const AffineMax a = admissible_affine(rng);
                 const RecFunction phi = trial % 4 == 3 ? RecFunction::sum(a, Profile({0, 1}, {0.5, 0})) : RecFunction::affine_max(a);
                 Report r = wulff_volume_identity(WulffProblem(phi, 400));
                 return r.set("error", std::abs(r.at("gap")) / std::max(1.0, r.at("volume")));
               }});
  c.push_back({"direction-monotonicity", 20, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const RecFunction phi = RecFunction::sum(admissible_affine(rng), Profile({0, 0.8}, {0.4, 0}));
                 const std::vector<Vec> all = wulff_directions(3, 800);
                 double prev = kInf, worst = -kInf;
                 Report r("", cfg.tol);
                 for (size_t k : {100u, 200u, 400u, 800u}) {
                   const std::vector<Vec> sub(all.begin(), all.begin() + static_cast<long>(std::min(k, all.size())));
                   const double vol = wulff_shape(WulffProblem(phi, sub)).volume();
                   if (std::isfinite(prev)) worst = std::max(worst, vol - prev);
                   r.set("volume_" + std::to_string(k), vol);
                   prev = vol;
                 }
                 r.inputs_digest = detail::digest_of(phi).hex();
                 r.set("error", worst);
                 r.require(worst <= cfg.tol, "more directions increased the volume");
                 return r;
               }});
  c.push_back({"wulff-support-reproduction", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 Polytope K;
                 do K = random_body(rng, 3, 12);
                 while (!K.contains(Vec::Zero(3), -1e-3));
                 const Polytope W = wulff_shape_of_support(K, wulff_directions(3, 300));
                 Digest dg;
                 dg.add(K.vertices());
                 return within(dg, vertex_distance(W, K), cfg.tol, "Wulff shape of h_K is not K");
               }});
  return c;
}

// -------------------------------------------------------- symmetrization

inline Vec random_direction(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> A(0, std::numbers::pi);
  return angle_direction(A(rng));
}

inline std::vector<Check> symmetrization_checks() {
  std::vector<Check> c;
  c.push_back({"shadow-convexity", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const Vec z = random_direction(rng);
                 std::vector<ShadowTrajectory> tr{shadow_trajectory(random_convz(corpus(2), rng), z),
                                                  shadow_trajectory(random_convz(corpus(2, BoundaryCondition::Constant), rng), z),
                                                  shadow_trajectory(random_convz(corpus(2, BoundaryCondition::Vanishing), rng), z)};
                 Report r = shadow_convexity_check(tr, cfg.tol);
                 if (r.verdict == Verdict::HypothesisUnmet) return r;
                 return r.set("error", std::max(-r.at("integral_min_second_difference") / r.at("integral_scale"),
                                                -r.at("vbar_min_second_difference") / r.at("vbar_scale")));
               }});
  c.push_back({"shadow-mixed-volume", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int trial) {
                 const int d = 2 + trial % 2;
                 std::vector<Polytope> bodies;
                 for (int i = 0; i < d; ++i) bodies.push_back(random_body(rng, d, 4 + 2 * i));
                 Report r = chord_mixed_volume_check(bodies, sphere_point(rng, d), 9, cfg.tol);
                 return r.set("error", -r.at("min_second_difference") / r.at("scale"));
               }});
  c.push_back({"symmetrization-chain", 0, [](std::mt19937_64& rng, const SuiteConfig&, int trial) {
                 const ConvZFunction u = random_convz(corpus(2, BoundaryCondition::Constant), rng);
                 const ConvZFunction w = random_convz(corpus(2), rng);
                 Report r = ps_chain_check(w.fn(), u, random_direction(rng), static_cast<std::uint64_t>(trial));
                 if (r.verdict == Verdict::HypothesisUnmet) return r;
                 const double scale = std::max({std::abs(r.at("i1")), std::abs(r.at("i2")), std::abs(r.at("i3")), 1e-12});
                 return r.set("error", std::max(-r.at("gap_12"), -(r.at("gap_23") + r.at("radial_error_bar"))) / scale);
               }});
  c.push_back({"gradient-mean-zero", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const ConvZFunction u = random_convz(corpus(2, BoundaryCondition::Constant), rng);
                 std::vector<Vec> ys;
                 for (int k = 0; k < 5; ++k) ys.push_back(sphere_point(rng, 2));
                 const double d = gradient_mean_defect(u.fn(), ys) / std::max(1.0, u.fn().domain().volume());
                 return within(digest({&u.fn()}), d, cfg.tol, "gradient does not average to zero");
               }});
  c.push_back({"steiner-volume", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const ConvZFunction u = random_convz(corpus(2), rng);
                 const Vec z = random_direction(rng);
                 const ConvZFunction su = steiner_symmetral_fn(u, z);
                 double err = rel(vbar_np1(su), vbar_np1(u));
                 err = std::max(err, rel(su.fn().domain().volume(), u.fn().domain().volume()));
                 std::uniform_real_distribution<double> W(0.0, 1.0);
                 for (int k = 0; k < 5; ++k) {
                   const double s = u.fn().min_value() + W(rng) * (u.fn().max_value() - u.fn().min_value());
                   err = std::max(err, rel(level_volume_or_zero(su.fn(), s), level_volume_or_zero(u.fn(), s)));
                 }
                 const Polytope K = random_body(rng, 3, 10);
                 err = std::max(err, rel(steiner_symmetral_body(K, sphere_point(rng, 3)).volume(), K.volume()));
                 return within(digest({&u.fn()}).add(z), err, cfg.tol, "symmetral changes a volume");
               }});
  c.push_back({"rearrangement-volume", 0, [](std::mt19937_64& rng, const SuiteConfig& cfg, int) {
                 const ConvZFunction u = random_convz(corpus(2), rng);
                 const int levels = 128;
                 const RadialFunction ub = rearrangement(u, levels);
                 double exact = 0;
                 for (double s : u.fn().values()) exact = std::max(exact, rel(level_volume(ub, s), level_volume(u.fn(), s)));
                 const double v = vbar_np1(u), vb = vbar_np1(ub);
                 const double err = std::abs(vb - v) / v;
                 const double bar = 2 * std::abs(vbar_np1(rearrangement(u, levels / 2)) - vb) / v;
                 Report r("", 1e-3);
                 r.inputs_digest = digest({&u.fn()}).hex();
                 r.set("vbar", v).set("vbar_rearranged", vb).set("level_error", exact);
                 r.set("integral_error", err).set("error_bar", bar).set("error", err);
                 r.require(exact <= cfg.tol, "level volume differs at a critical value");
                 r.require(err <= bar + cfg.tol, "integral error exceeds its error bar");
                 r.require(err <= 1e-3, "integral is not preserved");
                 return r;
               }});
  c.push_back({"iterated-symmetrization", 10, [](std::mt19937_64& rng, const SuiteConfig&, int) {
                 const ConvZFunction u = random_convz(corpus(2), rng);
                 const IteratedSymmetrization it = iterate_symmetrization(u);
                 Report r = within(digest({&u.fn()}), it.deficits.back(), 0.01, "deficit stays above one percent");
                 return r.set("initial_deficit", it.deficits.front()).set("final_deficit", it.deficits.back());
               }});
  return c;
}

}  // namespace suite_detail

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lift", "measures", "functionals", "wulff", "symmetrization"};
  return names;
}

/// The checks of one suite ("all" concatenates them).
inline std::vector<Check> suite_checks(const std::string& name, const SuiteConfig& cfg) {
  using namespace suite_detail;
  if (name == "all") {
    std::vector<Check> all;
    for (const std::string& s : suite_names()) {
      auto part = suite_checks(s, cfg);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  if (name == "lift" || name == "measures") {
    if (cfg.n < 1 || cfg.n > 2) throw InputError("suite " + name + ": n must be 1 or 2");
    return name == "lift" ? lift_checks() : measures_checks();
  }
  if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
    throw InputError("unknown suite " + name);
  require_plane(cfg, name);
  if (name == "functionals") return functionals_checks();
  if (name == "wulff") return wulff_checks();
  if (name == "symmetrization") return symmetrization_checks();
  throw InputError("unknown suite " + name);
}

/// One report per check, in suite order; `only` restricts to the given ids.
inline std::vector<Report> run_suite(const std::string& name, const SuiteConfig& cfg, const std::vector<std::string>& only = {}) {
  if (cfg.trials <= 0) throw InputError("suite: trial count must be positive");
  const std::vector<Check> checks = suite_checks(name, cfg);
  for (const std::string& id : only)
    if (std::none_of(checks.begin(), checks.end(), [&](const Check& c) { return c.id == id; }))
      throw InputError("suite " + name + ": no check named " + id);
  std::vector<Report> out;
  for (const Check& c : checks) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Report r = run_check(c, cfg);
    r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace convexfn
