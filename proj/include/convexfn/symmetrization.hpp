#pragma once

// Steiner symmetrization and symmetric rearrangement of functions, shadow
// trajectories and the integral chain they induce.

#include "convexfn/functionals.hpp"
#include "convexfn/steiner.hpp"

#include <random>

namespace convexfn {

namespace detail {

inline Vec horizontal(const Vec& z) {
  Vec Z = Vec::Zero(z.size() + 1);
  Z.head(z.size()) = z.normalized();
  return Z;
}

inline void check_direction(const ConvZFunction& u, const Vec& z) {
  if (z.size() != u.n()) throw InputError("direction dimension does not match the function");
  if (!(z.norm() > 0)) throw InputError("direction must be non-zero");
  if (!u.fn().full_domain()) throw GeometryError("function domain is not full-dimensional");
}

}  // namespace detail

/// Floor of the chord movement of K^u in the horizontal direction (z, 0):
/// u at t = 0, its Steiner symmetral at 1/2, its reflection at 1.
inline ConvZFunction chord_movement_fn(const ConvZFunction& u, const Vec& z, double t) {
  detail::check_direction(u, z);
  return floor_function(LiftedBody(chord_movement_body(lift_body(u).body(), detail::horizontal(z), t)));
}

inline ConvZFunction steiner_symmetral_fn(const ConvZFunction& u, const Vec& z) { return chord_movement_fn(u, z, 0.5); }

/// Steiner symmetral of an arbitrary PA function, through its shift below 0.
inline PAFunction steiner_symmetral_pa(const PAFunction& w, const Vec& z) {
  const double top = w.max_value();
  return steiner_symmetral_fn(ConvZFunction(w.plus_constant(-top)), z).fn().plus_constant(top);
}

inline Vec angle_direction(double theta) { return make_vec({std::cos(theta), std::sin(theta)}); }

struct ShadowTrajectory {
  ConvZFunction base;
  Vec z;
  std::vector<double> ts;
  std::vector<ConvZFunction> samples;
};

inline std::vector<double> uniform_grid(int points) {
  if (points < 3) throw InputError("grid needs at least three points");
  std::vector<double> ts;
  for (int i = 0; i < points; ++i) ts.push_back(static_cast<double>(i) / (points - 1));
  return ts;
}

inline ShadowTrajectory shadow_trajectory(const ConvZFunction& u, const Vec& z, const std::vector<double>& ts) {
  ShadowTrajectory s{u, z.normalized(), ts, {}};
  for (double t : ts) s.samples.push_back(chord_movement_fn(u, z, t));
  return s;
}

inline ShadowTrajectory shadow_trajectory(const ConvZFunction& u, const Vec& z, int points = 9) {
  return shadow_trajectory(u, z, uniform_grid(points));
}

inline double level_volume(const PAFunction& u, double s) {
  const auto L = level_set(u, s);
  return L ? L->volume() : 0.0;
}

/// Symmetric rearrangement: the level-set radius (V_n({u <= s}) / kappa_n)^(1/n)
/// at the site values of u and at `extra` evenly spaced radii inside each gap
/// between consecutive site values, inverted piecewise linearly. Between site
/// values the level-set volume is a polynomial of degree n in s, recovered
/// from its values at the gap ends and midpoint.
inline RadialFunction rearrangement(const PAFunction& u, int extra = 32) {
  const int n = u.n();
  if (!u.full_domain()) throw GeometryError("rearrangement: degenerate domain");
  if (extra < 0) throw InputError("rearrangement: negative level count");
  if (n > 2) throw InputError("rearrangement: only n <= 2 has a polytopal engine");
  const double lo = u.min_value(), hi = u.max_value();
  std::vector<double> critical = u.values();
  std::sort(critical.begin(), critical.end());
  critical.erase(std::unique(critical.begin(), critical.end(),
                             [&](double a, double b) { return b - a <= 1e-14 * std::max(1.0, hi - lo); }),
                 critical.end());
  auto radius = [&](double v) { return std::pow(std::max(v, 0.0) / kappa(n), 1.0 / n); };
  std::vector<std::array<double, 2>> pts{{0.0, lo}, {radius(level_volume(u, lo)), lo}};
  double va = level_volume(u, lo);
  for (size_t i = 1; i < critical.size(); ++i) {
    const double a = critical[i - 1], b = critical[i], m = 0.5 * (a + b);
    const double vm = level_volume(u, m);
    const double vb = i + 1 == critical.size() ? u.domain().volume() : level_volume(u, b);
    auto vol = [&](double x) { return va * (2 * x - 1) * (x - 1) + vm * 4 * x * (1 - x) + vb * x * (2 * x - 1); };
    const double ra = radius(va), rb = radius(vb);
    for (int k = 1; k <= extra; ++k) {
      const double r = ra + (rb - ra) * k / (extra + 1);
      const double target = kappa(n) * std::pow(r, n);
      double x0 = 0, x1 = 1;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (x0 + x1);
        (vol(mid) < target ? x0 : x1) = mid;
      }
      pts.push_back({r, a + (b - a) * 0.5 * (x0 + x1)});
    }
    pts.push_back({radius(vb), b});
    va = vb;
  }
  if (critical.size() == 1) pts.back()[0] = radius(u.domain().volume());
  std::vector<std::array<double, 2>> hull;
  for (const auto& p : pts) {
    if (!hull.empty() && p[0] <= hull.back()[0] + 1e-14 * pts.back()[0]) {
      if (p[1] < hull.back()[1] && hull.size() == 1) hull.back()[1] = p[1];
      continue;
    }
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const double cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
      if (cross > 1e-13 * std::max(1.0, hi - lo) * pts.back()[0]) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }
  std::vector<double> r, v;
  for (const auto& p : hull) {
    r.push_back(p[0]);
    v.push_back(p[1]);
  }
  return RadialFunction(n, r, v);
}

inline RadialFunction rearrangement(const ConvZFunction& u, int extra = 32) { return rearrangement(u.fn(), extra); }

/// Volume of {x : psi(|x|) <= s}.
inline double level_volume(const RadialFunction& u, double s) {
  if (s < u.min_value()) return 0.0;
  double r = u.radius();
  const auto& R = u.radii();
  const auto& V = u.values();
  for (size_t i = 1; i < R.size(); ++i)
    if (V[i] > s) {
      r = R[i - 1] + (s - V[i - 1]) / u.slope(i);
      break;
    }
  return kappa(u.n()) * std::pow(r, u.n());
}

/// -int psi(|x|) dx over the ball of radius R.
inline double vbar_np1(const RadialFunction& u) {
  const int n = u.n();
  const auto& R = u.radii();
  double acc = 0;
  for (size_t i = 1; i < R.size(); ++i) {
    const double s = u.slope(i), c = u.values()[i - 1] - s * R[i - 1];
    acc += c * (std::pow(R[i], n) - std::pow(R[i - 1], n)) + s * n / (n + 1.0) * (std::pow(R[i], n + 1) - std::pow(R[i - 1], n + 1));
  }
  if (R.size() == 1) return 0.0;
  return -kappa(n) * acc;
}

/// int v*(grad u) dx for radial u and v, one annulus per profile segment.
inline double radial_conjugate_integral(const RadialFunction& v, const RadialFunction& u) {
  auto vstar = [&](double y) {
    double best = -kInf;
    for (size_t k = 0; k < v.radii().size(); ++k) best = std::max(best, v.radii()[k] * y - v.values()[k]);
    return best;
  };
  double acc = 0;
  const double kn = kappa(u.n());
  for (size_t i = 1; i < u.radii().size(); ++i)
    acc += vstar(u.slope(i)) * kn * (std::pow(u.radii()[i], u.n()) - std::pow(u.radii()[i - 1], u.n()));
  return acc;
}

/// w + indicator of {w <= j}.
inline PAFunction truncate_w(const PAFunction& w, double j) {
  if (j < w.min_value()) throw GeometryError("truncate_w: empty level set");
  return truncate(w, j);
}

/// Midpoint convexity of samples on a uniform grid; returns the most negative
/// second difference.
inline double min_second_difference(const std::vector<double>& f) {
  double worst = kInf;
  for (size_t i = 1; i + 1 < f.size(); ++i) worst = std::min(worst, f[i - 1] + f[i + 1] - 2 * f[i]);
  return worst;
}

namespace detail {

inline double abs_scale(const std::vector<double>& f) {
  double s = 0;
  for (double x : f) s = std::max(s, std::abs(x));
  return std::max(s, 1e-12);
}

inline Digest digest_of(const std::vector<ConvZFunction>& fs) {
  Digest dg;
  for (const ConvZFunction& f : fs) dg.add(f.fn().points()).add(f.fn().values());
  return dg;
}

}  // namespace detail

/// Convexity in t of int (u0)_t* dMA*((u1)_t, ..., (un)_t) and of the mixed
/// functional of the tuple, along trajectories sharing one direction and grid.
inline Report shadow_convexity_check(const std::vector<ShadowTrajectory>& tr, double tol = 1e-9, std::uint64_t seed = 0) {
  Report r("shadow-convexity", tol, seed);
  if (tr.empty()) throw InputError("shadow_convexity_check: no trajectories");
  const int n = tr.front().base.n();
  if (static_cast<int>(tr.size()) != n + 1) throw InputError("shadow_convexity_check: need n+1 trajectories");
  std::vector<ConvZFunction> bases;
  for (const ShadowTrajectory& s : tr) {
    if ((s.z - tr.front().z).norm() > 1e-12 || s.ts != tr.front().ts) throw InputError("trajectories must share direction and grid");
    bases.push_back(s.base);
  }
  Digest dg = detail::digest_of(bases);
  dg.add(tr.front().z).add(tr.front().ts);
  r.inputs_digest = dg.hex();
  for (size_t i = 1; i < tr.size(); ++i)
    if (boundary_spread(tr[i].base.fn()) > 1e-9) return r.unmet("function is not constant on the boundary of its domain");
  std::vector<double> f, g;
  for (size_t k = 0; k < tr.front().ts.size(); ++k) {
    std::vector<ConvZFunction> tuple;
    for (const ShadowTrajectory& s : tr) tuple.push_back(s.samples[k]);
    f.push_back(conjugate_mixed_integral(tuple));
    g.push_back(vbar_mixed(tuple));
  }
  const double df = min_second_difference(f), dgv = min_second_difference(g);
  const double sf = detail::abs_scale(f), sg = detail::abs_scale(g);
  r.set("integral_t0", f.front()).set("integral_half", f[f.size() / 2]).set("integral_t1", f.back());
  r.set("integral_min_second_difference", df).set("vbar_min_second_difference", dgv);
  r.set("integral_scale", sf).set("vbar_scale", sg);
  r.require(df >= -tol * sf, "integral is not convex along the trajectory");
  r.require(dgv >= -tol * sg, "mixed functional is not convex along the trajectory");
  return r;
}

/// Mixed volume of bodies moved by parallel chord movement in one direction,
/// checked for midpoint convexity in t.
inline Report chord_mixed_volume_check(const std::vector<Polytope>& bodies, const Vec& z, int points = 9,
                                       double tol = 1e-9, std::uint64_t seed = 0) {
  Report r("shadow-mixed-volume", tol, seed);
  Digest dg;
  for (const Polytope& K : bodies) dg.add(K.vertices());
  r.inputs_digest = dg.add(z).hex();
  std::vector<double> f;
  for (double t : uniform_grid(points)) {
    std::vector<Polytope> moved;
    for (const Polytope& K : bodies) moved.push_back(chord_movement_body(K, z, t));
    f.push_back(mixed_volume(moved));
  }
  const double d2 = min_second_difference(f), s = detail::abs_scale(f);
  r.set("v_t0", f.front()).set("v_half", f[f.size() / 2]).set("v_t1", f.back());
  r.set("min_second_difference", d2).set("scale", s);
  r.require(d2 >= -tol * s, "mixed volume is not convex along the movement");
  return r;
}

/// int <y, grad u> dx for each y.
inline double gradient_mean_defect(const PAFunction& u, const std::vector<Vec>& ys) {
  Vec m = Vec::Zero(u.n());
  for (const Cell& c : u.cells()) m += c.volume * c.gradient;
  double worst = 0;
  for (const Vec& y : ys) worst = std::max(worst, std::abs(m.dot(y)));
  return worst;
}

/// I1 = int w*(grad u), I2 = int (s_z w)*(grad s_z u), I3 = int wbar*(grad ubar)
/// with I1 >= I2 >= I3, for u constant on the boundary of its domain.
inline Report ps_chain_check(const PAFunction& w, const ConvZFunction& u, const Vec& z, std::uint64_t seed = 0,
                             int levels = 32) {
  Report r("symmetrization-chain", 1e-9, seed);
  Digest dg;
  dg.add(w.points()).add(w.values()).add(u.fn().points()).add(u.fn().values()).add(z);
  r.inputs_digest = dg.hex();
  if (w.n() != u.n() || z.size() != u.n()) throw InputError("ps_chain_check: dimension mismatch");
  if (!w.full_domain() || !u.fn().full_domain()) throw GeometryError("ps_chain_check: degenerate domain");
  const double spread = boundary_spread(u.fn());
  r.set("boundary_spread", spread);
  if (spread > 1e-9) return r.unmet("u is not constant on the boundary of its domain");

  const double i1 = ma_conjugate(u.fn()).integrate(conjugate_affine(w));
  const PAFunction sw = steiner_symmetral_pa(w, z);
  const ConvZFunction su = steiner_symmetral_fn(u, z);
  const double i2 = ma_conjugate(su.fn()).integrate(conjugate_affine(sw));

  const double top = w.max_value();
  auto radial_chain = [&](int levels) {
    const RadialFunction wb = rearrangement(w.plus_constant(-top), levels).plus_constant(top);
    return radial_conjugate_integral(wb, rearrangement(u.fn(), levels));
  };
  const double i3 = radial_chain(levels);
  const double bar = 2 * std::abs(radial_chain(levels / 2) - i3);
  const double scale = std::max({std::abs(i1), std::abs(i2), std::abs(i3), 1e-12});

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0.0, 1.0);
  std::vector<Vec> ys;
  for (int k = 0; k < 5; ++k) {
    Vec y(u.n());
    for (int i = 0; i < u.n(); ++i) y[i] = N(rng);
    ys.push_back(y);
  }
  const double mean_defect = gradient_mean_defect(u.fn(), ys);

  r.set("i1", i1).set("i2", i2).set("i3", i3).set("radial_error_bar", bar);
  r.set("gap_12", i1 - i2).set("gap_23", i2 - i3).set("gradient_mean", mean_defect);
  r.require(i1 >= i2 - 1e-9 * scale, "first symmetrization step increases the integral");
  r.require(bar <= 1e-3 * scale, "radial error bar exceeds its budget");
  r.require(i2 >= i3 - bar - 1e-9 * scale, "rearrangement step increases the integral");
  r.require(mean_defect <= 1e-9 * std::max(1.0, u.fn().domain().volume()), "gradient does not average to zero");
  return r;
}

/// Perimeter^2 / (4 pi area) - 1 for a planar domain.
inline double isoperimetric_deficit(const Polytope& D) {
  if (D.dim() != 2 || !D.full_dimensional()) throw GeometryError("isoperimetric_deficit: needs a planar convex body");
  double p = 0;
  for (const Facet& f : D.facets()) p += f.measure;
  return p * p / (4 * std::numbers::pi * D.volume()) - 1;
}

/// Successive Steiner symmetrals in the directions k pi / m, k = 0, 1, ...,
/// applied to the domain (the domain of s_z u is the symmetral of the domain
/// of u). Deficits after each step; entry 0 is the input.
struct IteratedSymmetrization {
  Polytope domain;
  std::vector<double> deficits;
};

inline constexpr double kGoldenRatio = 1.6180339887498949;

inline IteratedSymmetrization iterate_symmetrization(const ConvZFunction& u, int steps = 50, double m = kGoldenRatio) {
  if (u.n() != 2) throw InputError("iterate_symmetrization: planar functions only");
  if (!(m > 0)) throw InputError("iterate_symmetrization: m must be positive");
  IteratedSymmetrization out{u.fn().domain(), {isoperimetric_deficit(u.fn().domain())}};
  for (int k = 0; k < steps; ++k) {
    out.domain = steiner_symmetral_body(out.domain, angle_direction(std::numbers::pi * k / m));
    out.deficits.push_back(isoperimetric_deficit(out.domain));
  }
  return out;
}

}  // namespace convexfn
