#pragma once

// Wulff shapes of lifted integrands and the Wulff-type inequality for
// functions, with its volume identity and first variation.

#include "convexfn/functionals.hpp"
#include "convexfn/halfspace.hpp"

namespace convexfn {

/// Points on S^{d-1} (d = 2, 3): a Fibonacci spiral on the lower half-sphere
/// together with its mirror image and a ring on the equator.
inline std::vector<Vec> wulff_directions(int d, int count) {
  if (d < 2 || d > 3) throw InputError("wulff_directions: dimension must be 2 or 3");
  std::vector<Vec> out;
  if (d == 2) {
    for (int k = 0; k < count; ++k) {
      const double a = 2 * std::numbers::pi * k / count;
      out.push_back(make_vec({std::cos(a), std::sin(a)}));
    }
    return out;
  }
  const int half = std::max(1, count / 2);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < half; ++k) {
    const double z = -(k + 0.5) / half;
    const double r = std::sqrt(1 - z * z);
    const double a = golden * k;
    out.push_back(make_vec({r * std::cos(a), r * std::sin(a), z}));
    out.push_back(make_vec({r * std::cos(a), r * std::sin(a), -z}));
  }
  const int ring = std::max(8, static_cast<int>(std::sqrt(static_cast<double>(count)) * 2));
  for (int k = 0; k < ring; ++k) {
    const double a = 2 * std::numbers::pi * k / ring;
    out.push_back(make_vec({std::cos(a), std::sin(a), 0.0}));
  }
  return out;
}

namespace detail {

/// Minimum of h_Q over the closed lower half-sphere, Q = conv{(a_i, -b_i)}.
inline double affine_c_bound(const AffineMax& a) {
  const int n = a.n();
  std::vector<Vec> pts;
  double M = 1.0;
  for (size_t i = 0; i < a.slopes.size(); ++i) {
    Vec q(n + 1);
    q.head(n) = a.slopes[i];
    q[n] = -a.intercepts[i];
    M = std::max(M, q.norm());
    pts.push_back(q);
  }
  const size_t m = pts.size();
  for (size_t i = 0; i < m; ++i) {
    Vec q = pts[i];
    q[n] += 8 * M;
    pts.push_back(q);
  }
  const Polytope Q = Polytope::hull(pts);
  if (!Q.full_dimensional()) return 0.0;
  double c = kInf;
  for (const Facet& f : Q.facets())
    if (f.normal[n] <= 1e-12) c = std::min(c, f.offset);
  return c;
}

/// Minimum of x -> phi(x) / sqrt(1 + |x|^2) over a grid of about 10^4 points
/// covering the ball of radius R.
inline double grid_c_bound(const RecFunction& phi, double R) {
  const int n = phi.n();
  double c = kInf;
  if (n == 1) {
    for (int k = 0; k <= 10000; ++k) {
      const double x = -R + 2 * R * k / 10000.0;
      c = std::min(c, phi(make_vec({x})) / std::sqrt(1 + x * x));
    }
    return c;
  }
  for (int i = 0; i <= 100; ++i)
    for (int j = 0; j <= 100; ++j) {
      const Vec x = make_vec({-R + 2 * R * i / 100.0, -R + 2 * R * j / 100.0});
      if (x.norm() > R) continue;
      c = std::min(c, phi(x) / std::sqrt(1 + x.squaredNorm()));
    }
  return c;
}

}  // namespace detail

/// Largest c with c sqrt(1 + |x|^2) <= phi(x), exact for affine maxima and
/// from a grid inside the support of the radial part otherwise.
inline double certify_c_bound(const RecFunction& phi) {
  if (!phi.has_affine()) return 0.0;
  double c = detail::affine_c_bound(phi.affine());
  if (phi.has_radial() && !phi.alpha().nonnegative()) c = std::min(c, detail::grid_c_bound(phi, phi.alpha().support_radius()));
  return c;
}

/// rho_phi <= phi: vertex analysis of the affine part (the largest intercept
/// over the slopes at each vertex of their hull is non-negative) plus a grid
/// check of the radial part.
inline bool recession_below(const RecFunction& phi) {
  if (!phi.has_affine()) return false;
  const AffineMax& a = phi.affine();
  const Polytope A = Polytope::hull(a.slopes);
  for (const Vec& v : A.vertices()) {
    double best = -kInf;
    for (size_t i = 0; i < a.slopes.size(); ++i)
      if ((a.slopes[i] - v).norm() <= tol::vertex) best = std::max(best, a.intercepts[i]);
    if (best < 0) return false;
  }
  if (phi.has_radial() && !phi.alpha().nonnegative()) {
    const double R = phi.alpha().support_radius();
    const int n = phi.n();
    for (int i = 0; i <= 100; ++i)
      for (int j = 0; j <= (n == 2 ? 100 : 0); ++j) {
        Vec x(n);
        x[0] = -R + 2 * R * i / 100.0;
        if (n == 2) x[1] = -R + 2 * R * j / 100.0;
        if (phi(x) < phi.recession(x) - 1e-12) return false;
      }
  }
  return true;
}

class WulffProblem {
 public:
  /// Certifies the c-bound; throws HypothesisError if it fails.
  WulffProblem(RecFunction phi, std::vector<Vec> directions)
      : phi_(std::move(phi)), tilde_(phi_), directions_(std::move(directions)) {
    c_ = certify_c_bound(phi_);
    if (!(c_ > 0)) throw HypothesisError("WulffProblem: phi(x) / sqrt(1 + |x|^2) is not bounded below by a positive constant");
    for (Vec& v : directions_) v.normalize();
    const size_t m = directions_.size();
    for (size_t i = 0; i < m; ++i)
      if (std::abs(directions_[i][n()]) > TildeIntegrand::kEquator) directions_.push_back(reflect_vertical(directions_[i]));
  }

  WulffProblem(RecFunction phi, int count = 2000)
      : WulffProblem(phi, wulff_directions(phi.n() + 1, count)) {}

  /// Adds the facet normals of a body in R^{n+1} (and their mirror images).
  WulffProblem& include_normals(const Polytope& K) {
    for (const Facet& f : K.facets()) {
      directions_.push_back(f.normal);
      directions_.push_back(reflect_vertical(f.normal));
    }
    return *this;
  }

  const RecFunction& phi() const { return phi_; }
  const TildeIntegrand& tilde() const { return tilde_; }
  const std::vector<Vec>& directions() const { return directions_; }
  double c_bound() const { return c_; }
  int n() const { return phi_.n(); }

 private:
  RecFunction phi_;
  TildeIntegrand tilde_;
  std::vector<Vec> directions_;
  double c_ = 0;
};

/// Intersection of the half-spaces <x, nu> <= phi~(nu) over the direction set.
inline Polytope wulff_shape(const WulffProblem& p) {
  std::vector<Halfspace> hs;
  for (const Vec& nu : p.directions()) hs.push_back({nu, p.tilde()(nu)});
  return halfspace_intersection(hs, p.n() + 1);
}

/// Wulff shape of the support function of K over the given directions.
inline Polytope wulff_shape_of_support(const Polytope& K, const std::vector<Vec>& directions) {
  std::vector<Halfspace> hs;
  for (const Vec& nu : directions) hs.push_back({nu, K.support(nu)});
  for (const Facet& f : K.facets()) hs.push_back({f.normal, f.offset});
  return halfspace_intersection(hs, K.dim());
}

/// phi* + I_{phi* <= 0}. Exact for affine maxima; with a radial part it is
/// the floor of the Wulff shape over the problem's directions.
inline ConvZFunction u_phi(const WulffProblem& p) {
  const RecFunction& phi = p.phi();
  if (phi.kind() == RecFunction::Kind::AffineMax) {
    const PAFunction conj = conjugate_of_affine_max(phi.affine());
    return ConvZFunction(truncate(conj, 0.0));
  }
  return floor_function(LiftedBody(wulff_shape(p)));
}

inline ConvZFunction u_phi(const RecFunction& phi, int directions = 2000) { return u_phi(WulffProblem(phi, directions)); }

namespace detail {

inline Digest digest_of(const RecFunction& phi) {
  Digest d;
  d.add(std::string(phi.kind() == RecFunction::Kind::AffineMax ? "affine" : phi.kind() == RecFunction::Kind::Sum ? "sum" : "radial"));
  if (phi.has_affine()) d.add(phi.affine().slopes).add(phi.affine().intercepts);
  if (phi.has_radial()) d.add(phi.alpha().knots()).add(phi.alpha().values());
  return d;
}

/// Hausdorff-type distance between vertex sets.
inline double vertex_distance(const Polytope& A, const Polytope& B) {
  double worst = 0;
  for (int pass = 0; pass < 2; ++pass) {
    const Polytope& X = pass == 0 ? A : B;
    const Polytope& Y = pass == 0 ? B : A;
    for (const Vec& a : X.vertices()) {
      double best = kInf;
      for (const Vec& b : Y.vertices()) best = std::min(best, (a - b).norm());
      worst = std::max(worst, best);
    }
  }
  return worst;
}

}  // namespace detail

/// Both sides of the Wulff-type inequality, the gap, and the equality-case
/// analysis (homothety fitted by volume ratio and centroid).
inline Report wulff_inequality_report(const RecFunction& phi, const ConvZFunction& u, int directions = 2000,
                                      double tolerance = 1e-6, std::uint64_t seed = 0) {
  Report r("wulff-inequality", tolerance, seed);
  Digest dg = detail::digest_of(phi);
  dg.add(u.fn().points()).add(u.fn().values());
  r.inputs_digest = dg.hex();
  if (u.n() != phi.n()) throw InputError("wulff_inequality_report: dimension mismatch");
  std::optional<WulffProblem> p;
  try {
    p.emplace(phi, phi.kind() == RecFunction::Kind::AffineMax ? 16 : directions);
  } catch (const HypothesisError& e) {
    return r.unmet(e.what());
  }
  const LiftedBody Ku = lift_body(u);
  p->include_normals(Ku.body());
  const ConvZFunction uphi = u_phi(*p);
  const int n = u.n();
  const double vu = vbar_np1(u), vw = vbar_np1(uphi);
  if (!(vw > 0)) return r.unmet("u_phi has zero volume");
  const double zu = z_phi(phi, u), zw = z_phi(phi, uphi);
  const double lhs = std::pow(zu / zw, 1.0 / n), rhs = std::pow(vu / vw, 1.0 / (n + 1));
  r.set("z_phi_u", zu).set("z_phi_u_phi", zw).set("vbar_u", vu).set("vbar_u_phi", vw);
  r.set("lhs", lhs).set("rhs", rhs).set("gap", lhs - rhs).set("c_bound", p->c_bound());
  r.require(lhs >= rhs - tolerance * std::max(1.0, std::abs(rhs)), "inequality fails");
  if (vu > 0) {
    const double lambda = std::pow(vu / vw, 1.0 / (n + 1));
    const Polytope W = lift_body(uphi).body();
    Vec shift = Ku.body().centroid() - lambda * W.centroid();
    shift[n] = 0;
    const double dist = detail::vertex_distance(Ku.body(), W.scaled(lambda).translated(shift));
    const double scale = std::max(1.0, lambda);
    const bool homothetic = dist <= tolerance * scale;
    const bool equal = std::abs(lhs - rhs) <= tolerance * std::max(1.0, std::abs(rhs));
    r.set("lambda", lambda).set("homothety_distance", dist).set("equality", equal ? 1.0 : 0.0);
    r.require(!homothetic || equal, "homothetic input without equality");
  }
  return r;
}

/// V(W) against (1/(n+1)) int phi~ dS(W).
inline Report wulff_volume_identity(const WulffProblem& p, std::uint64_t seed = 0) {
  Report r("wulff-volume-identity", 1e-9, seed);
  r.inputs_digest = detail::digest_of(p.phi()).add(p.directions()).hex();
  const Polytope W = wulff_shape(p);
  const double vol = W.volume();
  const double surf = W.area_measure().integrate([&](const Vec& nu) { return p.tilde()(nu); }) / (p.n() + 1);
  r.set("volume", vol).set("surface_integral", surf).set("gap", vol - surf);
  r.require(std::abs(vol - surf) <= 1e-9 * std::max(1.0, vol), "volume identity fails");
  return r;
}

/// Wulff's inequality for a polytope K against the integrand eta on S^n:
/// int eta dS(K) >= (n+1) V(K)^{n/(n+1)} V(W_eta)^{1/(n+1)}.
template <class Eta>
Report body_wulff_report(const Polytope& K, Eta&& eta, std::vector<Vec> directions, double tolerance = 1e-6,
                         std::uint64_t seed = 0) {
  Report r("body-wulff-inequality", tolerance, seed);
  Digest dg;
  dg.add(K.vertices());
  r.inputs_digest = dg.hex();
  const int d = K.dim();
  for (const Facet& f : K.facets()) directions.push_back(f.normal);
  std::vector<Halfspace> hs;
  for (const Vec& nu : directions) hs.push_back({nu, eta(nu)});
  const Polytope W = halfspace_intersection(hs, d);
  const double lhs = K.area_measure().integrate([&](const Vec& nu) { return eta(nu); });
  const double rhs = d * std::pow(K.volume(), (d - 1.0) / d) * std::pow(W.volume(), 1.0 / d);
  r.set("lhs", lhs).set("rhs", rhs).set("gap", lhs - rhs).set("wulff_volume", W.volume());
  r.require(lhs >= rhs - tolerance * std::max(1.0, std::abs(rhs)), "inequality fails");
  return r;
}

/// V of (u* + t phi)* truncated at 0.
inline double perturbed_volume(const ConvZFunction& u, const AffineMax& phi, double t) {
  const AffineMax sum = affine_sum(conjugate_affine(u.fn()), phi, t);
  const PAFunction w = conjugate_of_affine_max(sum);
  if (w.min_value() > 0) return 0.0;
  return vbar_np1(ConvZFunction(truncate(w, 0.0)));
}

/// Forward difference quotients of t -> V((u* + t phi)*) against Z_phi(u),
/// with a first-order decay check between consecutive step sizes.
inline Report first_variation_check(const ConvZFunction& u, const RecFunction& phi,
                                    const std::vector<double>& steps = {1e-2, 1e-3}, double tolerance = 1e-2,
                                    std::uint64_t seed = 0) {
  Report r("first-variation", tolerance, seed);
  Digest dg = detail::digest_of(phi);
  dg.add(u.fn().points()).add(u.fn().values());
  r.inputs_digest = dg.hex();
  if (phi.kind() != RecFunction::Kind::AffineMax) throw InputError("first_variation_check: phi must be an affine maximum");
  const double v0 = vbar_np1(u);
  if (!(v0 > 0)) return r.unmet("u has zero volume");
  if (!recession_below(phi)) return r.unmet("recession function exceeds phi");
  const double z = z_phi(phi, u);
  r.set("z_phi", z).set("vbar", v0);
  std::vector<double> errs;
  for (size_t i = 0; i < steps.size(); ++i) {
    const double t = steps[i];
    const double q = (perturbed_volume(u, phi.affine(), t) - v0) / t;
    errs.push_back(std::abs(q - z));
    r.set("quotient_" + std::to_string(i), q).set("error_" + std::to_string(i), errs.back());
  }
  const double scale = std::max(1.0, std::abs(z));
  r.require(errs.back() <= tolerance * scale, "difference quotient does not match");
  for (size_t i = 1; i < errs.size(); ++i) {
    const double expected = errs[i - 1] * steps[i] / steps[i - 1];
    r.set("decay_" + std::to_string(i), errs[i - 1] > 0 ? errs[i] / errs[i - 1] : 0.0);
    r.require(errs[i] <= 2 * expected + 1e-9 * scale, "no first-order decay");
  }
  return r;
}

}  // namespace convexfn
