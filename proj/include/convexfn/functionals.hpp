#pragma once

// Scalar functionals on convex functions: the lifted volume, intrinsic
// volumes with density, the integral functional Z_phi and mixed volumes of
// functions.

#include "convexfn/lift.hpp"
#include "convexfn/measures.hpp"
#include "convexfn/report.hpp"

#include <numbers>

namespace convexfn {

/// Unit-ball volumes kappa_j.
struct BallConstants {
  static double kappa(int j) { return convexfn::kappa(j); }
  /// kappa_j from kappa_{j-1} via the Gamma-function ratio.
  static double kappa_recurrence(int j) {
    return kappa(j - 1) * std::sqrt(std::numbers::pi) * std::tgamma(0.5 * (j + 1)) / std::tgamma(0.5 * j + 1);
  }
};

/// Integral of |u| over its domain.
inline double vbar_np1(const ConvZFunction& u) { return -u.fn().integral(); }

/// int phi dMA*(u) + int rho_phi dS(u).
inline double z_phi(const RecFunction& phi, const PAFunction& u) {
  const double a = ma_conjugate(u).integrate([&](const Vec& y) { return phi(y); });
  const double b = boundary_measure(u).integrate([&](const Vec& z) { return phi.recession(z); });
  return a + b;
}

inline double z_phi(const RecFunction& phi, const ConvZFunction& u) { return z_phi(phi, u.fn()); }

/// Half the integral of the lifted integrand against the area measure of K^u.
inline double z_phi_lifted(const TildeIntegrand& phi, const ConvZFunction& u) {
  return 0.5 * lift_body(u).body().area_measure().integrate([&](const Vec& nu) { return phi(nu); });
}

/// Radial closed form of the j-th intrinsic volume with density alpha.
inline double fiv_radial(int j, const Profile& alpha, const RadialFunction& u) {
  const int n = u.n();
  if (j < 1 || j > n) throw InputError("fiv_radial: j must lie in 1..n");
  double s = 0;
  for (size_t i = 1; i < u.radii().size(); ++i)
    s += alpha(u.slope(i)) * kappa(j) * (std::pow(u.radii()[i], j) - std::pow(u.radii()[i - 1], j));
  return binomial(n, j) * kappa(n) / (kappa(j) * kappa(n - j)) * s;
}

/// Top-degree intrinsic volume int alpha(|grad u|) dx of a PA function.
inline double fiv_top(const Profile& alpha, const PAFunction& u) {
  return ma_conjugate(u).integrate([&](const Vec& y) { return alpha(y.norm()); });
}

/// Z_1 of a function of two variables as the average over line directions of
/// the one-dimensional intrinsic volume of its projections (midpoint rule on
/// [0, pi)).
inline double fiv_cauchy_kubota(const Profile& alpha, const PAFunction& f, int directions = 180) {
  if (f.n() != 2) throw InputError("fiv_cauchy_kubota: only n = 2");
  if (directions < 1) throw InputError("fiv_cauchy_kubota: need at least one direction");
  double acc = 0;
  for (int k = 0; k < directions; ++k) {
    const double th = std::numbers::pi * (k + 0.5) / directions;
    const Vec e = make_vec({std::cos(th), std::sin(th)});
    std::vector<Vec> pts;
    for (const Vec& p : f.points()) pts.push_back(make_vec({p.dot(e)}));
    acc += fiv_top(alpha, PAFunction(pts, f.values()));
  }
  return binomial(2, 1) * kappa(2) / (kappa(1) * kappa(1)) * acc / directions;
}

struct SteinerExtraction {
  double value = 0;
  double ball_deficit = 0;          // relative area deficit of the m-gon
  std::vector<double> coefficients;  // kappa_{n-j} Z_j for j = n..0
};

/// Regular m-gon (n = 2) or segment (n = 1) inscribed in the unit ball.
inline Polytope polygonal_ball(int n, int m) {
  std::vector<Vec> pts;
  if (n == 1) return Polytope::hull({make_vec({-1.0}), make_vec({1.0})});
  if (n != 2) throw InputError("polygonal_ball: only n <= 2");
  for (int k = 0; k < m; ++k) {
    const double a = 2 * std::numbers::pi * k / m;
    pts.push_back(make_vec({std::cos(a), std::sin(a)}));
  }
  return Polytope::hull(pts);
}

/// All coefficients of r -> Z_n(u box I_{r P_m}), obtained by solving the
/// Vandermonde system at the given radii (default k/(n+1)).
inline SteinerExtraction fiv_steiner_all(const Profile& alpha, const PAFunction& u, int m = 128,
                                         std::vector<double> radii = {}) {
  const int n = u.n();
  if (radii.empty())
    for (int k = 1; k <= n + 1; ++k) radii.push_back(static_cast<double>(k) / (n + 1));
  if (static_cast<int>(radii.size()) != n + 1) throw InputError("fiv_steiner: need n+1 radii");
  for (size_t a = 0; a < radii.size(); ++a) {
    if (!(radii[a] > 0)) throw InputError("fiv_steiner: radii must be positive");
    for (size_t b = 0; b < a; ++b)
      if (std::abs(radii[a] - radii[b]) <= 1e-12) throw InputError("fiv_steiner: coincident radii");
  }
  const Polytope P = polygonal_ball(n, m);
  Eigen::MatrixXd A(n + 1, n + 1);
  Eigen::VectorXd f(n + 1);
  for (int k = 0; k <= n; ++k) {
    const PAFunction w = inf_convolution(u, PAFunction::indicator(P.scaled(radii[k])));
    f[k] = fiv_top(alpha, w);
    for (int p = 0; p <= n; ++p) A(k, p) = std::pow(radii[k], p);
  }
  const Eigen::VectorXd c = A.fullPivLu().solve(f);
  SteinerExtraction out;
  for (int p = 0; p <= n; ++p) out.coefficients.push_back(c[p]);
  out.ball_deficit = (kappa(n) - P.volume()) / kappa(n);
  return out;
}

inline SteinerExtraction fiv_steiner_extraction(int j, const Profile& alpha, const PAFunction& u, int m = 128,
                                                std::vector<double> radii = {}) {
  const int n = u.n();
  if (j < 0 || j > n) throw InputError("fiv_steiner_extraction: j must lie in 0..n");
  SteinerExtraction out = fiv_steiner_all(alpha, u, m, std::move(radii));
  out.value = out.coefficients[n - j] / kappa(n - j);
  return out;
}

/// Half the mixed volume of the lifted bodies.
inline double vbar_mixed(const std::vector<ConvZFunction>& fs) {
  if (fs.empty()) throw InputError("vbar_mixed: no functions");
  const int n = fs.front().n();
  if (static_cast<int>(fs.size()) != n + 1) throw InputError("vbar_mixed: need n+1 functions");
  std::vector<Polytope> bodies;
  for (const ConvZFunction& f : fs) bodies.push_back(lift_body(f).body());
  return 0.5 * mixed_volume(bodies);
}

/// Mixed volume through mixed measures: conjugate against MA* plus support
/// function of the domain against the boundary measure.
inline double vbar_mixed_rep(const std::vector<ConvZFunction>& fs) {
  if (fs.empty()) throw InputError("vbar_mixed_rep: no functions");
  const int n = fs.front().n();
  if (static_cast<int>(fs.size()) != n + 1) throw InputError("vbar_mixed_rep: need n+1 functions");
  const std::vector<ConvZFunction> rest(fs.begin() + 1, fs.end());
  const AffineMax u0s = conjugate_affine(fs[0].fn());
  const double a = mixed_ma(rest).integrate([&](const Vec& y) { return u0s(y); });
  const Polytope& D = fs[0].fn().domain();
  const double b = mixed_boundary(rest).integrate([&](const Vec& z) { return D.support(z); });
  return (a + b) / (n + 1);
}

/// Largest |u| over the boundary of the domain.
inline double boundary_max_abs(const PAFunction& u) {
  const Polytope& D = u.domain();
  if (!u.full_domain()) return std::max(std::abs(u.min_value()), std::abs(u.max_value()));
  double worst = 0;
  for (size_t i = 0; i < u.points().size(); ++i) {
    bool on_boundary = false;
    for (const Facet& f : D.facets())
      if (std::abs(f.normal.dot(u.points()[i]) - f.offset) <= 1e-9) on_boundary = true;
    if (on_boundary) worst = std::max(worst, std::abs(u.values()[i]));
  }
  return worst;
}

/// Spread of u over the boundary of its domain (0 when constant there).
inline double boundary_spread(const PAFunction& u) {
  const Polytope& D = u.domain();
  double lo = kInf, hi = -kInf;
  for (size_t i = 0; i < u.points().size(); ++i) {
    bool on_boundary = !u.full_domain();
    for (const Facet& f : D.facets())
      if (std::abs(f.normal.dot(u.points()[i]) - f.offset) <= 1e-9) on_boundary = true;
    if (on_boundary) {
      lo = std::min(lo, u.values()[i]);
      hi = std::max(hi, u.values()[i]);
    }
  }
  return hi - lo;
}

/// int u0* dMA*(u1, ..., un).
inline double conjugate_mixed_integral(const std::vector<ConvZFunction>& fs) {
  const std::vector<ConvZFunction> rest(fs.begin() + 1, fs.end());
  const AffineMax u0s = conjugate_affine(fs[0].fn());
  return mixed_ma(rest).integrate([&](const Vec& y) { return u0s(y); });
}

/// Mixed Monge-Ampere inequality for functions vanishing on the boundary of
/// their domains, with the permutation symmetry of the integral (n = 2).
inline Report mixed_ma_inequality_check(const std::vector<ConvZFunction>& fs, std::uint64_t seed = 0) {
  Report r("mixed-ma-inequality", 1e-9, seed);
  Digest dg;
  for (const ConvZFunction& f : fs) dg.add(f.fn().points()).add(f.fn().values());
  r.inputs_digest = dg.hex();
  const int n = fs.empty() ? 0 : fs.front().n();
  if (n != 2 || fs.size() != 3) throw InputError("mixed_ma_inequality_check: needs three functions of two variables");
  for (const ConvZFunction& f : fs)
    if (boundary_max_abs(f.fn()) > 1e-9) return r.unmet("function does not vanish on the boundary of its domain");
  const double lhs_root = conjugate_mixed_integral(fs);
  const double a = conjugate_mixed_integral({fs[0], fs[1], fs[1]});
  const double b = conjugate_mixed_integral({fs[0], fs[2], fs[2]});
  const double lhs = lhs_root * lhs_root, rhs = a * b;
  r.set("integral", lhs_root).set("lhs", lhs).set("rhs", rhs).set("gap", lhs - rhs);
  r.require(lhs >= rhs - 1e-9 * std::abs(lhs), "inequality fails");
  double asym = 0;
  const std::vector<std::array<int, 3>> perms{{0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& p : perms)
    asym = std::max(asym, std::abs(conjugate_mixed_integral({fs[p[0]], fs[p[1]], fs[p[2]]}) - lhs_root));
  r.set("asymmetry", asym);
  r.require(asym <= 1e-9 * std::max(1.0, std::abs(lhs_root)), "integral is not symmetric");
  return r;
}

}  // namespace convexfn
