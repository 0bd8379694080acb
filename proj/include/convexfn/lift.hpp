#pragma once

// Correspondence between non-positive convex functions and convex bodies
// symmetric in the horizontal hyperplane, plus the gnomonic projection and
// the lifted integrand on the sphere.

#include "convexfn/calculus.hpp"

#include <functional>

namespace convexfn {

inline Vec reflect_vertical(const Vec& x) {
  Vec r = x;
  r[r.size() - 1] = -r[r.size() - 1];
  return r;
}

/// Polytope in R^{n+1} certified symmetric under (x, t) -> (x, -t).
class LiftedBody {
 public:
  explicit LiftedBody(Polytope body) : body_(std::move(body)) {
    const auto& V = body_.vertices();
    for (const Vec& v : V) {
      const Vec r = reflect_vertical(v);
      bool found = false;
      for (const Vec& w : V)
        if ((w - r).norm() <= 1e-9) {
          found = true;
          break;
        }
      if (!found) throw InputError("LiftedBody: body is not symmetric in the horizontal hyperplane");
    }
  }
  const Polytope& body() const { return body_; }
  int n() const { return body_.dim() - 1; }

 private:
  Polytope body_;
};

/// Epigraph intersected with its reflection: hull of (p, v) and (p, -v).
inline LiftedBody lift_body(const ConvZFunction& u) {
  std::vector<Vec> pts;
  const PAFunction& f = u.fn();
  for (size_t i = 0; i < f.points().size(); ++i) {
    Vec q(f.n() + 1);
    q.head(f.n()) = f.points()[i];
    q[f.n()] = f.values()[i];
    pts.push_back(q);
    pts.push_back(reflect_vertical(q));
  }
  return LiftedBody(Polytope::hull(pts));
}

/// Lower boundary function of a symmetric body.
inline ConvZFunction floor_function(const LiftedBody& K) {
  const int n = K.n();
  std::vector<Vec> pts;
  std::vector<double> vals;
  for (const Vec& v : K.body().vertices()) {
    pts.push_back(v.head(n));
    vals.push_back(std::min(v[n], 0.0));
  }
  return ConvZFunction(PAFunction(pts, vals));
}

/// (nu_1..nu_n) / |nu_{n+1}| for nu in the open lower half-sphere.
inline Vec gnomonic(const Vec& nu) {
  const int d = static_cast<int>(nu.size());
  if (!(nu[d - 1] < 0)) throw InputError("gnomonic: direction must lie in the open lower half-sphere");
  return nu.head(d - 1) / (-nu[d - 1]);
}

inline Vec gnomonic_inverse(const Vec& y) {
  Vec nu(y.size() + 1);
  nu.head(y.size()) = y;
  nu[y.size()] = -1.0;
  return nu / std::sqrt(1.0 + y.squaredNorm());
}

/// u*(y) read off the lift: h_{K^u}(y, -1).
inline double conjugate_via_support(const ConvZFunction& u, const Vec& y) {
  Vec q(y.size() + 1);
  q.head(y.size()) = y;
  q[y.size()] = -1.0;
  return lift_body(u).body().support(q);
}

/// Integrand on S^n built from phi: phi(gnom nu) |nu_{n+1}| on the lower
/// half-sphere, the recession function on the equator, and the mirror image
/// on the upper half-sphere.
class TildeIntegrand {
 public:
  using Fn = std::function<double(const Vec&)>;

  explicit TildeIntegrand(const RecFunction& phi)
      : phi_([phi](const Vec& x) { return phi(x); }), rho_([phi](const Vec& z) { return phi.recession(z); }) {}
  TildeIntegrand(Fn phi, Fn rho) : phi_(std::move(phi)), rho_(std::move(rho)) {}

  static constexpr double kEquator = 1e-12;

  double operator()(const Vec& nu_in) const {
    const int d = static_cast<int>(nu_in.size());
    const double height = std::abs(nu_in[d - 1]);
    const Vec z = nu_in.head(d - 1);
    if (height <= kEquator) return rho_(z / z.norm());
    return phi_(z / height) * height;
  }

 private:
  Fn phi_;
  Fn rho_;
};

/// Sum over lower facets of K^u of phi(gnom nu) / sqrt(1 + |gnom nu|^2) times
/// the facet area.
template <class F>
double lower_facet_integral(const ConvZFunction& u, F&& phi) {
  double s = 0;
  const SphereMeasure area = lift_body(u).body().area_measure();
  for (const Atom& a : area.atoms()) {
    const Vec& nu = a.point;
    if (nu[nu.size() - 1] >= -TildeIntegrand::kEquator) continue;
    const Vec g = gnomonic(nu);
    s += phi(g) / std::sqrt(1.0 + g.squaredNorm()) * a.mass;
  }
  return s;
}

/// Half the restriction of the area measure of K^u to the equator, as a
/// measure on S^{n-1}.
inline SphereMeasure equatorial_measure(const ConvZFunction& u) {
  const int n = u.n();
  SphereMeasure m(n);
  const SphereMeasure area = lift_body(u).body().area_measure();
  for (const Atom& a : area.atoms()) {
    if (std::abs(a.point[n]) > TildeIntegrand::kEquator) continue;
    const Vec z = a.point.head(n);
    m.add(z / z.norm(), 0.5 * a.mass);
  }
  return m.merged(tol::direction);
}

}  // namespace convexfn
