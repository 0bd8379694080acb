#pragma once

// Conjugation, infimal convolution, epi-multiplication and level sets of
// piecewise-affine functions. All operations are hull computations.

#include "convexfn/pa_function.hpp"
#include "convexfn/radial.hpp"
#include "convexfn/rec_function.hpp"

namespace convexfn {

/// u*(y) = max over sites of <p, y> - v.
inline AffineMax conjugate_affine(const PAFunction& u) {
  AffineMax a;
  a.slopes = u.points();
  for (double v : u.values()) a.intercepts.push_back(-v);
  return a;
}

inline RecFunction conjugate(const PAFunction& u) { return RecFunction::affine_max(conjugate_affine(u)); }

/// phi* for phi = max <a_i, .> + b_i: lower hull of the sites (a_i, -b_i).
inline PAFunction conjugate_of_affine_max(const AffineMax& phi) {
  phi.validate();
  std::vector<double> v;
  for (double b : phi.intercepts) v.push_back(-b);
  return PAFunction(phi.slopes, v);
}

inline PAFunction conjugate_of_affine_max(const RecFunction& phi) {
  if (phi.kind() != RecFunction::Kind::AffineMax) throw InputError("conjugate_of_affine_max: not an affine maximum");
  return conjugate_of_affine_max(phi.affine());
}

/// Epigraph sum: lower hull of all pairwise site sums.
inline PAFunction inf_convolution(const PAFunction& u, const PAFunction& v) {
  if (u.n() != v.n()) throw InputError("inf_convolution: dimension mismatch");
  std::vector<Vec> p;
  std::vector<double> val;
  p.reserve(u.points().size() * v.points().size());
  for (size_t i = 0; i < u.points().size(); ++i)
    for (size_t j = 0; j < v.points().size(); ++j) {
      p.push_back(u.points()[i] + v.points()[j]);
      val.push_back(u.values()[i] + v.values()[j]);
    }
  return PAFunction(p, val);
}

inline ConvZFunction inf_convolution(const ConvZFunction& u, const ConvZFunction& v) {
  return ConvZFunction(inf_convolution(u.fn(), v.fn()));
}

/// lambda (.) u = lambda u(./lambda); lambda = 0 gives the indicator of {o}.
inline PAFunction epi_scale(double lambda, const PAFunction& u) {
  if (!(lambda >= 0)) throw InputError("epi_scale: lambda must be non-negative");
  if (lambda == 0) return PAFunction({Vec::Zero(u.n())}, {0.0});
  std::vector<Vec> p = u.points();
  std::vector<double> v = u.values();
  for (Vec& x : p) x *= lambda;
  for (double& x : v) x *= lambda;
  return PAFunction(p, v);
}

inline ConvZFunction epi_scale(double lambda, const ConvZFunction& u) { return ConvZFunction(epi_scale(lambda, u.fn())); }

/// (lambda_1 (.) u_1) box ... box (lambda_m (.) u_m).
inline PAFunction epi_combination(const std::vector<PAFunction>& fs, const std::vector<double>& lambdas) {
  if (fs.empty() || fs.size() != lambdas.size()) throw InputError("epi_combination: size mismatch");
  PAFunction acc = epi_scale(lambdas[0], fs[0]);
  for (size_t i = 1; i < fs.size(); ++i) acc = inf_convolution(acc, epi_scale(lambdas[i], fs[i]));
  return acc;
}

namespace detail {

/// Points of {u <= s} that generate it: sites at or below s and crossings of
/// lifted edges with the height s, each paired with its value.
inline void sublevel_sites(const PAFunction& u, double s, std::vector<Vec>& pts, std::vector<double>& vals) {
  const auto& P = u.points();
  const auto& V = u.values();
  for (size_t i = 0; i < P.size(); ++i)
    if (V[i] <= s) {
      pts.push_back(P[i]);
      vals.push_back(V[i]);
    }
  for (const auto& e : u.edges()) {
    const double a = V[e[0]], b = V[e[1]];
    if ((a < s && b > s) || (a > s && b < s)) {
      const double w = (s - a) / (b - a);
      pts.push_back((1 - w) * P[e[0]] + w * P[e[1]]);
      vals.push_back(s);
    }
  }
}

}  // namespace detail

/// {u <= s} as a polytope, or nothing if s is below the minimum.
inline std::optional<Polytope> level_set(const PAFunction& u, double s) {
  if (s < u.min_value()) return std::nullopt;
  std::vector<Vec> pts;
  std::vector<double> vals;
  detail::sublevel_sites(u, s, pts, vals);
  return Polytope::hull(pts);
}

/// u + indicator of {u <= s}.
inline PAFunction truncate(const PAFunction& u, double s) {
  if (s < u.min_value()) throw GeometryError("truncate: empty level set");
  std::vector<Vec> pts;
  std::vector<double> vals;
  detail::sublevel_sites(u, s, pts, vals);
  return PAFunction(pts, vals);
}

/// Value of u* at y computed directly from the sites.
inline double conjugate_value(const PAFunction& u, const Vec& y) {
  double v = -kInf;
  for (size_t i = 0; i < u.points().size(); ++i) v = std::max(v, u.points()[i].dot(y) - u.values()[i]);
  return v;
}

/// Pointwise sum of two affine maxima (all pairwise sums of pieces).
inline AffineMax affine_sum(const AffineMax& f, const AffineMax& g, double g_scale = 1.0) {
  AffineMax s;
  for (size_t i = 0; i < f.slopes.size(); ++i)
    for (size_t j = 0; j < g.slopes.size(); ++j) {
      s.slopes.push_back(f.slopes[i] + g_scale * g.slopes[j]);
      s.intercepts.push_back(f.intercepts[i] + g_scale * g.intercepts[j]);
    }
  return s;
}

}  // namespace convexfn
