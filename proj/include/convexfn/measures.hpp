#pragma once

// Conjugate Monge-Ampere measures, boundary measures and their mixed
// versions for piecewise-affine functions.

#include "convexfn/calculus.hpp"

#include <bit>

namespace convexfn {

/// Push-forward of Lebesgue measure on dom(u) under the gradient: one atom
/// per cell. Zero when the domain is lower-dimensional.
inline AtomicMeasure ma_conjugate(const PAFunction& u) {
  AtomicMeasure m(u.n());
  if (!u.full_domain()) return m;
  for (const Cell& c : u.cells()) m.add(c.gradient, c.volume);
  return m.merged(tol::gradient);
}

namespace detail {

/// Integral of |u| along the segment [a, b] of the domain boundary, using the
/// sites of u that lie on it.
inline double boundary_edge_integral(const PAFunction& u, const Vec& a, const Vec& b) {
  const Vec dir = b - a;
  const double len = dir.norm();
  const Vec e = dir / len;
  std::vector<std::pair<double, double>> pts;
  for (size_t i = 0; i < u.points().size(); ++i) {
    const Vec r = u.points()[i] - a;
    const double s = r.dot(e);
    if ((r - s * e).norm() <= 1e-9 && s >= -1e-9 && s <= len + 1e-9) pts.emplace_back(s, u.values()[i]);
  }
  std::sort(pts.begin(), pts.end());
  std::vector<std::pair<double, double>> h;
  for (const auto& p : pts) {
    while (h.size() >= 2) {
      const auto& o = h[h.size() - 2];
      const auto& q = h.back();
      if ((q.first - o.first) * (p.second - o.second) - (q.second - o.second) * (p.first - o.first) <= 0)
        h.pop_back();
      else
        break;
    }
    h.push_back(p);
  }
  double s = 0;
  for (size_t k = 0; k + 1 < h.size(); ++k)
    s += (h[k + 1].first - h[k].first) * 0.5 * (std::abs(h[k].second) + std::abs(h[k + 1].second));
  return s;
}

}  // namespace detail

/// Boundary measure on S^{n-1}: per facet F of dom(u) an atom at its normal
/// carrying the integral of |u| over F; for a domain inside a hyperplane,
/// two opposite atoms carrying the integral of |u| over the domain.
inline SphereMeasure boundary_measure(const PAFunction& u) {
  const int n = u.n();
  SphereMeasure m(n);
  const Polytope& D = u.domain();
  if (u.full_domain()) {
    for (const Facet& f : D.facets()) {
      double mass = 0;
      if (n == 1) {
        mass = std::abs(u.evaluate(D.vertices()[f.vertices[0]]));
      } else {
        mass = detail::boundary_edge_integral(u, D.vertices()[f.vertices[0]], D.vertices()[f.vertices[1]]);
      }
      m.add(f.normal, mass);
    }
    return m.merged(tol::direction);
  }
  if (u.domain_dim() == n - 1) {
    const double mass = std::abs(u.relative_integral());
    const Vec z = n == 1 ? unit(1, 0) : D.relative_normal();
    m.add(z, mass);
    m.add(-z, mass);
  }
  return m;
}

inline SphereMeasure boundary_measure(const ConvZFunction& u) { return boundary_measure(u.fn()); }

namespace detail {

/// Inclusion-exclusion over {0,1}-weighted epi-combinations:
/// (1/n!) sum_S (-1)^{n-|S|} M(box_{i in S} u_i).
template <class MeasureOf>
AtomicMeasure polarize(const std::vector<PAFunction>& fs, MeasureOf&& measure_of, double merge_tol) {
  const size_t m = fs.size();
  const int n = fs.front().n();
  std::vector<PAFunction> sums(size_t{1} << m);
  AtomicMeasure acc(n);
  double scale = 0;
  for (size_t S = 1; S < sums.size(); ++S) {
    const int low = std::countr_zero(S);
    const size_t rest = S & (S - 1);
    sums[S] = rest == 0 ? fs[low] : inf_convolution(sums[rest], fs[low]);
    const int sign = ((static_cast<int>(m) - std::popcount(S)) % 2 == 0) ? 1 : -1;
    const AtomicMeasure part = measure_of(sums[S]);
    scale = std::max(scale, part.total_variation());
    acc.add(part, sign / factorial(static_cast<int>(m)));
  }
  return acc.merged(merge_tol, 1e-12 * std::max(1.0, scale));
}

}  // namespace detail

/// MA*(u_1, ..., u_n; .) by polarization.
inline AtomicMeasure mixed_ma(const std::vector<PAFunction>& fs) {
  if (fs.empty()) throw InputError("mixed_ma: no functions");
  const int n = fs.front().n();
  if (static_cast<int>(fs.size()) != n) throw InputError("mixed_ma: need exactly n functions");
  for (const PAFunction& f : fs)
    if (f.n() != n) throw InputError("mixed_ma: dimension mismatch");
  return detail::polarize(fs, [](const PAFunction& f) { return ma_conjugate(f); }, tol::gradient);
}

/// S(u_1, ..., u_n; .) by polarization.
inline SphereMeasure mixed_boundary(const std::vector<PAFunction>& fs) {
  if (fs.empty()) throw InputError("mixed_boundary: no functions");
  const int n = fs.front().n();
  if (static_cast<int>(fs.size()) != n) throw InputError("mixed_boundary: need exactly n functions");
  for (const PAFunction& f : fs) {
    if (f.n() != n) throw InputError("mixed_boundary: dimension mismatch");
    if (f.max_value() > ConvZFunction::kTolerance) throw HypothesisError("mixed_boundary: function takes positive values");
  }
  return detail::polarize(fs, [](const PAFunction& f) { return boundary_measure(f); }, tol::direction);
}

inline std::vector<PAFunction> as_pa(const std::vector<ConvZFunction>& fs) {
  std::vector<PAFunction> out;
  for (const ConvZFunction& f : fs) out.push_back(f.fn());
  return out;
}

inline AtomicMeasure mixed_ma(const std::vector<ConvZFunction>& fs) { return mixed_ma(as_pa(fs)); }
inline SphereMeasure mixed_boundary(const std::vector<ConvZFunction>& fs) { return mixed_boundary(as_pa(fs)); }

template <class F>
double integrate(const AtomicMeasure& mu, F&& f) {
  return mu.integrate(std::forward<F>(f));
}

}  // namespace convexfn
