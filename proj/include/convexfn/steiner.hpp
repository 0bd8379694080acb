#pragma once

// Parallel chord movement and Steiner symmetrization of polytopes.

#include "convexfn/polytope.hpp"

namespace convexfn {

namespace detail {

/// Orthonormal basis of the hyperplane orthogonal to the unit vector z.
inline std::vector<Vec> orthogonal_basis(const Vec& z) {
  const int d = static_cast<int>(z.size());
  std::vector<Vec> basis;
  for (int i = 0; i < d && static_cast<int>(basis.size()) < d - 1; ++i) {
    Vec e = unit(d, i);
    e -= z.dot(e) * z;
    for (const Vec& b : basis) e -= b.dot(e) * b;
    if (e.norm() > 1e-6) basis.push_back(e.normalized());
  }
  return basis;
}

/// Base points in z-perp over which the chord endpoints of K are affine:
/// projected vertices plus crossings of projected edges.
inline std::vector<Vec> chord_breakpoints(const Polytope& K, const Vec& z) {
  const int d = K.dim();
  std::vector<Vec> base;
  for (const Vec& v : K.vertices()) base.push_back(v - z.dot(v) * z);
  if (d == 3) {
    const auto basis = orthogonal_basis(z);
    auto loc = [&](const Vec& v) { return Eigen::Vector2d(basis[0].dot(v), basis[1].dot(v)); };
    const auto& E = K.edges();
    std::vector<std::pair<Eigen::Vector2d, Eigen::Vector2d>> seg;
    for (const auto& e : E) seg.emplace_back(loc(K.vertices()[e[0]]), loc(K.vertices()[e[1]]));
    for (size_t i = 0; i < seg.size(); ++i) {
      const Eigen::Vector2d p = seg[i].first, r = seg[i].second - seg[i].first;
      for (size_t j = i + 1; j < seg.size(); ++j) {
        const Eigen::Vector2d q = seg[j].first, s = seg[j].second - seg[j].first;
        const double den = r.x() * s.y() - r.y() * s.x();
        if (std::abs(den) <= 1e-14 * r.norm() * s.norm()) continue;
        const Eigen::Vector2d w = q - p;
        const double a = (w.x() * s.y() - w.y() * s.x()) / den;
        const double b = (w.x() * r.y() - w.y() * r.x()) / den;
        if (a <= 1e-12 || a >= 1 - 1e-12 || b <= 1e-12 || b >= 1 - 1e-12) continue;
        const Eigen::Vector2d x = p + a * r;
        base.push_back(x.x() * basis[0] + x.y() * basis[1]);
      }
    }
  }
  return base;
}

/// Chord {b + s z : lo <= s <= hi} of K over the base point b; lo > hi
/// signals an empty section.
inline std::pair<double, double> chord(const Polytope& K, const Vec& z, const Vec& b) {
  double lo = -kInf, hi = kInf;
  for (const Facet& f : K.facets()) {
    const double nz = f.normal.dot(z);
    if (std::abs(nz) <= 1e-12) continue;
    const double s = (f.offset - f.normal.dot(b)) / nz;
    if (nz > 0)
      hi = std::min(hi, s);
    else
      lo = std::max(lo, s);
  }
  return {lo, hi};
}

/// Planar case in O(V log V): lower and upper chains of the polygon over the
/// axis orthogonal to z, swept at the sorted vertex projections.
inline Polytope chord_movement_planar(const Polytope& K, const Vec& z, double t) {
  const Vec e = make_vec({-z[1], z[0]});
  std::vector<std::array<double, 2>> p;
  for (const Vec& v : K.vertices()) p.push_back({e.dot(v), z.dot(v)});
  std::sort(p.begin(), p.end());
  auto chain = [&](double sign) {
    std::vector<std::array<double, 2>> h;
    for (const auto& q : p) {
      while (h.size() >= 2) {
        const auto& a = h[h.size() - 2];
        const auto& b = h.back();
        const double cross = (b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0]);
        if (sign * cross > 0) break;
        h.pop_back();
      }
      h.push_back(q);
    }
    return h;
  };
  const auto lower = chain(1.0), upper = chain(-1.0);
  auto eval = [](const std::vector<std::array<double, 2>>& h, size_t& k, double b) {
    while (k + 1 < h.size() && h[k + 1][0] < b) ++k;
    if (k + 1 >= h.size() || h[k + 1][0] == h[k][0]) return h[k][1];
    const double w = std::clamp((b - h[k][0]) / (h[k + 1][0] - h[k][0]), 0.0, 1.0);
    return (1 - w) * h[k][1] + w * h[k + 1][1];
  };
  std::vector<Vec> pts;
  size_t kl = 0, ku = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    const double b = p[i][0];
    if (i > 0 && b == p[i - 1][0]) continue;
    double lo = eval(lower, kl, b), hi = eval(upper, ku, b);
    if (b == p.front()[0] || b == p.back()[0]) {
      lo = kInf;
      hi = -kInf;
      for (const auto& q : p)
        if (q[0] == b) {
          lo = std::min(lo, q[1]);
          hi = std::max(hi, q[1]);
        }
    }
    if (hi < lo) lo = hi = 0.5 * (lo + hi);
    const double shift = -t * (lo + hi);
    pts.push_back(b * e + (lo + shift) * z);
    pts.push_back(b * e + (hi + shift) * z);
  }
  return Polytope::hull(pts);
}

}  // namespace detail

/// Parallel chord movement: every chord of K parallel to z is translated by
/// -t (lo + hi) z, so t=0 gives K, t=1 its reflection in z-perp and t=1/2
/// the Steiner symmetral.
inline Polytope chord_movement_body(const Polytope& K, const Vec& zin, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw InputError("chord_movement_body: t must lie in [0,1]");
  if (zin.size() != K.dim()) throw InputError("chord_movement_body: direction dimension mismatch");
  if (!K.full_dimensional()) throw GeometryError("chord_movement_body: body is not full-dimensional");
  const Vec z = zin.normalized();
  if (K.dim() == 2) return detail::chord_movement_planar(K, z, t);
  std::vector<Vec> pts;
  for (const Vec& b : detail::chord_breakpoints(K, z)) {
    auto [lo, hi] = detail::chord(K, z, b);
    if (!std::isfinite(lo) || !std::isfinite(hi)) continue;
    if (hi < lo) lo = hi = 0.5 * (lo + hi);
    const double shift = -t * (lo + hi);
    pts.push_back(b + (lo + shift) * z);
    pts.push_back(b + (hi + shift) * z);
  }
  return Polytope::hull(pts);
}

inline Polytope steiner_symmetral_body(const Polytope& K, const Vec& z) { return chord_movement_body(K, z, 0.5); }

/// Reflection of K in the hyperplane orthogonal to z.
inline Polytope reflect(const Polytope& K, const Vec& zin) {
  const Vec z = zin.normalized();
  std::vector<Vec> pts;
  for (const Vec& v : K.vertices()) pts.push_back(v - 2 * z.dot(v) * z);
  return Polytope::hull(pts);
}

}  // namespace convexfn
