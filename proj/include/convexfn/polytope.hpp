#pragma once

// Convex polytopes in dimension 1 to 3: hulls, facets, volumes, support
// functions and area measures. Vertices are the canonical representation;
// facets are derived once at construction.

#include "convexfn/detail/hull.hpp"
#include "convexfn/measure.hpp"

#include <array>
#include <bit>
#include <map>

namespace convexfn {

struct Facet {
  Vec normal;     // unit outer normal
  double offset;  // support value in direction `normal`
  double measure; // (d-1)-dimensional volume
  std::vector<int> vertices;
};

class Polytope {
 public:
  Polytope() = default;

  /// Convex hull of a non-empty point set; lower-dimensional results are
  /// allowed and report their intrinsic dimension.
  static Polytope hull(const std::vector<Vec>& points) {
    if (points.empty()) throw InputError("convex_hull: empty point set");
    const int d = static_cast<int>(points.front().size());
    if (d < 1 || d > 3) throw InputError("convex_hull: dimension must be 1, 2 or 3");
    for (const Vec& p : points) {
      if (p.size() != d) throw InputError("convex_hull: mixed dimensions");
      if (!p.allFinite()) throw InputError("convex_hull: non-finite coordinate");
    }
    Polytope P;
    P.d_ = d;
    P.frame_ = detail::affine_frame(points, tol::vertex);
    P.build(points);
    return P;
  }

  int dim() const { return d_; }
  int intrinsic_dim() const { return frame_.dim; }
  bool full_dimensional() const { return frame_.dim == d_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }
  const detail::AffineFrame& frame() const { return frame_; }

  /// d-dimensional volume; zero for lower-dimensional bodies.
  double volume() const { return full_dimensional() ? rel_volume_ : 0.0; }

  /// Volume relative to the affine hull (length, area, ...); 1 for a point.
  double relative_volume() const { return rel_volume_; }

  /// Unit normal of the affine hull of a (d-1)-dimensional body.
  Vec relative_normal() const {
    if (frame_.dim != d_ - 1) throw GeometryError("relative_normal: body is not a hyperplane piece");
    if (d_ == 1) return unit(1, 0);
    if (d_ == 2) return make_vec({-frame_.basis[0][1], frame_.basis[0][0]});
    Eigen::Vector3d a = frame_.basis[0].head<3>(), b = frame_.basis[1].head<3>();
    Eigen::Vector3d c = a.cross(b).normalized();
    return make_vec({c.x(), c.y(), c.z()});
  }

  double support(const Vec& y) const {
    double s = -kInf;
    for (const Vec& v : vertices_) s = std::max(s, v.dot(y));
    return s;
  }

  /// Negative eps asks for x at least |eps| inside every facet.
  bool contains(const Vec& x, double eps = 1e-9) const {
    if (frame_.distance(x) > std::max(eps, tol::vertex)) return false;
    if (full_dimensional()) {
      for (const Facet& f : facets_)
        if (f.normal.dot(x) > f.offset + eps) return false;
      return true;
    }
    if (frame_.dim == 0) return true;
    std::vector<Vec> loc;
    for (const Vec& v : vertices_) loc.push_back(frame_.local(v));
    return Polytope::hull(loc).contains(frame_.local(x), eps);
  }

  /// Centroid of the body with respect to its relative volume.
  Vec centroid() const { return centroid_; }

  Polytope translated(const Vec& t) const {
    std::vector<Vec> pts;
    for (const Vec& v : vertices_) pts.push_back(v + t);
    return hull(pts);
  }

  Polytope scaled(double s) const {
    std::vector<Vec> pts;
    for (const Vec& v : vertices_) pts.push_back(s * v);
    return hull(pts);
  }

  /// Surface area measure of a full-dimensional polytope: one atom per facet.
  SphereMeasure surface_area_measure() const {
    if (!full_dimensional()) throw GeometryError("surface_area_measure: body is not full-dimensional");
    return area_measure();
  }

  /// Area measure for any body: facet atoms if full-dimensional, two
  /// opposite atoms carrying the relative volume for a hyperplane piece,
  /// zero otherwise.
  SphereMeasure area_measure() const {
    SphereMeasure m(d_);
    if (full_dimensional()) {
      for (const Facet& f : facets_) m.add(f.normal, f.measure);
    } else if (frame_.dim == d_ - 1) {
      const Vec n = relative_normal();
      m.add(n, rel_volume_);
      m.add(-n, rel_volume_);
    }
    return m;
  }

  /// Vertex loop of a two-dimensional body, counter-clockwise in its frame.
  const std::vector<int>& ring() const { return ring_; }

  /// Index of each vertex in the point list the hull was built from.
  const std::vector<int>& source() const { return source_; }

 private:
  void build(const std::vector<Vec>& points) {
    const int k = frame_.dim;
    std::vector<int> keep;
    std::vector<std::array<int, 3>> tris;
    if (k == 0) {
      size_t o = 0;
      for (size_t i = 1; i < points.size(); ++i)
        if (lex_less(points[i], points[o])) o = i;
      keep.push_back(static_cast<int>(o));
    } else if (k == 1) {
      int lo = 0, hi = 0;
      std::vector<double> s(points.size());
      for (size_t i = 0; i < points.size(); ++i) {
        s[i] = frame_.basis[0].dot(points[i] - frame_.origin);
        if (s[i] < s[lo]) lo = static_cast<int>(i);
        if (s[i] > s[hi]) hi = static_cast<int>(i);
      }
      keep = {lo, hi};
    } else if (k == 2) {
      std::vector<Eigen::Vector2d> loc(points.size());
      double scale = 1.0;
      for (size_t i = 0; i < points.size(); ++i) {
        const Vec l = frame_.local(points[i]);
        loc[i] = Eigen::Vector2d(l[0], l[1]);
        scale = std::max(scale, loc[i].cwiseAbs().maxCoeff());
      }
      keep = detail::hull2d(loc, tol::hull * scale * scale);
    } else {
      std::vector<Eigen::Vector3d> p3(points.size());
      double scale = 1.0;
      for (size_t i = 0; i < points.size(); ++i) {
        p3[i] = points[i].head<3>();
        scale = std::max(scale, p3[i].cwiseAbs().maxCoeff());
      }
      tris = detail::QuickHull3(p3, tol::hull * scale).run();
      keep = detail::extreme_points3(p3, tris, tol::coplanar * scale);
      std::vector<char> seen(points.size(), 0);
      for (const auto& t : tris)
        for (int i : t) seen[i] = 1;
      if (keep.size() < seen.size() - std::count(seen.begin(), seen.end(), 0)) {
        std::vector<Eigen::Vector3d> q3;
        for (int i : keep) q3.push_back(p3[i]);
        tris = detail::QuickHull3(q3, tol::hull * scale).run();
        for (auto& t : tris)
          for (int& i : t) i = keep[i];
      }
    }

    // Canonical lexicographic vertex order.
    std::vector<int> order(keep.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return lex_less(points[keep[a]], points[keep[b]]); });
    std::vector<int> pos(points.size(), -1);
    for (size_t r = 0; r < order.size(); ++r) {
      vertices_.push_back(points[keep[order[r]]]);
      source_.push_back(keep[order[r]]);
      pos[keep[order[r]]] = static_cast<int>(r);
    }

    if (k == 0) {
      rel_volume_ = 1.0;
      centroid_ = vertices_[0];
    } else if (k == 1) {
      rel_volume_ = (vertices_[1] - vertices_[0]).norm();
      centroid_ = 0.5 * (vertices_[0] + vertices_[1]);
      edges_.push_back({0, 1});
      if (d_ == 1) {
        facets_.push_back({make_vec({-1.0}), -vertices_[0][0], 1.0, {0}});
        facets_.push_back({make_vec({1.0}), vertices_[1][0], 1.0, {1}});
      }
    } else if (k == 2) {
      for (int i : keep) ring_.push_back(pos[i]);
      // Orient the loop counter-clockwise in ambient coordinates when d = 2.
      if (d_ == 2) {
        double a = 0;
        for (size_t i = 0; i < ring_.size(); ++i) {
          const Vec& p = vertices_[ring_[i]];
          const Vec& q = vertices_[ring_[(i + 1) % ring_.size()]];
          a += p[0] * q[1] - p[1] * q[0];
        }
        if (a < 0) std::reverse(ring_.begin(), ring_.end());
      }
      build_polygon();
    } else {
      for (auto& t : tris)
        for (int& i : t) i = pos[i];
      build_polyhedron(tris);
    }
  }

  void build_polygon() {
    const size_t m = ring_.size();
    std::vector<Eigen::Vector2d> loc(m);
    for (size_t i = 0; i < m; ++i) {
      const Vec l = frame_.local(vertices_[ring_[i]]);
      loc[i] = Eigen::Vector2d(l[0], l[1]);
    }
    double area = 0;
    Eigen::Vector2d c(0, 0);
    for (size_t i = 0; i < m; ++i) {
      const auto& a = loc[i];
      const auto& b = loc[(i + 1) % m];
      const double cr = a.x() * b.y() - a.y() * b.x();
      area += cr;
      c += cr * (a + b);
    }
    area *= 0.5;
    c /= (6.0 * area);
    rel_volume_ = std::abs(area);
    centroid_ = frame_.global(make_vec({c.x(), c.y()}));
    for (size_t i = 0; i < m; ++i) {
      const int a = ring_[i], b = ring_[(i + 1) % m];
      edges_.push_back({std::min(a, b), std::max(a, b)});
      if (d_ == 2) {
        const Vec e = vertices_[b] - vertices_[a];
        const double len = e.norm();
        Vec n = make_vec({e[1], -e[0]}) / len;
        facets_.push_back({n, 0.5 * (n.dot(vertices_[a]) + n.dot(vertices_[b])), len, {a, b}});
      }
    }
    std::sort(edges_.begin(), edges_.end());
  }

  void build_polyhedron(const std::vector<std::array<int, 3>>& tris) {
    const size_t nt = tris.size();
    std::vector<Eigen::Vector3d> avec(nt);  // area vectors
    std::vector<Eigen::Vector3d> tn(nt);
    for (size_t t = 0; t < nt; ++t) {
      const Eigen::Vector3d a = vertices_[tris[t][0]].head<3>(), b = vertices_[tris[t][1]].head<3>(),
                            c = vertices_[tris[t][2]].head<3>();
      avec[t] = 0.5 * (b - a).cross(c - a);
      tn[t] = avec[t].normalized();
    }
    std::map<std::pair<int, int>, std::vector<int>> edge_tris;
    for (size_t t = 0; t < nt; ++t)
      for (int e = 0; e < 3; ++e) {
        int a = tris[t][e], b = tris[t][(e + 1) % 3];
        edge_tris[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(t));
      }
    std::vector<int> parent(nt);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    double scale = 1.0;
    for (const Vec& v : vertices_) scale = std::max(scale, v.cwiseAbs().maxCoeff());
    for (const auto& [e, ts] : edge_tris) {
      if (ts.size() != 2) continue;
      const int s = ts[0], t = ts[1];
      const Eigen::Vector3d ps = vertices_[tris[s][0]].head<3>();
      bool flat = tn[s].dot(tn[t]) > 0;
      for (int i : tris[t]) flat = flat && std::abs(tn[s].dot(vertices_[i].head<3>() - ps)) <= tol::coplanar * scale;
      for (int i : tris[s]) {
        const Eigen::Vector3d pt = vertices_[tris[t][0]].head<3>();
        flat = flat && std::abs(tn[t].dot(vertices_[i].head<3>() - pt)) <= tol::coplanar * scale;
      }
      if (flat) parent[find(s)] = find(t);
    }
    std::map<int, int> facet_of_root;
    std::vector<Eigen::Vector3d> fa;
    std::vector<int> tri_facet(nt);
    for (size_t t = 0; t < nt; ++t) {
      const int r = find(static_cast<int>(t));
      auto it = facet_of_root.find(r);
      if (it == facet_of_root.end()) {
        it = facet_of_root.emplace(r, static_cast<int>(facets_.size())).first;
        facets_.push_back({});
        fa.emplace_back(0, 0, 0);
      }
      tri_facet[t] = it->second;
      fa[it->second] += avec[t];
      for (int i : tris[t]) facets_[it->second].vertices.push_back(i);
    }
    for (size_t f = 0; f < facets_.size(); ++f) {
      Facet& F = facets_[f];
      std::sort(F.vertices.begin(), F.vertices.end());
      F.vertices.erase(std::unique(F.vertices.begin(), F.vertices.end()), F.vertices.end());
      F.measure = fa[f].norm();
      const Eigen::Vector3d n = fa[f] / F.measure;
      F.normal = make_vec({n.x(), n.y(), n.z()});
      double off = 0;
      for (int i : F.vertices) off += F.normal.dot(vertices_[i]);
      F.offset = off / static_cast<double>(F.vertices.size());
    }
    for (const auto& [e, ts] : edge_tris)
      if (ts.size() == 2 && tri_facet[ts[0]] != tri_facet[ts[1]]) edges_.push_back({e.first, e.second});

    Eigen::Vector3d c0(0, 0, 0);
    for (const Vec& v : vertices_) c0 += v.head<3>();
    c0 /= static_cast<double>(vertices_.size());
    double vol = 0;
    Eigen::Vector3d cm(0, 0, 0);
    for (const auto& t : tris) {
      const Eigen::Vector3d a = vertices_[t[0]].head<3>() - c0, b = vertices_[t[1]].head<3>() - c0,
                            c = vertices_[t[2]].head<3>() - c0;
      const double v = a.dot(b.cross(c)) / 6.0;
      vol += v;
      cm += v * (a + b + c) / 4.0;
    }
    rel_volume_ = vol;
    cm = cm / vol + c0;
    centroid_ = make_vec({cm.x(), cm.y(), cm.z()});
  }

  int d_ = 0;
  detail::AffineFrame frame_;
  std::vector<Vec> vertices_;
  std::vector<Facet> facets_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<int> ring_;
  std::vector<int> source_;
  double rel_volume_ = 0;
  Vec centroid_;
};

inline Polytope convex_hull(const std::vector<Vec>& points) { return Polytope::hull(points); }

inline double volume(const Polytope& K) { return K.volume(); }

inline Polytope minkowski_sum(const Polytope& K, const Polytope& L) {
  if (K.dim() != L.dim()) throw InputError("minkowski_sum: dimension mismatch");
  std::vector<Vec> pts;
  pts.reserve(K.vertices().size() * L.vertices().size());
  for (const Vec& a : K.vertices())
    for (const Vec& b : L.vertices()) pts.push_back(a + b);
  return Polytope::hull(pts);
}

/// Hull of λK ∪ μL style combinations: λ1 K1 + ... with non-negative weights.
inline Polytope minkowski_combination(const std::vector<Polytope>& bodies, const std::vector<double>& weights) {
  if (bodies.empty() || bodies.size() != weights.size()) throw InputError("minkowski_combination: size mismatch");
  Polytope acc = bodies[0].scaled(weights[0]);
  for (size_t i = 1; i < bodies.size(); ++i) acc = minkowski_sum(acc, bodies[i].scaled(weights[i]));
  return acc;
}

namespace detail {

/// Minkowski sums over every non-empty subset, indexed by bitmask.
inline std::vector<Polytope> subset_sums(const std::vector<Polytope>& bodies) {
  const size_t m = bodies.size();
  std::vector<Polytope> sums(size_t{1} << m);
  for (size_t S = 1; S < sums.size(); ++S) {
    const int low = std::countr_zero(S);
    const size_t rest = S & (S - 1);
    sums[S] = rest == 0 ? bodies[low] : minkowski_sum(sums[rest], bodies[low]);
  }
  return sums;
}

}  // namespace detail

/// Mixed volume of d bodies in R^d by inclusion-exclusion over subsets.
inline double mixed_volume(const std::vector<Polytope>& bodies) {
  if (bodies.empty()) throw InputError("mixed_volume: no bodies");
  const int d = bodies.front().dim();
  if (static_cast<int>(bodies.size()) != d) throw InputError("mixed_volume: need exactly d bodies");
  for (const Polytope& K : bodies)
    if (K.dim() != d) throw InputError("mixed_volume: dimension mismatch");
  const auto sums = detail::subset_sums(bodies);
  double s = 0;
  for (size_t S = 1; S < sums.size(); ++S) {
    const int sign = ((d - std::popcount(S)) % 2 == 0) ? 1 : -1;
    s += sign * sums[S].volume();
  }
  return s / factorial(d);
}

/// Mixed area measure S(K_1,...,K_{d-1},.) by inclusion-exclusion.
inline SphereMeasure mixed_area_measure(const std::vector<Polytope>& bodies, int d) {
  if (static_cast<int>(bodies.size()) != d - 1) throw InputError("mixed_area_measure: need d-1 bodies");
  for (const Polytope& K : bodies)
    if (K.dim() != d) throw InputError("mixed_area_measure: dimension mismatch");
  SphereMeasure acc(d);
  if (d == 1) {
    acc.add(make_vec({1.0}), 1.0);
    acc.add(make_vec({-1.0}), 1.0);
    return acc;
  }
  const auto sums = detail::subset_sums(bodies);
  double scale = 0;
  for (size_t S = 1; S < sums.size(); ++S) {
    const int sign = ((d - 1 - std::popcount(S)) % 2 == 0) ? 1 : -1;
    const SphereMeasure m = sums[S].area_measure();
    scale = std::max(scale, m.total_mass());
    acc.add(m, sign / factorial(d - 1));
  }
  return acc.merged(tol::direction, 1e-12 * std::max(1.0, scale));
}

/// Integral of the support function of K against a sphere measure.
inline double integrate_support(const Polytope& K, const SphereMeasure& m) {
  return m.integrate([&](const Vec& u) { return K.support(u); });
}

}  // namespace convexfn
