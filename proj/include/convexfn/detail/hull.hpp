#pragma once

// Low-level hull kernels for d <= 3. All routines return indices into the
// input so that output vertices are bit-identical copies of input points.

#include "convexfn/core.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_map>

namespace convexfn::detail {

/// Orthonormal frame of the affine hull of a point set.
struct AffineFrame {
  int dim = -1;  // intrinsic dimension, -1 for an empty set
  Vec origin;
  std::vector<Vec> basis;

  Vec local(const Vec& x) const {
    Vec s(static_cast<Eigen::Index>(basis.size()));
    for (size_t i = 0; i < basis.size(); ++i) s[static_cast<Eigen::Index>(i)] = basis[i].dot(x - origin);
    return s;
  }
  Vec global(const Vec& s) const {
    Vec x = origin;
    for (size_t i = 0; i < basis.size(); ++i) x += s[static_cast<Eigen::Index>(i)] * basis[i];
    return x;
  }
  double distance(const Vec& x) const { return (global(local(x)) - x).norm(); }
};

/// Greedy farthest-point construction of the affine frame; a direction is
/// accepted only if some point sticks out of the current flat by more than
/// `tolerance`.
inline AffineFrame affine_frame(const std::vector<Vec>& pts, double tolerance) {
  AffineFrame fr;
  if (pts.empty()) return fr;
  const int d = static_cast<int>(pts.front().size());
  // Start from the lexicographically smallest point for reproducibility.
  size_t o = 0;
  for (size_t i = 1; i < pts.size(); ++i)
    if (lex_less(pts[i], pts[o])) o = i;
  fr.origin = pts[o];
  fr.dim = 0;
  while (fr.dim < d) {
    double best = tolerance;
    Vec best_r;
    for (const Vec& p : pts) {
      Vec r = p - fr.origin;
      for (const Vec& b : fr.basis) r -= b.dot(r) * b;
      const double nr = r.norm();
      if (nr > best) {
        best = nr;
        best_r = r;
      }
    }
    if (best_r.size() == 0) break;
    // Re-orthogonalize once more for stability.
    Vec b = best_r / best;
    for (const Vec& e : fr.basis) b -= e.dot(b) * e;
    fr.basis.push_back(b.normalized());
    ++fr.dim;
  }
  return fr;
}

inline double cross2(const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return (a - o).x() * (b - o).y() - (a - o).y() * (b - o).x();
}

/// Andrew's monotone chain. Returns counter-clockwise hull indices with
/// collinear points removed. Requires at least three non-collinear points for
/// a proper polygon; degenerate input yields the extreme points only.
inline std::vector<int> hull2d(const std::vector<Eigen::Vector2d>& pts, double eps) {
  std::vector<int> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (pts[a].x() != pts[b].x()) return pts[a].x() < pts[b].x();
    return pts[a].y() < pts[b].y();
  });
  if (idx.size() < 3) return idx;
  std::vector<int> h(2 * idx.size());
  size_t k = 0;
  for (int i : idx) {
    while (k >= 2 && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= eps) --k;
    h[k++] = i;
  }
  for (size_t t = idx.size() - 1, lo = k + 1; t-- > 0;) {
    const int i = idx[t];
    while (k >= lo && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= eps) --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  return h;
}

/// Quickhull in R^3 for point sets known to be full-dimensional. Returns
/// outward-oriented triangles (counter-clockwise seen from outside).
class QuickHull3 {
 public:
  QuickHull3(const std::vector<Eigen::Vector3d>& pts, double eps) : pts_(pts), eps_(eps) {}

  std::vector<std::array<int, 3>> run() {
    if (!init_simplex()) throw GeometryError("quickhull: input is not full-dimensional");
    std::deque<int> work;
    for (int f = 0; f < static_cast<int>(faces_.size()); ++f)
      if (!faces_[f].outside.empty()) work.push_back(f);
    while (!work.empty()) {
      const int f = work.front();
      work.pop_front();
      if (!faces_[f].alive || faces_[f].outside.empty()) continue;
      add_point(f, work);
      if (faces_[f].alive && !faces_[f].outside.empty()) work.push_back(f);
    }
    std::vector<std::array<int, 3>> tris;
    for (const Face& f : faces_)
      if (f.alive) tris.push_back({f.v[0], f.v[1], f.v[2]});
    return tris;
  }

 private:
  struct Face {
    std::array<int, 3> v{};
    std::array<int, 3> nb{-1, -1, -1};
    Eigen::Vector3d n;
    double off = 0;
    bool alive = true;
    int mark = 0;
    std::vector<int> outside;
  };

  double dist(const Face& f, int p) const { return f.n.dot(pts_[p]) - f.off; }

  bool make_plane(int a, int b, int c, Eigen::Vector3d& n, double& off) const {
    n = (pts_[b] - pts_[a]).cross(pts_[c] - pts_[a]);
    const double len = n.norm();
    if (!(len > 0.0)) return false;
    n /= len;
    off = (n.dot(pts_[a]) + n.dot(pts_[b]) + n.dot(pts_[c])) / 3.0;
    return true;
  }

  bool init_simplex() {
    const int np = static_cast<int>(pts_.size());
    if (np < 4) return false;
    int i0 = 0, i1 = 0;
    for (int i = 1; i < np; ++i) {
      if (pts_[i].x() < pts_[i0].x()) i0 = i;
    }
    double best = -1;
    for (int i = 0; i < np; ++i) {
      const double dd = (pts_[i] - pts_[i0]).squaredNorm();
      if (dd > best) best = dd, i1 = i;
    }
    const Eigen::Vector3d dir = (pts_[i1] - pts_[i0]).normalized();
    int i2 = -1;
    best = 0;
    for (int i = 0; i < np; ++i) {
      Eigen::Vector3d r = pts_[i] - pts_[i0];
      r -= dir.dot(r) * dir;
      if (r.norm() > best) best = r.norm(), i2 = i;
    }
    if (i2 < 0) return false;
    Eigen::Vector3d n;
    double off;
    if (!make_plane(i0, i1, i2, n, off)) return false;
    int i3 = -1;
    best = 0;
    for (int i = 0; i < np; ++i) {
      const double dd = std::abs(n.dot(pts_[i]) - off);
      if (dd > best) best = dd, i3 = i;
    }
    if (i3 < 0 || best <= eps_) return false;
    int a = i0, b = i1, c = i2;
    if (n.dot(pts_[i3]) - off > 0) std::swap(b, c);
    const int d = i3;
    const std::array<std::array<int, 3>, 4> tv = {{{a, b, c}, {a, d, b}, {b, d, c}, {c, d, a}}};
    for (const auto& t : tv) {
      Face f;
      f.v = t;
      if (!make_plane(t[0], t[1], t[2], f.n, f.off)) return false;
      faces_.push_back(f);
    }
    link_all();
    for (int i = 0; i < np; ++i) {
      if (i == a || i == b || i == c || i == d) continue;
      assign(i, {0, 1, 2, 3});
    }
    return true;
  }

  void link_all() {
    std::unordered_map<long long, std::pair<int, int>> edge;
    const long long np = static_cast<long long>(pts_.size());
    for (int f = 0; f < static_cast<int>(faces_.size()); ++f)
      for (int e = 0; e < 3; ++e) edge[faces_[f].v[e] * np + faces_[f].v[(e + 1) % 3]] = {f, e};
    for (int f = 0; f < static_cast<int>(faces_.size()); ++f)
      for (int e = 0; e < 3; ++e) faces_[f].nb[e] = edge.at(faces_[f].v[(e + 1) % 3] * np + faces_[f].v[e]).first;
  }

  void assign(int p, const std::vector<int>& candidates) {
    int best_f = -1;
    double best = eps_;
    for (int f : candidates) {
      const double dd = dist(faces_[f], p);
      if (dd > best) {
        best = dd;
        best_f = f;
      }
    }
    if (best_f >= 0) faces_[best_f].outside.push_back(p);
  }

  void add_point(int f0, std::deque<int>& work) {
    Face& seed = faces_[f0];
    int p = seed.outside.front();
    double best = dist(seed, p);
    for (int q : seed.outside)
      if (dist(seed, q) > best) best = dist(seed, q), p = q;

    ++mark_;
    std::vector<int> visible{f0};
    faces_[f0].mark = mark_;
    std::vector<std::pair<int, int>> horizon;  // (visible face, edge index)
    for (size_t k = 0; k < visible.size(); ++k) {
      const int f = visible[k];
      for (int e = 0; e < 3; ++e) {
        const int g = faces_[f].nb[e];
        if (faces_[g].mark == mark_) continue;
        if (dist(faces_[g], p) > eps_) {
          faces_[g].mark = mark_;
          visible.push_back(g);
        } else {
          horizon.emplace_back(f, e);
        }
      }
    }
    // A horizon edge whose far face was later marked visible is interior.
    std::erase_if(horizon, [&](const auto& h) { return faces_[faces_[h.first].nb[h.second]].mark == mark_; });

    // Validate the horizon as a simple cycle before mutating anything.
    std::unordered_map<int, int> start_of, end_of;
    std::vector<Face> fresh;
    fresh.reserve(horizon.size());
    for (size_t k = 0; k < horizon.size(); ++k) {
      const Face& f = faces_[horizon[k].first];
      const int a = f.v[horizon[k].second], b = f.v[(horizon[k].second + 1) % 3];
      if (start_of.count(a) || end_of.count(b)) return drop_point(f0, p);
      start_of[a] = static_cast<int>(k);
      end_of[b] = static_cast<int>(k);
      Face nf;
      nf.v = {a, b, p};
      if (!make_plane(a, b, p, nf.n, nf.off)) return drop_point(f0, p);
      fresh.push_back(nf);
    }
    for (const auto& [a, k] : start_of)
      if (!end_of.count(a)) return drop_point(f0, p);

    const int base = static_cast<int>(faces_.size());
    for (size_t k = 0; k < horizon.size(); ++k) {
      const auto [fv, e] = horizon[k];
      const int g = faces_[fv].nb[e];
      Face& nf = fresh[k];
      nf.nb[0] = g;
      nf.nb[1] = base + start_of.at(nf.v[1]);
      nf.nb[2] = base + end_of.at(nf.v[0]);
      for (int ge = 0; ge < 3; ++ge)
        if (faces_[g].nb[ge] == fv) faces_[g].nb[ge] = base + static_cast<int>(k);
    }
    std::vector<int> orphans;
    for (int f : visible) {
      faces_[f].alive = false;
      for (int q : faces_[f].outside)
        if (q != p) orphans.push_back(q);
      faces_[f].outside.clear();
    }
    std::vector<int> cand;
    for (auto& nf : fresh) {
      cand.push_back(static_cast<int>(faces_.size()));
      faces_.push_back(std::move(nf));
    }
    for (int q : orphans) assign(q, cand);
    for (int f : cand)
      if (!faces_[f].outside.empty()) work.push_back(f);
  }

  void drop_point(int f0, int p) { std::erase(faces_[f0].outside, p); }

  const std::vector<Eigen::Vector3d>& pts_;
  double eps_;
  std::vector<Face> faces_;
  int mark_ = 0;
};

/// Points of a triangulated hull boundary that are genuine vertices: points
/// touching at least three coplanar-merged facets with independent normals.
inline std::vector<int> extreme_points3(const std::vector<Eigen::Vector3d>& pts,
                                        const std::vector<std::array<int, 3>>& tris, double coplanar) {
  const size_t nt = tris.size();
  std::vector<Eigen::Vector3d> avec(nt), tn(nt);
  for (size_t t = 0; t < nt; ++t) {
    avec[t] = 0.5 * (pts[tris[t][1]] - pts[tris[t][0]]).cross(pts[tris[t][2]] - pts[tris[t][0]]);
    tn[t] = avec[t].normalized();
  }
  std::map<std::pair<int, int>, std::vector<int>> edge_tris;
  for (size_t t = 0; t < nt; ++t)
    for (int e = 0; e < 3; ++e) {
      const int a = tris[t][e], b = tris[t][(e + 1) % 3];
      edge_tris[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(t));
    }
  std::vector<int> parent(nt);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [e, ts] : edge_tris) {
    if (ts.size() != 2) continue;
    const int s = ts[0], t = ts[1];
    bool flat = tn[s].dot(tn[t]) > 0;
    for (int i : tris[t]) flat = flat && std::abs(tn[s].dot(pts[i] - pts[tris[s][0]])) <= coplanar;
    for (int i : tris[s]) flat = flat && std::abs(tn[t].dot(pts[i] - pts[tris[t][0]])) <= coplanar;
    if (flat) parent[find(s)] = find(t);
  }
  std::vector<Eigen::Vector3d> gn(nt, Eigen::Vector3d::Zero());
  for (size_t t = 0; t < nt; ++t) gn[find(static_cast<int>(t))] += avec[t];
  std::map<int, std::vector<int>> groups_of;
  for (size_t t = 0; t < nt; ++t)
    for (int i : tris[t]) groups_of[i].push_back(find(static_cast<int>(t)));
  std::vector<int> out;
  for (auto& [i, g] : groups_of) {
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    if (g.size() < 3) continue;
    Eigen::MatrixXd N(g.size(), 3);
    for (size_t r = 0; r < g.size(); ++r) N.row(r) = gn[g[r]].normalized().transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(N);
    if (svd.singularValues()[2] > 1e-7) out.push_back(i);
  }
  return out;
}

}  // namespace convexfn::detail
