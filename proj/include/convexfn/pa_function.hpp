#pragma once

// Piecewise-affine convex functions with compact polytopal domain, stored as
// the lower convex hull of finitely many lifted sites.

#include "convexfn/polytope.hpp"

#include <optional>

namespace convexfn {

/// Maximal region of linearity. When the domain is lower-dimensional the
/// gradient, intercept and centroid are expressed in the domain frame.
struct Cell {
  std::vector<int> sites;
  Vec gradient;
  double intercept = 0;
  double volume = 0;
  Vec centroid;

  double value(const Vec& x) const { return gradient.dot(x) + intercept; }
};

class PAFunction {
 public:
  PAFunction() = default;

  /// Lower hull of the lifted sites (points[i], values[i]). Coincident points
  /// keep the smaller value.
  PAFunction(std::vector<Vec> points, std::vector<double> values) {
    if (points.empty() || points.size() != values.size()) throw InputError("PAFunction: need matching non-empty sites");
    n_ = static_cast<int>(points.front().size());
    if (n_ < 1 || n_ > 2) throw InputError("PAFunction: domain dimension must be 1 or 2");
    for (size_t i = 0; i < points.size(); ++i) {
      if (points[i].size() != n_) throw InputError("PAFunction: mixed dimensions");
      if (!points[i].allFinite() || !std::isfinite(values[i])) throw InputError("PAFunction: non-finite site");
    }
    dedup(points, values);
    frame_ = detail::affine_frame(points, tol::vertex);
    if (frame_.dim == n_)
      build_full(points, values);
    else
      build_flat(points, values);
    domain_ = Polytope::hull(points_);
  }

  /// c + indicator of K.
  static PAFunction indicator(const Polytope& K, double c = 0.0) {
    return PAFunction(K.vertices(), std::vector<double>(K.vertices().size(), c));
  }

  int n() const { return n_; }
  int domain_dim() const { return frame_.dim; }
  bool full_domain() const { return frame_.dim == n_; }
  const std::vector<Vec>& points() const { return points_; }
  const std::vector<double>& values() const { return values_; }
  const Polytope& domain() const { return domain_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const detail::AffineFrame& frame() const { return frame_; }
  /// Pairs of site indices joined by an edge of the lifted lower hull.
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }

  double evaluate(const Vec& x) const {
    if (x.size() != n_) throw InputError("evaluate: dimension mismatch");
    if (frame_.dim == 0) return (x - points_[0]).norm() <= 1e-9 ? values_[0] : kInf;
    if (!domain_.contains(x, 1e-9)) return kInf;
    const Vec y = full_domain() ? x : frame_.local(x);
    double v = -kInf;
    for (const Cell& c : cells_) v = std::max(v, c.value(y));
    return v;
  }

  double min_value() const { return *std::min_element(values_.begin(), values_.end()); }
  double max_value() const { return *std::max_element(values_.begin(), values_.end()); }

  /// Integral of u over its domain with respect to the Lebesgue measure of
  /// the affine hull of the domain (exact, cell by cell).
  double relative_integral() const {
    if (frame_.dim == 0) return values_[0];
    double s = 0;
    for (const Cell& c : cells_) s += c.volume * c.value(c.centroid);
    return s;
  }

  /// Integral against n-dimensional Lebesgue measure; 0 for flat domains.
  double integral() const { return full_domain() ? relative_integral() : 0.0; }

  PAFunction plus_constant(double c) const {
    std::vector<double> v = values_;
    for (double& x : v) x += c;
    return PAFunction(points_, v);
  }

  /// x -> u(x - shift).
  PAFunction translated(const Vec& shift) const {
    std::vector<Vec> p = points_;
    for (Vec& x : p) x += shift;
    return PAFunction(p, values_);
  }

  /// Site value if x is (within 1e-9) one of the retained sites.
  std::optional<double> site_value(const Vec& x) const {
    for (size_t i = 0; i < points_.size(); ++i)
      if ((points_[i] - x).norm() <= 1e-9) return values_[i];
    return std::nullopt;
  }

 private:
  static void dedup(std::vector<Vec>& points, std::vector<double>& values) {
    std::vector<size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return lex_less(points[a], points[b]); });
    std::vector<Vec> p;
    std::vector<double> v;
    for (size_t i : order) {
      bool merged = false;
      for (size_t j = p.size(); j-- > 0;) {
        if (std::abs(p[j][0] - points[i][0]) > tol::vertex) break;
        if ((p[j] - points[i]).norm() <= tol::vertex) {
          v[j] = std::min(v[j], values[i]);
          merged = true;
          break;
        }
      }
      if (!merged) {
        p.push_back(points[i]);
        v.push_back(values[i]);
      }
    }
    points = std::move(p);
    values = std::move(v);
  }

  void build_full(const std::vector<Vec>& points, const std::vector<double>& values) {
    const size_t N = points.size();
    const double vmin = *std::min_element(values.begin(), values.end());
    const double vmax = *std::max_element(values.begin(), values.end());
    const double top = vmax + 1.0 + (vmax - vmin);
    std::vector<Vec> lifted;
    lifted.reserve(2 * N);
    for (size_t i = 0; i < N; ++i) {
      Vec q(n_ + 1);
      q.head(n_) = points[i];
      q[n_] = values[i];
      lifted.push_back(q);
    }
    for (size_t i = 0; i < N; ++i) {
      Vec q(n_ + 1);
      q.head(n_) = points[i];
      q[n_] = top;
      lifted.push_back(q);
    }
    const Polytope H = Polytope::hull(lifted);
    std::vector<int> site_of(H.vertices().size(), -1);
    for (size_t r = 0; r < H.vertices().size(); ++r) {
      if (H.source()[r] >= static_cast<int>(N)) continue;
      site_of[r] = static_cast<int>(points_.size());
      points_.push_back(points[H.source()[r]]);
      values_.push_back(values[H.source()[r]]);
    }
    for (const Facet& f : H.facets()) {
      const double nz = f.normal[n_];
      if (!(nz < -1e-9)) continue;
      Cell c;
      std::vector<Vec> proj;
      for (int r : f.vertices) {
        if (site_of[r] < 0) throw GeometryError("PAFunction: lower facet touches an auxiliary point");
        c.sites.push_back(site_of[r]);
        proj.push_back(points_[site_of[r]]);
      }
      c.gradient = f.normal.head(n_) / (-nz);
      c.intercept = f.offset / nz;
      const Polytope cell = Polytope::hull(proj);
      c.volume = cell.volume();
      c.centroid = cell.centroid();
      cells_.push_back(std::move(c));
    }
    for (const auto& e : H.edges())
      if (site_of[e[0]] >= 0 && site_of[e[1]] >= 0) edges_.push_back({site_of[e[0]], site_of[e[1]]});
  }

  void build_flat(const std::vector<Vec>& points, const std::vector<double>& values) {
    if (frame_.dim == 0) {
      points_.push_back(points[0]);
      values_.push_back(*std::min_element(values.begin(), values.end()));
      return;
    }
    // One-dimensional domain: lower hull of (s, value) in the frame coordinate.
    std::vector<std::pair<double, int>> order;
    for (size_t i = 0; i < points.size(); ++i) order.emplace_back(frame_.local(points[i])[0], static_cast<int>(i));
    std::sort(order.begin(), order.end());
    std::vector<int> h;
    auto cross = [&](int o, int a, int b) {
      const double so = frame_.local(points[o])[0], sa = frame_.local(points[a])[0], sb = frame_.local(points[b])[0];
      return (sa - so) * (values[b] - values[o]) - (values[a] - values[o]) * (sb - so);
    };
    for (const auto& [s, i] : order) {
      while (h.size() >= 2 && cross(h[h.size() - 2], h.back(), i) <= 1e-14) h.pop_back();
      h.push_back(i);
    }
    for (int i : h) {
      points_.push_back(points[i]);
      values_.push_back(values[i]);
    }
    for (size_t k = 0; k + 1 < h.size(); ++k) {
      const double s0 = frame_.local(points_[k])[0], s1 = frame_.local(points_[k + 1])[0];
      Cell c;
      c.sites = {static_cast<int>(k), static_cast<int>(k + 1)};
      const double g = (values_[k + 1] - values_[k]) / (s1 - s0);
      c.gradient = make_vec({g});
      c.intercept = values_[k] - g * s0;
      c.volume = s1 - s0;
      c.centroid = make_vec({0.5 * (s0 + s1)});
      cells_.push_back(std::move(c));
      edges_.push_back({static_cast<int>(k), static_cast<int>(k + 1)});
    }
  }

  int n_ = 0;
  detail::AffineFrame frame_;
  std::vector<Vec> points_;
  std::vector<double> values_;
  std::vector<Cell> cells_;
  std::vector<std::array<int, 2>> edges_;
  Polytope domain_;
};

/// PAFunction certified to take only non-positive values.
class ConvZFunction {
 public:
  ConvZFunction() = default;
  explicit ConvZFunction(PAFunction u) : u_(std::move(u)) {
    if (u_.max_value() > kTolerance)
      throw HypothesisError("ConvZFunction: maximum value " + std::to_string(u_.max_value()) + " is positive");
  }
  ConvZFunction(std::vector<Vec> points, std::vector<double> values)
      : ConvZFunction(PAFunction(std::move(points), std::move(values))) {}

  static constexpr double kTolerance = 1e-12;

  const PAFunction& fn() const { return u_; }
  operator const PAFunction&() const { return u_; }
  int n() const { return u_.n(); }
  double evaluate(const Vec& x) const { return u_.evaluate(x); }

 private:
  PAFunction u_;
};

}  // namespace convexfn
