#pragma once

// Radially symmetric convex functions x -> psi(|x|) + indicator of R*B^n,
// with psi convex, nondecreasing and piecewise linear.

#include "convexfn/pa_function.hpp"

#include <numbers>

namespace convexfn {

class RadialFunction {
 public:
  RadialFunction() = default;
  RadialFunction(int n, std::vector<double> radii, std::vector<double> values)
      : n_(n), radii_(std::move(radii)), values_(std::move(values)) {
    if (n_ < 1) throw InputError("RadialFunction: dimension must be positive");
    if (radii_.empty() || radii_.size() != values_.size()) throw InputError("RadialFunction: need matching breakpoints");
    if (radii_.front() != 0.0) throw InputError("RadialFunction: first breakpoint must be 0");
    double prev = -kInf;
    for (size_t i = 1; i < radii_.size(); ++i) {
      if (!(radii_[i] > radii_[i - 1])) throw InputError("RadialFunction: breakpoints must increase");
      const double s = slope(i);
      if (s < prev - 1e-12 * std::max(1.0, std::abs(prev))) throw InputError("RadialFunction: profile is not convex");
      if (s < -1e-12) throw InputError("RadialFunction: profile must be nondecreasing");
      prev = s;
    }
  }

  int n() const { return n_; }
  const std::vector<double>& radii() const { return radii_; }
  const std::vector<double>& values() const { return values_; }
  double radius() const { return radii_.back(); }
  size_t segments() const { return radii_.size() - 1; }
  /// Slope of the i-th segment [r_{i-1}, r_i], i >= 1.
  double slope(size_t i) const { return (values_[i] - values_[i - 1]) / (radii_[i] - radii_[i - 1]); }

  double profile(double r) const {
    if (r > radius() * (1 + 1e-12) + 1e-15) return kInf;
    if (radii_.size() == 1 || r <= 0) return values_.front();
    if (r >= radius()) return values_.back();
    const auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
    const size_t i = static_cast<size_t>(it - radii_.begin());
    return values_[i - 1] + slope(i) * (r - radii_[i - 1]);
  }

  double evaluate(const Vec& x) const { return profile(x.norm()); }
  double min_value() const { return values_.front(); }
  double max_value() const { return values_.back(); }

  /// lambda (.) u: radii and values scaled by lambda; lambda = 0 gives the
  /// indicator of the origin.
  RadialFunction epi_scale(double lambda) const {
    if (lambda < 0) throw InputError("epi_scale: negative factor");
    if (lambda == 0) return RadialFunction(n_, {0.0}, {0.0});
    std::vector<double> r = radii_, v = values_;
    for (double& x : r) x *= lambda;
    for (double& x : v) x *= lambda;
    return RadialFunction(n_, r, v);
  }

  RadialFunction plus_constant(double c) const {
    std::vector<double> v = values_;
    for (double& x : v) x += c;
    return RadialFunction(n_, radii_, v);
  }

  /// Polytopal approximant for n <= 2: sites on inscribed regular m-gons at
  /// every breakpoint radius (points +-r for n = 1).
  PAFunction pa_approximant(int m = 128) const {
    if (n_ > 2) throw InputError("pa_approximant: only n <= 2 has a polytopal engine");
    std::vector<Vec> pts{Vec::Zero(n_)};
    std::vector<double> vals{values_.front()};
    for (size_t i = 1; i < radii_.size(); ++i) {
      if (n_ == 1) {
        pts.push_back(make_vec({radii_[i]}));
        pts.push_back(make_vec({-radii_[i]}));
        vals.insert(vals.end(), 2, values_[i]);
        continue;
      }
      for (int k = 0; k < m; ++k) {
        const double a = 2 * std::numbers::pi * k / m;
        pts.push_back(make_vec({radii_[i] * std::cos(a), radii_[i] * std::sin(a)}));
        vals.push_back(values_[i]);
      }
    }
    return PAFunction(pts, vals);
  }

 private:
  int n_ = 1;
  std::vector<double> radii_{0.0};
  std::vector<double> values_{0.0};
};

/// Infimal convolution of radial functions: the profile segments of both
/// arguments merged in order of increasing slope.
inline RadialFunction inf_convolution(const RadialFunction& u, const RadialFunction& v) {
  if (u.n() != v.n()) throw InputError("inf_convolution: dimension mismatch");
  std::vector<std::pair<double, double>> seg;  // (slope, length)
  for (size_t i = 1; i < u.radii().size(); ++i) seg.emplace_back(u.slope(i), u.radii()[i] - u.radii()[i - 1]);
  for (size_t i = 1; i < v.radii().size(); ++i) seg.emplace_back(v.slope(i), v.radii()[i] - v.radii()[i - 1]);
  std::stable_sort(seg.begin(), seg.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> r{0.0}, val{u.values().front() + v.values().front()};
  for (const auto& [s, len] : seg) {
    r.push_back(r.back() + len);
    val.push_back(val.back() + s * len);
  }
  return RadialFunction(u.n(), r, val);
}

struct UtPair {
  RadialFunction exact;
  PAFunction approx;  // only for n <= 2
};

/// t|x| + indicator of the unit ball, exactly and as an m-gon approximant.
inline UtPair make_ut(double t, int n, int m = 128) {
  if (!(t >= 0)) throw InputError("make_ut: t must be non-negative");
  RadialFunction exact(n, {0.0, 1.0}, {0.0, t});
  PAFunction approx = n <= 2 ? exact.pa_approximant(m) : PAFunction();
  return {exact, approx};
}

}  // namespace convexfn
