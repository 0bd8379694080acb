#pragma once

// Piecewise-linear functions of one non-negative variable. Used as densities
// alpha for functional intrinsic volumes and as radial profiles.

#include "convexfn/core.hpp"

#include <algorithm>

namespace convexfn {

/// Continuous piecewise-linear function on [0, inf): linear between knots,
/// constant beyond the last knot. The first knot is 0.
class Profile {
 public:
  Profile() = default;
  Profile(std::vector<double> knots, std::vector<double> values) : knots_(std::move(knots)), values_(std::move(values)) {
    if (knots_.empty() || knots_.size() != values_.size()) throw InputError("profile: knots and values must match");
    if (knots_.front() != 0.0) throw InputError("profile: first knot must be 0");
    for (size_t i = 1; i < knots_.size(); ++i)
      if (!(knots_[i] > knots_[i - 1])) throw InputError("profile: knots must increase");
    for (double v : values_)
      if (!std::isfinite(v)) throw InputError("profile: non-finite value");
  }

  /// s -> max(1 - s/width, 0) scaled by `height`.
  static Profile hat(double width = 1.0, double height = 1.0) { return Profile({0.0, width}, {height, 0.0}); }

  double operator()(double s) const {
    if (s <= knots_.front()) return values_.front();
    if (s >= knots_.back()) return values_.back();
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), s);
    const size_t i = static_cast<size_t>(it - knots_.begin());
    const double w = (s - knots_[i - 1]) / (knots_[i] - knots_[i - 1]);
    return (1 - w) * values_[i - 1] + w * values_[i];
  }

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }

  /// Compact support: the function vanishes beyond the last knot.
  bool compact() const { return !values_.empty() && values_.back() == 0.0; }
  bool nonnegative() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
  }
  double support_radius() const { return knots_.back(); }

 private:
  std::vector<double> knots_{0.0};
  std::vector<double> values_{0.0};
};

}  // namespace convexfn
