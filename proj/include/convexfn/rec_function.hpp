#pragma once

// Integrands with a recession function: maxima of affine functions, compactly
// supported radial profiles, and their sums.

#include "convexfn/profile.hpp"

namespace convexfn {

/// x -> max_i <slopes[i], x> + intercepts[i].
struct AffineMax {
  std::vector<Vec> slopes;
  std::vector<double> intercepts;

  int n() const { return slopes.empty() ? 0 : static_cast<int>(slopes.front().size()); }

  double operator()(const Vec& x) const {
    double v = -kInf;
    for (size_t i = 0; i < slopes.size(); ++i) v = std::max(v, slopes[i].dot(x) + intercepts[i]);
    return v;
  }

  /// Recession function max_i <slopes[i], z>.
  double recession(const Vec& z) const {
    double v = -kInf;
    for (const Vec& a : slopes) v = std::max(v, a.dot(z));
    return v;
  }

  void validate() const {
    if (slopes.empty() || slopes.size() != intercepts.size()) throw InputError("AffineMax: need matching non-empty pieces");
    for (size_t i = 0; i < slopes.size(); ++i) {
      if (slopes[i].size() != slopes[0].size()) throw InputError("AffineMax: mixed dimensions");
      if (!slopes[i].allFinite() || !std::isfinite(intercepts[i])) throw InputError("AffineMax: non-finite piece");
    }
  }
};

class RecFunction {
 public:
  enum class Kind { AffineMax, RadialCc, Sum };

  RecFunction() = default;

  static RecFunction affine_max(AffineMax a) {
    a.validate();
    RecFunction f;
    f.kind_ = Kind::AffineMax;
    f.n_ = a.n();
    f.affine_ = std::move(a);
    return f;
  }

  /// x -> alpha(|x|) with alpha compactly supported.
  static RecFunction radial(int n, Profile alpha) {
    if (!alpha.compact()) throw InputError("RecFunction: radial profile must vanish beyond its last knot");
    RecFunction f;
    f.kind_ = Kind::RadialCc;
    f.n_ = n;
    f.alpha_ = std::move(alpha);
    return f;
  }

  static RecFunction sum(AffineMax a, Profile alpha) {
    a.validate();
    if (!alpha.compact()) throw InputError("RecFunction: radial profile must vanish beyond its last knot");
    RecFunction f;
    f.kind_ = Kind::Sum;
    f.n_ = a.n();
    f.affine_ = std::move(a);
    f.alpha_ = std::move(alpha);
    return f;
  }

  Kind kind() const { return kind_; }
  int n() const { return n_; }
  bool has_affine() const { return kind_ != Kind::RadialCc; }
  bool has_radial() const { return kind_ != Kind::AffineMax; }
  const AffineMax& affine() const { return affine_; }
  const Profile& alpha() const { return alpha_; }

  double operator()(const Vec& x) const {
    double v = 0;
    if (has_affine()) v += affine_(x);
    if (has_radial()) v += alpha_(x.norm());
    return v;
  }

  double recession(const Vec& z) const { return has_affine() ? affine_.recession(z) : 0.0; }

 private:
  Kind kind_ = Kind::RadialCc;
  int n_ = 0;
  AffineMax affine_;
  Profile alpha_;
};

}  // namespace convexfn
