#pragma once

// Shared vocabulary for the convexfn library: small vectors, tolerances and
// the exception hierarchy used by every module.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace convexfn {

/// Small dense vector; ambient dimensions never exceed 4 so storage is inline.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 4, 1>;
using Mat = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Absolute tolerances. Inputs are expected to be normalized to diameter
/// at most 1e3.
namespace tol {
inline constexpr double vertex = 1e-9;     // vertex dedup / dimension detection
inline constexpr double hull = 1e-11;      // point-above-plane test in hulls
inline constexpr double coplanar = 1e-9;   // merging hull triangles into facets
inline constexpr double gradient = 1e-9;   // merging measure atoms
inline constexpr double direction = 1e-8;  // merging sphere-measure atoms
}  // namespace tol

/// Base of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (CLI exit code 3).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A load-bearing hypothesis (class membership, c-bound, boundary
/// condition) could not be certified (CLI exit code 2).
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Geometric failure: empty or unbounded intersections, degenerate bodies
/// where a full-dimensional one is required.
class GeometryError : public Error {
 public:
  using Error::Error;
};

inline Vec make_vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline Vec zeros(int d) { return Vec::Zero(d); }

inline Vec unit(int d, int i) {
  Vec v = Vec::Zero(d);
  v[i] = 1.0;
  return v;
}

/// Lexicographic order with exact comparison; used for canonical vertex lists.
inline bool lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

/// Volume of the k-dimensional unit ball, kappa_k = pi^{k/2} / Gamma(k/2+1).
inline double kappa(int k) {
  if (k < 0) throw InputError("kappa: negative dimension");
  return std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace convexfn
