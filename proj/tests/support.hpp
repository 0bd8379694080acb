#pragma once

// Shared helpers for the test binaries.

#include "convexfn/core.hpp"

#include <random>

namespace testing_support {

using convexfn::Vec;

inline std::vector<Vec> random_points(std::mt19937_64& rng, int d, int count, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> U(lo, hi);
  std::vector<Vec> pts;
  for (int i = 0; i < count; ++i) {
    Vec p(d);
    for (int k = 0; k < d; ++k) p[k] = U(rng);
    pts.push_back(p);
  }
  return pts;
}

inline std::vector<Vec> cube_corners(double lo, double hi) {
  std::vector<Vec> pts;
  for (int m = 0; m < 8; ++m) pts.push_back(convexfn::make_vec({m & 1 ? hi : lo, m & 2 ? hi : lo, m & 4 ? hi : lo}));
  return pts;
}

inline std::vector<Vec> square_corners(double lo, double hi) {
  return {convexfn::make_vec({lo, lo}), convexfn::make_vec({hi, lo}), convexfn::make_vec({hi, hi}),
          convexfn::make_vec({lo, hi})};
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

}  // namespace testing_support
