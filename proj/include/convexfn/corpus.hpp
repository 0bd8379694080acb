#pragma once

// Random members of Conv_0 for the randomized suites.

#include "convexfn/functionals.hpp"

#include <random>

namespace convexfn {

enum class BoundaryCondition { Free, Vanishing, Constant };

struct CorpusSpec {
  int n = 2;
  int min_sites = 3;
  int max_sites = 40;
  double value_lo = -1.0;
  double value_hi = -0.05;
  BoundaryCondition boundary = BoundaryCondition::Free;
  std::uint64_t seed = 0;
};

/// splitmix64 step; per-trial seeds are derive_seed(base, trial).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

namespace detail {

inline bool on_domain_boundary(const Polytope& D, const Vec& p) {
  for (const Facet& f : D.facets())
    if (std::abs(f.normal.dot(p) - f.offset) <= 1e-9) return true;
  return false;
}

}  // namespace detail

/// Sites uniform in [-1,1]^n, values uniform in the value range. Boundary
/// sites are set to 0 (vanishing) or to one shared value (constant).
inline ConvZFunction random_convz(const CorpusSpec& spec, std::mt19937_64& rng) {
  if (spec.n < 1 || spec.n > 2) throw InputError("random_convz: n must be 1 or 2");
  if (spec.min_sites < spec.n + 1 || spec.max_sites < spec.min_sites)
    throw InputError("random_convz: bad site range");
  if (!(spec.value_lo <= spec.value_hi) || spec.value_hi > 0) throw InputError("random_convz: bad value range");
  std::uniform_real_distribution<double> X(-1.0, 1.0), V(spec.value_lo, spec.value_hi);
  std::uniform_int_distribution<int> N(spec.min_sites, spec.max_sites);
  for (int attempt = 0; attempt < 100; ++attempt) {
    const int count = N(rng);
    std::vector<Vec> pts;
    std::vector<double> vals;
    for (int i = 0; i < count; ++i) {
      Vec p(spec.n);
      for (int k = 0; k < spec.n; ++k) p[k] = X(rng);
      pts.push_back(p);
      vals.push_back(V(rng));
    }
    const Polytope D = Polytope::hull(pts);
    if (!D.full_dimensional() || D.volume() < 1e-3) continue;
    if (spec.boundary != BoundaryCondition::Free) {
      const double c = spec.boundary == BoundaryCondition::Vanishing ? 0.0 : V(rng);
      bool interior = false;
      for (size_t i = 0; i < pts.size(); ++i) {
        if (detail::on_domain_boundary(D, pts[i]))
          vals[i] = c;
        else
          interior = true;
      }
      if (spec.boundary == BoundaryCondition::Vanishing && !interior) continue;
    }
    ConvZFunction u{PAFunction(pts, vals)};
    if (spec.boundary == BoundaryCondition::Vanishing && boundary_max_abs(u.fn()) > 1e-9) continue;
    if (spec.boundary == BoundaryCondition::Constant && boundary_spread(u.fn()) > 1e-9) continue;
    return u;
  }
  throw GeometryError("random_convz: retries exhausted");
}

inline ConvZFunction random_convz(const CorpusSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  return random_convz(spec, rng);
}

}  // namespace convexfn
