#pragma once

// Finitely supported measures on R^n and on spheres.

#include "convexfn/core.hpp"

#include <algorithm>
#include <numeric>

namespace convexfn {

struct Atom {
  Vec point;
  double mass = 0;
};

/// List of weighted points. Used both for gradient push-forwards (points in
/// R^n) and for measures on the unit sphere (points are unit directions).
class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  explicit AtomicMeasure(int dim) : dim_(dim) {}
  AtomicMeasure(int dim, std::vector<Atom> atoms) : dim_(dim), atoms_(std::move(atoms)) {}

  int dim() const { return dim_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  size_t size() const { return atoms_.size(); }

  void add(const Vec& point, double mass) { atoms_.push_back({point, mass}); }
  void add(const AtomicMeasure& other, double coeff = 1.0) {
    for (const Atom& a : other.atoms_) atoms_.push_back({a.point, coeff * a.mass});
  }

  double total_mass() const {
    double s = 0;
    for (const Atom& a : atoms_) s += a.mass;
    return s;
  }

  double total_variation() const {
    double s = 0;
    for (const Atom& a : atoms_) s += std::abs(a.mass);
    return s;
  }

  /// Sum of mass times location.
  Vec first_moment() const {
    Vec s = Vec::Zero(dim_);
    for (const Atom& a : atoms_) s += a.mass * a.point;
    return s;
  }

  /// Sum of f(atom) * mass. Throws if f is not finite on a charged atom.
  template <class F>
  double integrate(F&& f) const {
    double s = 0;
    for (const Atom& a : atoms_) {
      if (a.mass == 0.0) continue;
      const double v = f(a.point);
      if (!std::isfinite(v)) throw InputError("integrate: integrand not finite on an atom");
      s += v * a.mass;
    }
    return s;
  }

  /// Merges atoms closer than `tolerance` and drops atoms whose mass is at
  /// most `drop` in absolute value.
  AtomicMeasure merged(double tolerance, double drop = 0.0) const {
    std::vector<size_t> order(atoms_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      const double xa = atoms_[a].point[0], xb = atoms_[b].point[0];
      if (xa != xb) return xa < xb;
      return lex_less(atoms_[a].point, atoms_[b].point);
    });
    std::vector<char> used(atoms_.size(), 0);
    AtomicMeasure out(dim_);
    for (size_t ii = 0; ii < order.size(); ++ii) {
      const size_t i = order[ii];
      if (used[i]) continue;
      used[i] = 1;
      double m = atoms_[i].mass;
      for (size_t jj = ii + 1; jj < order.size(); ++jj) {
        const size_t j = order[jj];
        if (atoms_[j].point[0] - atoms_[i].point[0] > tolerance) break;
        if (!used[j] && (atoms_[j].point - atoms_[i].point).norm() <= tolerance) {
          used[j] = 1;
          m += atoms_[j].mass;
        }
      }
      if (std::abs(m) > drop) out.add(atoms_[i].point, m);
    }
    return out;
  }

  /// Mass of atoms within `tolerance` of `point`.
  double mass_at(const Vec& point, double tolerance) const {
    double s = 0;
    for (const Atom& a : atoms_)
      if ((a.point - point).norm() <= tolerance) s += a.mass;
    return s;
  }

 private:
  int dim_ = 0;
  std::vector<Atom> atoms_;
};

/// Measures on the unit sphere share the atomic representation.
using SphereMeasure = AtomicMeasure;

/// Largest atom-wise discrepancy between two measures after merging, found
/// by matching each atom of either measure against the other.
inline double measure_distance(const AtomicMeasure& a, const AtomicMeasure& b, double tolerance) {
  double worst = 0;
  for (const Atom& x : a.atoms()) worst = std::max(worst, std::abs(a.mass_at(x.point, tolerance) - b.mass_at(x.point, tolerance)));
  for (const Atom& x : b.atoms()) worst = std::max(worst, std::abs(a.mass_at(x.point, tolerance) - b.mass_at(x.point, tolerance)));
  return worst;
}

}  // namespace convexfn
