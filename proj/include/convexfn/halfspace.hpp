#pragma once

// Bounded intersections of closed half-spaces, via a Chebyshev-centre LP and
// polar duality.

#include "convexfn/polytope.hpp"

namespace convexfn {

struct Halfspace {
  Vec normal;
  double offset;
};

namespace detail {

/// Dense two-phase simplex for: maximize c.x subject to A x <= b, x >= 0.
/// Bland's rule on ties. Returns +inf when unbounded, -inf when infeasible.
class SimplexLP {
 public:
  SimplexLP(const Mat& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c)
      : m_(static_cast<int>(b.size())), n_(static_cast<int>(c.size())), B_(m_), N_(n_ + 1), D_(m_ + 2, n_ + 2) {
    D_.setZero();
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < n_; ++j) D_(i, j) = A(i, j);
    for (int i = 0; i < m_; ++i) {
      B_[i] = n_ + i;
      D_(i, n_) = -1;
      D_(i, n_ + 1) = b[i];
    }
    for (int j = 0; j < n_; ++j) {
      N_[j] = j;
      D_(m_, j) = -c[j];
    }
    N_[n_] = -1;
    D_(m_ + 1, n_) = 1;
  }

  double solve(Eigen::VectorXd& x) {
    int r = 0;
    for (int i = 1; i < m_; ++i)
      if (D_(i, n_ + 1) < D_(r, n_ + 1)) r = i;
    if (D_(r, n_ + 1) < -kEps) {
      pivot(r, n_);
      if (!run(1) || D_(m_ + 1, n_ + 1) < -kEps) return -kInf;
      for (int i = 0; i < m_; ++i)
        if (B_[i] == -1) {
          int s = -1;
          for (int j = 0; j <= n_; ++j)
            if (s == -1 || D_(i, j) < D_(i, s) || (D_(i, j) == D_(i, s) && N_[j] < N_[s])) s = j;
          pivot(i, s);
        }
    }
    if (!run(2)) return kInf;
    x = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i < m_; ++i)
      if (B_[i] < n_) x[B_[i]] = D_(i, n_ + 1);
    return D_(m_, n_ + 1);
  }

 private:
  static constexpr double kEps = 1e-11;

  void pivot(int r, int s) {
    const double inv = 1.0 / D_(r, s);
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r) continue;
      const double f = D_(i, s) * inv;
      if (f == 0.0) continue;
      for (int j = 0; j < n_ + 2; ++j)
        if (j != s) D_(i, j) -= D_(r, j) * f;
    }
    for (int j = 0; j < n_ + 2; ++j)
      if (j != s) D_(r, j) *= inv;
    for (int i = 0; i < m_ + 2; ++i)
      if (i != r) D_(i, s) *= -inv;
    D_(r, s) = inv;
    std::swap(B_[r], N_[s]);
  }

  bool run(int phase) {
    const int x = phase == 1 ? m_ + 1 : m_;
    while (true) {
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (phase == 2 && N_[j] == -1) continue;
        if (s == -1 || D_(x, j) < D_(x, s) || (D_(x, j) == D_(x, s) && N_[j] < N_[s])) s = j;
      }
      if (D_(x, s) > -kEps) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (D_(i, s) < kEps) continue;
        if (r == -1) {
          r = i;
          continue;
        }
        const double a = D_(i, n_ + 1) / D_(i, s), b = D_(r, n_ + 1) / D_(r, s);
        if (a < b || (a == b && B_[i] < B_[r])) r = i;
      }
      if (r == -1) return false;
      pivot(r, s);
    }
  }

  int m_, n_;
  std::vector<int> B_, N_;
  Mat D_;
};

}  // namespace detail

/// Largest ball inside the intersection: returns (centre, radius). The
/// radius is capped at `cap` so unbounded regions still produce a point.
inline std::pair<Vec, double> chebyshev_center(const std::vector<Halfspace>& hs, int d, double cap = 1e6) {
  const int m = static_cast<int>(hs.size());
  Mat A = Mat::Zero(m + 1, 2 * d + 1);
  Eigen::VectorXd b(m + 1), c = Eigen::VectorXd::Zero(2 * d + 1);
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < d; ++k) {
      A(i, k) = hs[i].normal[k];
      A(i, d + k) = -hs[i].normal[k];
    }
    A(i, 2 * d) = 1.0;
    b[i] = hs[i].offset;
  }
  A(m, 2 * d) = 1.0;
  b[m] = cap;
  c[2 * d] = 1.0;
  Eigen::VectorXd x;
  const double val = detail::SimplexLP(A, b, c).solve(x);
  if (val == -kInf) throw GeometryError("halfspace_intersection: empty intersection");
  Vec x0(d);
  for (int k = 0; k < d; ++k) x0[k] = x[k] - x[d + k];
  return {x0, x[2 * d]};
}

/// Polytope equal to the intersection of {x : <normal, x> <= offset}.
/// Normals need not be unit; each pair is normalized first.
inline Polytope halfspace_intersection(std::vector<Halfspace> hs, int d) {
  if (d < 1 || d > 3) throw InputError("halfspace_intersection: dimension must be 1, 2 or 3");
  if (hs.empty()) throw GeometryError("halfspace_intersection: unbounded intersection");
  for (Halfspace& h : hs) {
    if (h.normal.size() != d) throw InputError("halfspace_intersection: dimension mismatch");
    const double len = h.normal.norm();
    if (!(len > 0) || !std::isfinite(h.offset)) throw InputError("halfspace_intersection: degenerate halfspace");
    h.normal /= len;
    h.offset /= len;
  }
  if (d == 1) {
    double lo = -kInf, hi = kInf;
    for (const Halfspace& h : hs) {
      if (h.normal[0] > 0)
        hi = std::min(hi, h.offset);
      else
        lo = std::max(lo, -h.offset);
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw GeometryError("halfspace_intersection: unbounded intersection");
    if (lo > hi + tol::vertex) throw GeometryError("halfspace_intersection: empty intersection");
    return Polytope::hull({make_vec({lo}), make_vec({std::max(lo, hi)})});
  }

  Vec x0 = Vec::Zero(d);
  double minoff = kInf;
  for (const Halfspace& h : hs) minoff = std::min(minoff, h.offset);
  if (!(minoff > tol::vertex)) {
    auto [c, r] = chebyshev_center(hs, d);
    if (!(r > tol::vertex)) throw GeometryError("halfspace_intersection: empty intersection");
    x0 = c;
  }
  std::vector<Vec> dual;
  dual.reserve(hs.size());
  for (const Halfspace& h : hs) dual.push_back(h.normal / (h.offset - h.normal.dot(x0)));
  const Polytope Q = Polytope::hull(dual);
  if (!Q.full_dimensional()) throw GeometryError("halfspace_intersection: unbounded intersection");
  std::vector<Vec> verts;
  for (const Facet& f : Q.facets()) {
    if (!(f.offset > 1e-12)) throw GeometryError("halfspace_intersection: unbounded intersection");
    verts.push_back(x0 + f.normal / f.offset);
  }
  return Polytope::hull(verts);
}

}  // namespace convexfn
