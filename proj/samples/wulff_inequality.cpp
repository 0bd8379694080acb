// Crystalline integrand: compare Z_phi(u) with the Wulff bound for a few
// random functions, then for the extremal function itself.

#include "convexfn/corpus.hpp"
#include "convexfn/wulff.hpp"

#include <cstdio>

using namespace convexfn;

int main() {
  AffineMax a;
  for (int k = 0; k < 6; ++k) {
    const double t = 2 * std::numbers::pi * k / 6;
    a.slopes.push_back(make_vec({std::cos(t), std::sin(t)}));
    a.intercepts.push_back(1.0);
  }
  const RecFunction phi = RecFunction::affine_max(a);
  std::mt19937_64 rng(3);
  CorpusSpec spec;
  for (int i = 0; i < 4; ++i) {
    const Report r = wulff_inequality_report(phi, random_convz(spec, rng));
    std::printf("random u:  lhs %.6f  rhs %.6f  gap %.3e  %s\n", r.at("lhs"), r.at("rhs"), r.at("gap"), to_string(r.verdict));
  }
  const Report eq = wulff_inequality_report(phi, u_phi(phi));
  std::printf("u_phi:     lhs %.6f  rhs %.6f  gap %.3e  %s\n", eq.at("lhs"), eq.at("rhs"), eq.at("gap"), to_string(eq.verdict));
}
