// Cone functions with slope t and density max(1 - s, 0): the second
// functional intrinsic volume is not Brunn-Minkowski along inf-convolutions.

#include "convexfn/harness.hpp"

#include <cstdio>

using namespace convexfn;

int main() {
  const Report r = counterexample_bm(2, ramp_density(), 0.0, 0.5);
  std::printf("Z(u_0 box u_1/2)      = %.12f\n", r.at("lhs"));
  std::printf("(Z(u_0)^1/2 + Z(u_1/2)^1/2)^2 = %.12f\n", r.at("rhs"));
  std::printf("polygonal path        = %.12f (rel. error %.2e)\n", r.at("polygonal_value"), r.at("polygonal_error"));

  const Report iso = counterexample_iso(1, 2, ramp_density(), halving_sequence(10));
  for (int i = 0; i < static_cast<int>(iso.at("members")); ++i)
    std::printf("lambda %-10.6f Z_1 %.6f\n", iso.at("lambda_" + std::to_string(i)), iso.at("z_j_" + std::to_string(i)));
}
