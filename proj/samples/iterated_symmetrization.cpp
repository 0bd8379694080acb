// Repeated Steiner symmetrization of a random planar function: the
// isoperimetric deficit of the domain goes to zero.

#include "convexfn/corpus.hpp"
#include "convexfn/symmetrization.hpp"

#include <cstdio>

using namespace convexfn;

int main() {
  CorpusSpec spec;
  spec.max_sites = 20;
  const ConvZFunction u = random_convz(spec);
  const IteratedSymmetrization it = iterate_symmetrization(u, 40);
  for (size_t k = 0; k < it.deficits.size(); k += 5) std::printf("step %2zu  deficit %.6f\n", k, it.deficits[k]);

  const ConvZFunction s = steiner_symmetral_fn(u, angle_direction(0.4));
  std::printf("volume before %.12f after %.12f\n", vbar_np1(u), vbar_np1(s));
}
