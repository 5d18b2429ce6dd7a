#ifndef MZI_BOUNDS_HPP
#define MZI_BOUNDS_HPP

#include "mzi/moments.hpp"
#include "mzi/params.hpp"

namespace mzi {

struct Bounds {
  double qfi;
  double qcrb;  // 1/sqrt(qfi)
  double snl;   // 1/sqrt(n_total)
  double hl;    // 1/n_total
  double n_total;
};

/* Quantum Fisher information of the pure two-mode state just before the
 * second beam splitter. */
double qfi(const InputParams& params);

Bounds benchmark_limits(const InputParams& params);

namespace detail {
double qfi_from_moments(const Moments& g);
}

}  // namespace mzi

#endif
