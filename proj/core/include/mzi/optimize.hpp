#ifndef MZI_OPTIMIZE_HPP
#define MZI_OPTIMIZE_HPP

#include "mzi/params.hpp"
#include "mzi/sensitivity.hpp"

namespace mzi {

struct PhaseOptimum {
  double phi;
  double delta_phi;
};

/*
 * Global minimum of delta-phi over phi in [0, 2*pi): 4096-point coarse scan
 * followed by golden-section refinement of the best bracket.  Ties on the
 * coarse grid resolve to the smallest phi.  Throws all_singular_error when
 * no grid point has a finite sensitivity.
 */
PhaseOptimum optimize_phase(Scheme scheme, const InputParams& params,
                            const LossParams& loss = {});

}  // namespace mzi

#endif
