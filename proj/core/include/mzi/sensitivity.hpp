#ifndef MZI_SENSITIVITY_HPP
#define MZI_SENSITIVITY_HPP

#include "mzi/moments.hpp"
#include "mzi/params.hpp"

namespace mzi {

/* Detector statistics of the chosen observable at working point phi. */
struct SignalStats {
  double mean;
  double variance;
  double slope;  // d<L>/dphi (signed)
  double phi;
};

struct Sensitivity {
  double delta_phi;  // +infinity when the slope is singular
  Scheme scheme;
  double phi;
  bool finite;
};

/* Is the slope too small, relative to the signal, to divide by? */
bool slope_singular(double slope, double mean);

SignalStats signal_stats(Scheme scheme, const InputParams& params, double phi,
                         const LossParams& loss = {});

Sensitivity phase_sensitivity(Scheme scheme, const InputParams& params,
                              double phi, const LossParams& loss = {});

/* Coherent + amplitude-squeezed benchmark at phi = 0 with theta forced to
 * pi; agrees with phase_sensitivity(Hd, ...) at that point. */
Sensitivity caves_reduction(const InputParams& params,
                            const LossParams& loss = {});

namespace detail {
/* Stats expressed directly through the joint moments; shared by both the
 * lossless and lossy paths (t = mu*eta, 1 when lossless). */
SignalStats stats_from_moments(Scheme scheme, const Moments& g,
                               double alpha_mag, double phi, double t);
}  // namespace detail

}  // namespace mzi

#endif
