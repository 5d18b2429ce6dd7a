#include "mzi/optimize.hpp"

#include <cmath>
#include <limits>

#include "mzi/moments.hpp"

namespace mzi {

namespace {

constexpr int kCoarsePoints = 4096;
constexpr double kPhiTolerance = 1e-12;

double eval_delta(Scheme scheme, const Moments& g, double alpha_mag,
                  double phi, double t) {
  const SignalStats st =
      detail::stats_from_moments(scheme, g, alpha_mag, phi, t);
  if (slope_singular(st.slope, st.mean))
    return std::numeric_limits<double>::infinity();
  return std::sqrt(st.variance) / std::abs(st.slope);
}

}  // namespace

PhaseOptimum optimize_phase(Scheme scheme, const InputParams& params,
                            const LossParams& loss) {
  const Moments g = joint_moments(params);
  const double t = loss.transmission();
  const double a = params.alpha_mag;

  const double step = kTwoPi / kCoarsePoints;
  int best_i = -1;
  double best_v = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kCoarsePoints; ++i) {
    const double v = eval_delta(scheme, g, a, i * step, t);
    if (v < best_v) {
      best_v = v;
      best_i = i;
    }
  }
  if (best_i < 0)
    throw all_singular_error("optimize_phase: every grid point is singular");

  // Golden-section on the bracketing interval (periodic continuation keeps
  // the i = 0 bracket contiguous).
  const double gr = (1.0 + std::sqrt(5.0)) / 2.0;
  double lo = (best_i - 1) * step, hi = (best_i + 1) * step;
  double best_phi = best_i * step;
  double c = hi - (hi - lo) / gr;
  double d = lo + (hi - lo) / gr;
  double fc = eval_delta(scheme, g, a, c, t);
  double fd = eval_delta(scheme, g, a, d, t);
  while (hi - lo > kPhiTolerance) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - (hi - lo) / gr;
      fc = eval_delta(scheme, g, a, c, t);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + (hi - lo) / gr;
      fd = eval_delta(scheme, g, a, d, t);
    }
    const double mid = fc < fd ? c : d;
    const double fmid = std::min(fc, fd);
    if (fmid < best_v) {
      best_v = fmid;
      best_phi = mid;
    }
  }

  PhaseOptimum out;
  out.phi = wrap_2pi(best_phi);
  if (kTwoPi - out.phi < 1e-9) out.phi = 0.0;
  out.delta_phi = best_v;
  return out;
}

}  // namespace mzi
