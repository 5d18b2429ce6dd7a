#include "mzi/sensitivity.hpp"

#include <cmath>
#include <limits>

namespace mzi {

namespace {

const complexd kI(0.0, 1.0);

complexd expi(double x) { return complexd(std::cos(x), std::sin(x)); }

double clamp_variance(double var, double scale) {
  if (var >= 0.0) return var;
  if (var >= -1e-12 * std::max(1.0, scale)) return 0.0;
  throw consistency_error("negative variance beyond rounding tolerance");
}

#ifndef NDEBUG
/*
 * Debug cross-check: the published closed-form radicals, grouped as printed,
 * must reproduce sqrt(variance)/|slope|.  The tolerance floor is 1e-10 but
 * grows with the cancellation level of the variance so the check stays
 * meaningful at large amplitudes.
 */
void check_closed_form(Scheme scheme, const Moments& g, double phi, double t,
                       const SignalStats& st) {
  const double s2 = std::sin(phi / 2.0) * std::sin(phi / 2.0);
  const double c2 = std::cos(phi / 2.0) * std::cos(phi / 2.0);
  const double sp = std::sin(phi), cp = std::cos(phi);

  double rad = 0.0, terms = 0.0, denom = 0.0;
  switch (scheme) {
    case Scheme::Sid: {
      const double t1 = (g.g1 * s2 + g.g2 * c2 - 0.5 * g.g3 * sp) / t;
      const double t2 = (g.g4 - g.g2 * g.g2) * c2 * c2;
      const double t3 = (g.g5 - g.g1 * g.g1) * s2 * s2;
      const double t4 = 0.25 *
                        (g.g6 - g.g3 * g.g3 - 2.0 * g.g1 * g.g2 + 4.0 * g.g7) *
                        sp * sp;
      const double t5 =
          -((g.g8 - g.g2 * g.g3) * c2 + (g.g9 - g.g1 * g.g3) * s2) * sp;
      rad = t1 + t2 + t3 + t4 + t5;
      terms = std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4) +
              std::abs(t5);
      denom = 0.5 * std::abs((g.g1 - g.g2) * sp - g.g3 * cp);
      break;
    }
    case Scheme::Idd: {
      const double t1 = (g.g1 + g.g2) / t;
      const double t2 =
          (g.g4 + g.g5 - 2.0 * g.g7 - (g.g2 - g.g1) * (g.g2 - g.g1)) * cp * cp;
      const double t3 = (g.g6 + 2.0 * g.g7 - g.g3 * g.g3) * sp * sp;
      const double t4 =
          -(g.g8 - g.g9 - g.g3 * (g.g2 - g.g1)) * std::sin(2.0 * phi);
      rad = t1 + t2 + t3 + t4;
      terms = std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4);
      denom = std::abs((g.g1 - g.g2) * sp - g.g3 * cp);
      break;
    }
    case Scheme::Hd: {
      const complexd da2sq = g.a2_mean - g.a_mean * g.a_mean;
      const double t1 = 1.0 / t;
      const double t2 =
          2.0 * c2 *
          ((expi(phi) * da2sq).real() + (g.g2 - std::norm(g.a_mean)));
      rad = t1 + t2;
      terms = std::abs(t1) + std::abs(t2);
      const double alpha = std::sqrt(g.g1);
      denom = std::abs((expi(phi) * (complexd(alpha, 0.0) - kI * g.a_mean)).real());
      break;
    }
  }

  if (denom <= 0.0 || rad < 0.0) return;
  const double closed = std::sqrt(rad) / denom;
  const double direct = std::sqrt(st.variance) / std::abs(st.slope);
  const double cond = terms / std::max(std::abs(rad), 1e-300);
  const double tol = std::max(1e-10, 100.0 * 2.2e-16 * cond);
  if (std::abs(closed - direct) > tol * std::max(closed, direct))
    throw consistency_error("closed-form / error-propagation mismatch");
}
#endif

}  // namespace

bool slope_singular(double slope, double mean) {
  return std::abs(slope) < 1e-12 * std::max(1.0, std::abs(mean));
}

namespace detail {

SignalStats stats_from_moments(Scheme scheme, const Moments& g,
                               double alpha_mag, double phi, double t) {
  const double ph = wrap_2pi(phi);
  const double sh = std::sin(ph / 2.0), ch = std::cos(ph / 2.0);
  const double s2 = sh * sh, c2 = ch * ch;
  const double sp = std::sin(ph), cp = std::cos(ph);

  SignalStats st;
  st.phi = phi;
  switch (scheme) {
    case Scheme::Sid: {
      const double m = g.g1 * s2 + g.g2 * c2 - 0.5 * g.g3 * sp;
      const double q = g.g4 * c2 * c2 + g.g5 * s2 * s2 +
                       (0.25 * g.g6 + g.g7) * sp * sp -
                       (g.g8 * c2 + g.g9 * s2) * sp;
      st.mean = t * m;
      st.variance = clamp_variance(t * m + t * t * (q - m * m),
                                   t * std::abs(m) + t * t * (std::abs(q) + m * m));
      st.slope = t * 0.5 * ((g.g1 - g.g2) * sp - g.g3 * cp);
      break;
    }
    case Scheme::Idd: {
      const double m = (g.g2 - g.g1) * cp - g.g3 * sp;
      const double q = (g.g4 + g.g5) * cp * cp + g.g6 * sp * sp -
                       2.0 * g.g7 * std::cos(2.0 * ph) -
                       (g.g8 - g.g9) * std::sin(2.0 * ph);
      st.mean = t * m;
      st.variance = clamp_variance(t * (g.g1 + g.g2) + t * t * (q - m * m),
                                   t * g.n_total + t * t * (std::abs(q) + m * m));
      st.slope = t * ((g.g1 - g.g2) * sp - g.g3 * cp);
      break;
    }
    case Scheme::Hd: {
      const complexd a1(alpha_mag, 0.0);
      const complexd a3 = -expi(ph / 2.0) * (-sh * a1 + ch * g.a_mean);
      const complexd da2sq = g.a2_mean - g.a_mean * g.a_mean;
      const double lossless_var =
          0.5 + c2 * ((expi(ph) * da2sq).real() +
                      (g.g2 - std::norm(g.a_mean)));
      st.mean = std::sqrt(t) * std::sqrt(2.0) * a3.real();
      st.variance = clamp_variance(
          0.5 + t * (lossless_var - 0.5),
          0.5 + t * (0.5 + c2 * (std::abs(da2sq) + g.g2 + std::norm(g.a_mean))));
      st.slope = std::sqrt(t) * (1.0 / std::sqrt(2.0)) *
                 (expi(ph) * (a1 - kI * g.a_mean)).real();
      break;
    }
  }
  return st;
}

}  // namespace detail

SignalStats signal_stats(Scheme scheme, const InputParams& params, double phi,
                         const LossParams& loss) {
  const Moments g = joint_moments(params);
  return detail::stats_from_moments(scheme, g, params.alpha_mag, phi,
                                    loss.transmission());
}

Sensitivity phase_sensitivity(Scheme scheme, const InputParams& params,
                              double phi, const LossParams& loss) {
  const Moments g = joint_moments(params);
  const double t = loss.transmission();
  const SignalStats st =
      detail::stats_from_moments(scheme, g, params.alpha_mag, phi, t);

  Sensitivity out;
  out.scheme = scheme;
  out.phi = phi;
  if (slope_singular(st.slope, st.mean)) {
    out.delta_phi = std::numeric_limits<double>::infinity();
    out.finite = false;
    return out;
  }
#ifndef NDEBUG
  check_closed_form(scheme, g, wrap_2pi(phi), t, st);
#endif
  out.delta_phi = std::sqrt(st.variance) / std::abs(st.slope);
  out.finite = true;
  return out;
}

Sensitivity caves_reduction(const InputParams& params, const LossParams& loss) {
  const InputParams p(params.alpha_mag, params.beta_mag, kPi, params.gamma,
                      params.r);
  const KerrFactors f = kerr_factors(p.beta_mag, p.gamma, p.r);
  const double t = loss.transmission();
  const double a_factor =
      2.0 * p.beta_mag * p.beta_mag *
      (1.0 + f.c2 * std::cos(2.0 * p.gamma + f.s2) -
       2.0 * f.c * f.c * std::cos(f.s) * std::cos(f.s));
  const double denom = std::abs(p.alpha_mag + p.beta_mag * f.c *
                                                  std::exp(p.r) *
                                                  std::sin(f.s - kPi));

  Sensitivity out;
  out.scheme = Scheme::Hd;
  out.phi = 0.0;
  if (denom < 1e-12) {
    out.delta_phi = std::numeric_limits<double>::infinity();
    out.finite = false;
    return out;
  }
  out.delta_phi = std::sqrt((1.0 / t - 1.0) +
                            std::exp(-2.0 * p.r) * (1.0 + a_factor)) /
                  denom;
  out.finite = true;
  return out;
}

}  // namespace mzi
