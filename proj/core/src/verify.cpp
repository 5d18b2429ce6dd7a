#include "mzi/verify.hpp"

#include <cmath>
#include <sstream>

#include "mzi/bounds.hpp"
#include "mzi/fock.hpp"
#include "mzi/moments.hpp"
#include "mzi/sensitivity.hpp"
#include "parallel.hpp"

namespace mzi {

namespace {

const double kPhiPoints[5] = {0.5, 1.2, 2.0, 2.9, 5.5};

/* Relative error with an absolute floor folded into the denominator:
 * err <= tol  <=>  |x - y| <= max(tol |y|, floor). */
double rel_err(double x, double y, double floor_over_tol) {
  return std::abs(x - y) / std::max(std::abs(y), floor_over_tol);
}

double imag_of(complexd z) { return z.imag(); }

}  // namespace

std::vector<InputParams> default_verify_grid() {
  std::vector<InputParams> grid;
  for (double a : {0.0, 2.0})
    for (double b : {0.0, 1.2})
      for (double g : {0.0, 0.3})
        for (double r : {0.0, 0.8}) grid.emplace_back(a, b, kPi, g, r);
  return grid;
}

std::vector<InputParams> full_verify_grid() {
  std::vector<InputParams> grid;
  for (double a : {0.0, 0.7, 1.4, 2.2, 3.0})
    for (double b : {0.0, 0.7, 1.4, 2.2, 3.0})
      for (double g : {0.0, 0.3, 0.9, 1.6, 2.8})
        for (double r : {0.0, 0.4, 1.2})
          for (double th : {0.0, kPi / 3.0, kPi})
            grid.emplace_back(a, b, th, g, r);
  return grid;
}

VerifyReport verify(const std::vector<InputParams>& grid,
                    const VerifyTolerances& tol, int threads) {
  for (const auto& p : grid)
    if (p.alpha_mag > 3.0 + 1e-9 || p.beta_mag > 3.0 + 1e-9 ||
        p.r > 1.2 + 1e-9)
      throw range_error(
          "verify: grid point outside oracle range (alpha, beta <= 3, r <= 1.2)");

  VerifyReport report;
  report.points.reserve(grid.size());
  for (const auto& p : grid) {
    VerifyPointReport pr{p};
    report.points.push_back(pr);
  }

  const double moment_floor = 1e-10 / tol.moments;

  detail::parallel_for(grid.size(), threads, [&](std::size_t idx) {
    const InputParams& p = grid[idx];
    VerifyPointReport& pr = report.points[idx];
    std::ostringstream why;

    const FockState sks = build_sks_state(p);
    const SksMoments oracle_sm = oracle_single_mode_moments(sks);
    const Moments closed = joint_moments(p);
    const Moments oracle_g = detail::assemble_joint(p.alpha_mag, oracle_sm);

    const std::pair<double, double> reals[] = {
        {closed.g1, oracle_g.g1},   {closed.g2, oracle_g.g2},
        {closed.g3, oracle_g.g3},   {closed.g4, oracle_g.g4},
        {closed.g5, oracle_g.g5},   {closed.g6, oracle_g.g6},
        {closed.g7, oracle_g.g7},   {closed.g8, oracle_g.g8},
        {closed.g9, oracle_g.g9},   {imag_of(closed.g10), imag_of(oracle_g.g10)},
        {imag_of(closed.g11), imag_of(oracle_g.g11)},
        {imag_of(closed.g12), imag_of(oracle_g.g12)},
        {closed.n_total, oracle_g.n_total}};
    int gi = 0;
    for (const auto& [c, o] : reals) {
      const double e = rel_err(c, o, moment_floor);
      if (e > pr.worst_moment_error) pr.worst_moment_error = e;
      if (e > tol.moments)
        why << "moment[" << gi << "] err=" << e << "; ";
      ++gi;
    }

    for (double phi : kPhiPoints) {
      const DetectorMoments m0 = two_mode_moments(oracle_interferometer(
          p.alpha_mag, sks, phi, Convention::WithGlobalPhase));
      // Every detector mean is exactly first-harmonic in phi for a fixed
      // input state, so the symmetric difference at +-pi/2 is the *exact*
      // derivative: M(phi+pi/2) - M(phi-pi/2) = 2 M'(phi).  A narrow
      // stencil would divide state-level roundoff by the tiny step and
      // swamp slopes that are strongly Kerr-suppressed.
      const DetectorMoments mm = two_mode_moments(oracle_interferometer(
          p.alpha_mag, sks, phi - kPi / 2.0, Convention::WithGlobalPhase));
      const DetectorMoments mp = two_mode_moments(oracle_interferometer(
          p.alpha_mag, sks, phi + kPi / 2.0, Convention::WithGlobalPhase));
      for (Scheme scheme : {Scheme::Sid, Scheme::Idd, Scheme::Hd}) {
        const Sensitivity cs = phase_sensitivity(scheme, p, phi);
        const SignalStats closed_stats = signal_stats(scheme, p, phi);
        const double mean = detector_mean(scheme, m0);
        const double var = detector_variance(scheme, m0);
        const double slope =
            (detector_mean(scheme, mp) - detector_mean(scheme, mm)) / 2.0;
        const bool oracle_finite = !slope_singular(slope, mean);
        if (!cs.finite || !oracle_finite) {
          // A genuinely singular working point must look singular (or at
          // least enormous) from both sides; then it carries no signal.
          continue;
        }
        if (std::abs(closed_stats.slope) <
            1e-6 * std::max(1.0, std::abs(closed_stats.mean))) {
          // Pole-adjacent: the oracle mean carries absolute noise around
          // 1e-12 of the signal scale (truncation bias plus accumulated
          // roundoff), so once the slope sits below 1e-6 of that scale a
          // relative comparison of delta-phi at 1e-6 carries no
          // information -- the working point is a sensitivity pole.
          continue;
        }
        const double od = std::sqrt(std::max(var, 0.0)) / std::abs(slope);
        const double e = rel_err(od, cs.delta_phi, 1e-12);
        if (e > pr.worst_sensitivity_error) pr.worst_sensitivity_error = e;
        if (e > tol.sensitivity)
          why << to_string(scheme) << "@phi=" << phi << " err=" << e << "; ";
      }
    }

    const double oq = detail::qfi_from_sks(p.alpha_mag, sks);
    const double cq = qfi(p);
    pr.qfi_error = rel_err(oq, cq, 1e-9 / tol.qfi);
    if (pr.qfi_error > tol.qfi) why << "qfi err=" << pr.qfi_error << "; ";

    pr.detail = why.str();
    pr.pass = pr.detail.empty();
  });

  report.all_pass = true;
  for (const auto& pr : report.points) {
    report.worst_moment_error =
        std::max(report.worst_moment_error, pr.worst_moment_error);
    report.worst_sensitivity_error =
        std::max(report.worst_sensitivity_error, pr.worst_sensitivity_error);
    report.worst_qfi_error = std::max(report.worst_qfi_error, pr.qfi_error);
    if (!pr.pass) report.all_pass = false;
  }
  return report;
}

}  // namespace mzi
