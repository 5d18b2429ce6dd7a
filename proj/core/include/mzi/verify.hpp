#ifndef MZI_VERIFY_HPP
#define MZI_VERIFY_HPP

#include <string>
#include <vector>

#include "mzi/params.hpp"

namespace mzi {

struct VerifyTolerances {
  double moments = 1e-8;      // relative, with a 1e-10 absolute floor
  double sensitivity = 1e-6;  // relative
  double qfi = 1e-6;          // relative
};

struct VerifyPointReport {
  InputParams params;
  double worst_moment_error = 0.0;
  double worst_sensitivity_error = 0.0;
  double qfi_error = 0.0;
  bool pass = false;
  std::string detail;  // empty unless something failed
};

struct VerifyReport {
  std::vector<VerifyPointReport> points;
  double worst_moment_error = 0.0;
  double worst_sensitivity_error = 0.0;
  double worst_qfi_error = 0.0;
  bool all_pass = false;
};

/* Quick smoke grid (a few seconds). */
std::vector<InputParams> default_verify_grid();

/* The full 5x5x5x3x3 equivalence grid. */
std::vector<InputParams> full_verify_grid();

/*
 * Compare closed-form moments, sensitivities (three schemes at five phase
 * points) and QFI against the truncated-Fock oracle at every grid point.
 * Points outside the oracle range (alpha, beta <= 3, r <= 1.2) are rejected
 * with a range error.
 */
VerifyReport verify(const std::vector<InputParams>& grid,
                    const VerifyTolerances& tol = {}, int threads = 0);

}  // namespace mzi

#endif
