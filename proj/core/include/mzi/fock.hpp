#ifndef MZI_FOCK_HPP
#define MZI_FOCK_HPP

#include <Eigen/Dense>

#include "mzi/moments.hpp"
#include "mzi/params.hpp"
#include "mzi/sensitivity.hpp"

namespace mzi {

/* Maximum Fock-tail population the oracle may discard. */
inline constexpr double kTruncationBudget = 1e-10;

enum class Convention { WithGlobalPhase, WithoutGlobalPhase };

/* Single-mode truncated Fock state. */
struct FockState {
  Eigen::VectorXcd amplitudes;
  int dim = 0;
  double norm_deficit = 0.0;  // 1 - ||psi||^2 before renormalization
  double tail_mass = 0.0;     // population of the top 5% of levels
};

/* Two-mode state; row index = port-3 occupation, column = port-4. */
struct TwoModeState {
  Eigen::MatrixXcd amplitudes;
};

/* Smallest dimension holding a coherent state of the given amplitude with
 * Poisson tail below budget. */
int coherent_dim(double amplitude, double budget);

/* S(zeta) U_K(gamma) |beta> at a fixed truncation dimension. */
FockState build_sks_state(const InputParams& params, int dim);

/* Same, with the dimension grown automatically until both the norm deficit
 * and the top-5% tail are below the truncation budget. */
FockState build_sks_state(const InputParams& params);

SksMoments oracle_single_mode_moments(const FockState& state);

/* Push |alpha> (x) sks through the full interferometer at phase phi. */
TwoModeState oracle_interferometer(double alpha_mag, const FockState& sks,
                                   double phi, Convention convention,
                                   int pad = -1);

/* Raw output-port moments of a two-mode state. */
struct DetectorMoments {
  double n3, n4, n3_sq, n4_sq, n3n4;
  complexd a3, a3_sq;
};

DetectorMoments two_mode_moments(const TwoModeState& state);

double detector_mean(Scheme scheme, const DetectorMoments& m);
double detector_variance(Scheme scheme, const DetectorMoments& m);

/* Delta-phi from the evolved states alone: variance at phi, slope by central
 * difference with step h = 1e-5. */
Sensitivity oracle_sensitivity(Scheme scheme, const InputParams& params,
                               double phi, Convention convention,
                               int dim = -1);

/* QFI of the state just before the second beam splitter; the derivative is
 * applied analytically per Fock level, no finite differencing. */
double oracle_qfi(const InputParams& params, int dim = -1);

namespace detail {
/* Apply the two-mode unitary induced by a 2x2 mode matrix u (Heisenberg
 * convention: U+ a_i U = sum_j u_ij a_j) to |alpha> (x) chi. */
Eigen::MatrixXcd evolve_product_state(const Eigen::Matrix2cd& u,
                                      double alpha_mag,
                                      const Eigen::VectorXcd& chi, int pad);
Eigen::Matrix2cd mzi_matrix(double phi, Convention convention);
/* QFI from an already-built port-2 state. */
double qfi_from_sks(double alpha_mag, const FockState& sks);
}  // namespace detail

}  // namespace mzi

#endif
