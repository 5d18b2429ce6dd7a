#ifndef MZI_MOMENTS_HPP
#define MZI_MOMENTS_HPP

#include "mzi/params.hpp"

namespace mzi {

/*
 * Envelope/drift factors of the Kerr-smeared coherent state:
 *   c_k = exp(|beta|^2 (cos 2k gamma - 1)),  s_k = |beta|^2 sin 2k gamma,
 * together with C = cosh r, S = sinh r.  The s_k are deliberately left
 * unreduced; they enter trig arguments directly.
 */
struct KerrFactors {
  double c, c2, c3, c4;
  double s, s2, s3, s4;
  double C, S;
};

KerrFactors kerr_factors(double beta_mag, double gamma, double r);

/* Single-mode moments of the squeezed Kerr state at port 2. */
struct SksMoments {
  complexd a_mean;    // <a>
  complexd a2_mean;   // <a^2>
  double n_mean;      // <a+ a>
  double n2_normal;   // <a+^2 a^2>
  complexd na_mean;   // <a+ a^2>, needed for the mixed third-order moments
};

SksMoments sks_moments(const InputParams& params);

/* The twelve joint moments of |alpha> (x) |psi_SK>, plus the port-2 field
 * means carried through for homodyne statistics. */
struct Moments {
  double g1, g2, g3, g4, g5, g6, g7, g8, g9;
  complexd g10, g11, g12;  // purely imaginary for product inputs
  complexd a_mean;         // <a_2>
  complexd a2_mean;        // <a_2^2>
  double n_total;          // g1 + g2
};

Moments joint_moments(const InputParams& params);

namespace detail {
/* Product-state assembly of the g symbols from the port-2 moments; shared
 * by the closed forms and the Fock oracle. */
Moments assemble_joint(double alpha_mag, const SksMoments& sks);
}  // namespace detail

}  // namespace mzi

#endif
