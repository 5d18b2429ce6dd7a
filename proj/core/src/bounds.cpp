#include "mzi/bounds.hpp"

#include <cmath>

namespace mzi {

namespace detail {

double qfi_from_moments(const Moments& g) {
  const complexd two_i(0.0, 2.0);
  const complexd f =
      2.0 * (g.g1 + g.g2) + g.g5 + g.g4 - (g.g1 - g.g2) * (g.g1 - g.g2) -
      g.g6 + g.g10 * g.g10 +
      two_i * (g.g11 + g.g12 + g.g10 * (g.g1 + g.g2 - 1.0));
  if (std::abs(f.imag()) > 1e-9 * std::max(std::abs(f), 1e-30))
    throw consistency_error("qfi: imaginary residue exceeds tolerance");
  // Tiny negatives can only arise from rounding; the value is a variance.
  return std::max(f.real(), 0.0);
}

}  // namespace detail

double qfi(const InputParams& params) {
  return detail::qfi_from_moments(joint_moments(params));
}

Bounds benchmark_limits(const InputParams& params) {
  const Moments g = joint_moments(params);
  if (g.n_total <= 1e-15)
    throw zero_photon_error("n_total: no photons, benchmark limits undefined");
  Bounds b;
  b.n_total = g.n_total;
  b.qfi = detail::qfi_from_moments(g);
  b.qcrb = 1.0 / std::sqrt(b.qfi);
  b.snl = 1.0 / std::sqrt(g.n_total);
  b.hl = 1.0 / g.n_total;
  return b;
}

}  // namespace mzi
