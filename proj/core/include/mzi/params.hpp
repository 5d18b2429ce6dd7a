#ifndef MZI_PARAMS_HPP
#define MZI_PARAMS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace mzi {

using complexd = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/* Validation failures on user-supplied values. */
struct range_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/* Malformed sweep/config specification; message names the offending field. */
struct spec_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/* Benchmark limits are undefined without photons. */
struct zero_photon_error : range_error {
  using range_error::range_error;
};

/* An internal cross-check (realness, identity between two routes, ...) failed. */
struct consistency_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* The truncated Fock basis could not hold the state within budget. */
struct truncation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* Phase optimization found no finite sensitivity anywhere on the grid. */
struct all_singular_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* Reduce an angle to [0, 2*pi). */
double wrap_2pi(double x);

/* Parse "0.5", "pi", "7pi/4", "-pi/2", "2pi" etc. into radians. */
double parse_angle(const std::string& text);

enum class Scheme { Sid, Idd, Hd };

const char* to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

/*
 * The five physical knobs: coherent amplitude |alpha| at port 1, and the
 * squeezed Kerr state at port 2 built from |beta| with Kerr coefficient
 * gamma and squeezing zeta = r e^{i theta}.  theta and gamma are reduced
 * modulo 2*pi on construction.
 */
struct InputParams {
  double alpha_mag;
  double beta_mag;
  double theta;
  double gamma;
  double r;

  InputParams(double alpha_mag, double beta_mag, double theta, double gamma,
              double r);
};

/* Fictitious beam-splitter transmissivities: mu inside the arms, eta at the
 * detectors.  Everything downstream depends only on the product mu*eta. */
struct LossParams {
  double mu = 1.0;
  double eta = 1.0;

  LossParams() = default;
  LossParams(double mu, double eta);

  double transmission() const { return mu * eta; }
};

}  // namespace mzi

#endif
