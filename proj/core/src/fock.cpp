#include "mzi/fock.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace mzi {

namespace {

const complexd kI(0.0, 1.0);

complexd expi(double x) { return complexd(std::cos(x), std::sin(x)); }

/* log(n!) for n = 0..count-1 */
std::vector<double> log_factorials(int count) {
  std::vector<double> lg(count, 0.0);
  for (int n = 1; n < count; ++n) lg[n] = lg[n - 1] + std::log(double(n));
  return lg;
}

Eigen::VectorXcd coherent_amplitudes(double beta, int dim) {
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(dim);
  if (beta == 0.0) {
    amp[0] = 1.0;
    return amp;
  }
  const auto lg = log_factorials(dim);
  const double lb = std::log(beta);
  for (int n = 0; n < dim; ++n)
    amp[n] = std::exp(-beta * beta / 2.0 + n * lb - 0.5 * lg[n]);
  return amp;
}

/*
 * psi <- exp(0.5 (z a+^2 - z* a^2)) psi by scaled Taylor stepping of the
 * banded generator.  Each substep has generator norm <= 1, so the series
 * converges to machine precision in a few terms.
 */
void apply_squeeze(Eigen::VectorXcd& psi, double r, double theta) {
  if (r == 0.0) return;
  const int dim = int(psi.size());
  const complexd z = r * expi(theta);
  const int steps = std::max(1, int(std::ceil(r * (dim + 1))));
  const complexd zs = z / double(steps);
  const complexd zcs = std::conj(z) / double(steps);

  Eigen::VectorXcd term(dim), next(dim);
  for (int s = 0; s < steps; ++s) {
    term = psi;
    for (int k = 1; k <= 48; ++k) {
      next.setZero();
      for (int n = 0; n < dim; ++n) {
        complexd acc = 0.0;
        if (n >= 2)
          acc += 0.5 * zs * std::sqrt(double(n) * double(n - 1)) * term[n - 2];
        if (n + 2 < dim)
          acc -= 0.5 * zcs * std::sqrt(double(n + 1) * double(n + 2)) *
                 term[n + 2];
        next[n] = acc / double(k);
      }
      term.swap(next);
      psi += term;
      if (term.norm() <= 1e-18 * psi.norm()) break;
    }
  }
}

/*
 * <m|D(d)|n> for m < rows, n < cols, filled diagonal by diagonal.
 *
 * Along the diagonal m = n + k the entries are e^{i k arg d} R_n with the
 * real magnitudes obeying the symmetric three-term recurrence
 *   R_{n+1} = (2n+k+1-x) / sqrt((n+1)(n+1+k)) R_n
 *             - sqrt(n(n+k) / ((n+1)(n+1+k))) R_{n-1},   x = |d|^2,
 * seeded by R_0 = e^{-x/2} |d|^k / sqrt(k!).  Every entry is bounded by 1,
 * so nothing can overflow, and a seed that underflows to zero belongs to a
 * diagonal that is negligible throughout the truncated block.  (Propagating
 * upward from row 0 instead is unstable: the row-0 entries underflow at
 * large n and the recurrence amplifies that error astronomically.)
 */
Eigen::MatrixXcd displacement_matrix(complexd d, int rows, int cols) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, cols);
  const double x = std::norm(d);
  if (x == 0.0) {
    for (int n = 0; n < std::min(rows, cols); ++n) m(n, n) = 1.0;
    return m;
  }
  const double log_mag = 0.5 * std::log(x);
  const double theta = std::arg(d);
  const auto lg = log_factorials(std::max(rows, cols));

  const auto fill_diagonal = [&](int k, bool lower) {
    // lower: entries (n+k, n); upper: entries (n, n+k) with the conjugate
    // phase and the (-1)^k of <m|D|n> = (-1)^{m-n} conj(<n|D|m>) e^{...}.
    const int count = lower ? std::min(rows - k, cols) : std::min(cols - k, rows);
    if (count <= 0) return;
    const complexd phase =
        lower ? std::polar(1.0, k * theta)
              : double(k % 2 == 0 ? 1 : -1) * std::polar(1.0, -k * theta);
    double prev2 = 0.0;
    double prev = std::exp(-x / 2.0 + k * log_mag - 0.5 * lg[k]);
    for (int n = 0; n < count; ++n) {
      if (lower)
        m(n + k, n) = phase * prev;
      else
        m(n, n + k) = phase * prev;
      const double na = double(n + 1), nb = double(n + 1 + k);
      const double next = (2.0 * n + k + 1.0 - x) / std::sqrt(na * nb) * prev -
                          std::sqrt(double(n) * double(n + k) / (na * nb)) *
                              prev2;
      prev2 = prev;
      prev = next;
    }
  };

  for (int k = 0; k < rows; ++k) fill_diagonal(k, true);
  for (int k = 1; k < cols; ++k) fill_diagonal(k, false);
  return m;
}

struct BuildResult {
  FockState state;
  bool ok;
};

BuildResult try_build(const InputParams& p, int dim) {
  Eigen::VectorXcd psi = coherent_amplitudes(p.beta_mag, dim);
  for (int n = 0; n < dim; ++n)
    psi[n] *= expi(-p.gamma * double(n) * double(n - 1));
  apply_squeeze(psi, p.r, p.theta);

  FockState st;
  st.dim = dim;
  const double norm2 = psi.squaredNorm();
  st.norm_deficit = 1.0 - norm2;
  const int tail_start = int(0.95 * dim);
  st.tail_mass = psi.segment(tail_start, dim - tail_start).squaredNorm();
  psi /= std::sqrt(norm2);
  st.amplitudes = std::move(psi);

  BuildResult out;
  out.ok = std::abs(st.norm_deficit) <= kTruncationBudget;
  out.state = std::move(st);
  return out;
}

}  // namespace

int coherent_dim(double amplitude, double budget) {
  const double lambda = amplitude * amplitude;
  if (lambda == 0.0) return 2;
  double p = std::exp(-lambda), cum = p;
  int n = 0;
  while (cum < 1.0 - budget && n < 200000) {
    ++n;
    p *= lambda / n;
    cum += p;
  }
  return n + 2;
}

FockState build_sks_state(const InputParams& params, int dim) {
  if (dim < 2) throw range_error("dim: must be >= 2");
  if (coherent_dim(params.beta_mag, kTruncationBudget / 10.0) > dim)
    throw truncation_error("dim: coherent-state tail exceeds budget");
  BuildResult b = try_build(params, dim);
  if (!b.ok)
    throw truncation_error("dim: state leaked more than the truncation budget");
  return std::move(b.state);
}

FockState build_sks_state(const InputParams& params) {
  // The (1+3r) inflation is a starting point only; Kerr smearing can push
  // the squeezed tails much further out, so grow until they fit.
  int dim = std::max(16, coherent_dim(params.beta_mag, kTruncationBudget / 10.0));
  dim = int(std::ceil(dim * (1.0 + 3.0 * params.r)));
  // Converge the deficit and tail well below the budget: number-weighted
  // moments amplify the discarded mass by up to dim^2, so the tail must be
  // held below 1e-10 *after* that amplification for 1e-8 moment agreement.
  const double deficit_target = 1e-13;
  const double weighted_tail_target = 1e-10;
  for (int attempt = 0; attempt < 16; ++attempt) {
    if (dim > 4096)
      throw truncation_error("auto dimension exceeded 4096 levels");
    BuildResult b = try_build(params, dim);
    if (b.ok && std::abs(b.state.norm_deficit) <= deficit_target &&
        b.state.tail_mass * double(dim) * double(dim) <= weighted_tail_target)
      return std::move(b.state);
    dim = int(std::ceil(dim * 1.4)) + 8;
  }
  throw truncation_error("auto dimension search did not converge");
}

SksMoments oracle_single_mode_moments(const FockState& state) {
  const Eigen::VectorXcd& psi = state.amplitudes;
  const int dim = state.dim;
  SksMoments m{};
  complexd a = 0.0, a2 = 0.0, na = 0.0;
  double n_mean = 0.0, n2 = 0.0;
  for (int n = 0; n < dim; ++n) {
    const double p = std::norm(psi[n]);
    n_mean += n * p;
    n2 += double(n) * double(n - 1) * p;
    if (n + 1 < dim)
      a += std::conj(psi[n]) * std::sqrt(double(n + 1)) * psi[n + 1];
    if (n + 2 < dim)
      a2 += std::conj(psi[n]) *
            std::sqrt(double(n + 1) * double(n + 2)) * psi[n + 2];
    // <a+ a^2>: couples |n+1> to <n| with weight n * sqrt(n+1)
    if (n + 1 < dim)
      na += std::conj(psi[n]) * double(n) * std::sqrt(double(n + 1)) *
            psi[n + 1];
  }
  m.a_mean = a;
  m.a2_mean = a2;
  m.n_mean = n_mean;
  m.n2_normal = n2;
  m.na_mean = na;
  return m;
}

namespace detail {

Eigen::Matrix2cd mzi_matrix(double phi, Convention convention) {
  const double sh = std::sin(phi / 2.0), ch = std::cos(phi / 2.0);
  Eigen::Matrix2cd m;
  m << -sh, ch, ch, sh;
  const complexd pref = (convention == Convention::WithGlobalPhase)
                            ? -expi(phi / 2.0)
                            : complexd(-1.0, 0.0);
  return pref * m;
}

Eigen::MatrixXcd evolve_product_state(const Eigen::Matrix2cd& u,
                                      double alpha_mag,
                                      const Eigen::VectorXcd& chi, int pad) {
  const int db = int(chi.size());
  const auto lg = log_factorials(db);

  const complexd u01 = u(0, 1), u11 = u(1, 1);
  const double l01 = std::abs(u01) > 0 ? std::log(std::abs(u01)) : 0.0;
  const double l11 = std::abs(u11) > 0 ? std::log(std::abs(u11)) : 0.0;
  const double p01 = std::arg(u01), p11 = std::arg(u11);
  const bool z01 = std::abs(u01) == 0.0, z11 = std::abs(u11) == 0.0;

  // U (|0> (x) chi): each |n> splits binomially over the two output modes.
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(db, db);
  for (int n = 0; n < db; ++n) {
    const complexd cn = chi[n];
    if (cn == complexd(0.0, 0.0)) continue;
    const int k_lo = z01 ? 0 : 0, k_hi = n;
    for (int k = k_lo; k <= k_hi; ++k) {
      if (z01 && k > 0) continue;
      if (z11 && k < n) continue;
      const double lmag = 0.5 * (lg[n] - lg[k] - lg[n - k]) + k * l01 +
                          (n - k) * l11;
      const double phase = k * p01 + (n - k) * p11;
      a(k, n - k) += cn * std::polar(std::exp(lmag), phase);
    }
  }

  if (alpha_mag == 0.0) return a;

  // Displacements restore the coherent input: U(|alpha> (x) chi)
  //   = D_3(u00 alpha) D_4(u10 alpha) U(|0> (x) chi).
  if (pad < 0) pad = coherent_dim(alpha_mag, 1e-12) + 8;
  const int dout = db + pad;
  const Eigen::MatrixXcd d1 =
      displacement_matrix(u(0, 0) * alpha_mag, dout, db);
  const Eigen::MatrixXcd d2 =
      displacement_matrix(u(1, 0) * alpha_mag, dout, db);
  return d1 * (a * d2.transpose());
}

}  // namespace detail

TwoModeState oracle_interferometer(double alpha_mag, const FockState& sks,
                                   double phi, Convention convention,
                                   int pad) {
  if (alpha_mag < 0.0) throw range_error("alpha_mag: must be >= 0");
  TwoModeState out;
  out.amplitudes = detail::evolve_product_state(
      detail::mzi_matrix(phi, convention), alpha_mag, sks.amplitudes, pad);
  return out;
}

DetectorMoments two_mode_moments(const TwoModeState& state) {
  const Eigen::MatrixXcd& a = state.amplitudes;
  const int rows = int(a.rows()), cols = int(a.cols());
  DetectorMoments m{};
  for (int p = 0; p < rows; ++p)
    for (int q = 0; q < cols; ++q) {
      const double w = std::norm(a(p, q));
      m.n3 += p * w;
      m.n4 += q * w;
      m.n3_sq += double(p) * double(p) * w;
      m.n4_sq += double(q) * double(q) * w;
      m.n3n4 += double(p) * double(q) * w;
    }
  complexd a3 = 0.0, a3_sq = 0.0;
  for (int p = 0; p + 1 < rows; ++p)
    for (int q = 0; q < cols; ++q)
      a3 += std::conj(a(p, q)) * std::sqrt(double(p + 1)) * a(p + 1, q);
  for (int p = 0; p + 2 < rows; ++p)
    for (int q = 0; q < cols; ++q)
      a3_sq += std::conj(a(p, q)) *
               std::sqrt(double(p + 1) * double(p + 2)) * a(p + 2, q);
  m.a3 = a3;
  m.a3_sq = a3_sq;
  return m;
}

double detector_mean(Scheme scheme, const DetectorMoments& m) {
  switch (scheme) {
    case Scheme::Sid: return m.n3;
    case Scheme::Idd: return m.n3 - m.n4;
    case Scheme::Hd: return std::sqrt(2.0) * m.a3.real();
  }
  return 0.0;
}

double detector_variance(Scheme scheme, const DetectorMoments& m) {
  switch (scheme) {
    case Scheme::Sid: return m.n3_sq - m.n3 * m.n3;
    case Scheme::Idd: {
      const double mean = m.n3 - m.n4;
      return m.n3_sq + m.n4_sq - 2.0 * m.n3n4 - mean * mean;
    }
    case Scheme::Hd: {
      const double mean = std::sqrt(2.0) * m.a3.real();
      return m.a3_sq.real() + m.n3 + 0.5 - mean * mean;
    }
  }
  return 0.0;
}

Sensitivity oracle_sensitivity(Scheme scheme, const InputParams& params,
                               double phi, Convention convention, int dim) {
  const FockState sks =
      dim > 0 ? build_sks_state(params, dim) : build_sks_state(params);
  const double h = 1e-5;
  const auto mean_at = [&](double p) {
    return detector_mean(scheme,
                         two_mode_moments(oracle_interferometer(
                             params.alpha_mag, sks, p, convention)));
  };
  const auto stats_at = [&](double p) {
    return two_mode_moments(
        oracle_interferometer(params.alpha_mag, sks, p, convention));
  };
  const DetectorMoments m0 = stats_at(phi);
  const double mean = detector_mean(scheme, m0);
  const double var = detector_variance(scheme, m0);
  const double var_m = detector_variance(scheme, stats_at(phi - h));
  const double var_p = detector_variance(scheme, stats_at(phi + h));
  if (std::abs(var_p - var_m) > 0.1 * std::max(std::abs(var), 1e-12))
    throw consistency_error(
        "oracle_sensitivity: variance unstable across the stencil");

  // For a fixed input state every detector mean is a trigonometric
  // polynomial in phi with harmonics in {0, 1/2, 1} (half-harmonics only
  // without the global phase), so wide symmetric differences recover the
  // derivative *exactly*: D(step) = M(phi+step) - M(phi-step) equals
  // 2 sin(step/2) U1 + sin(step) U2 with U1, U2 the half- and
  // full-harmonic parts of dM/d(phi/2).  A narrow stencil would instead
  // divide state-level roundoff by the tiny step and swamp small slopes.
  const double d_pi = mean_at(phi + kPi) - mean_at(phi - kPi);
  const double d_half = mean_at(phi + kPi / 2.0) - mean_at(phi - kPi / 2.0);
  const double u1 = d_pi / 2.0;
  const double u2 = d_half - u1 * std::sqrt(2.0);
  const double slope = (u1 + u2) / 2.0;

  Sensitivity out;
  out.scheme = scheme;
  out.phi = phi;
  if (slope_singular(slope, mean)) {
    out.delta_phi = std::numeric_limits<double>::infinity();
    out.finite = false;
    return out;
  }
  out.delta_phi = std::sqrt(std::max(var, 0.0)) / std::abs(slope);
  out.finite = true;
  return out;
}

namespace detail {

double qfi_from_sks(double alpha_mag, const FockState& sks) {
  // State just before the second beam splitter; its phi-dependence is the
  // exact diagonal e^{i phi p} over the port-3 occupation p, so
  // |d psi> = i p |psi> level by level.
  Eigen::Matrix2cd b1;
  b1 << complexd(1.0, 0.0), complexd(0.0, -1.0), complexd(1.0, 0.0),
      complexd(0.0, 1.0);
  b1 /= std::sqrt(2.0);
  const Eigen::MatrixXcd a =
      evolve_product_state(b1, alpha_mag, sks.amplitudes, -1);
  double sum_p = 0.0, sum_p2 = 0.0;
  for (int p = 0; p < a.rows(); ++p) {
    const double w = a.row(p).squaredNorm();
    sum_p += p * w;
    sum_p2 += double(p) * double(p) * w;
  }
  return 4.0 * (sum_p2 - sum_p * sum_p);
}

}  // namespace detail

double oracle_qfi(const InputParams& params, int dim) {
  const FockState sks =
      dim > 0 ? build_sks_state(params, dim) : build_sks_state(params);
  return detail::qfi_from_sks(params.alpha_mag, sks);
}

}  // namespace mzi
