#include "mzi/moments.hpp"

#include <cmath>

namespace mzi {

namespace {

const complexd kI(0.0, 1.0);

complexd expi(double x) { return complexd(std::cos(x), std::sin(x)); }

/* Assert that a value assembled from complex sub-terms is real, then strip
 * the imaginary part. */
double take_real(complexd z, const char* what) {
  double mag = std::max(std::abs(z.real()), 1.0);
  if (std::abs(z.imag()) > 1e-12 * mag)
    throw consistency_error(std::string("imaginary residue in ") + what);
  return z.real();
}

}  // namespace

KerrFactors kerr_factors(double beta_mag, double gamma, double r) {
  if (beta_mag < 0.0) throw range_error("beta_mag: must be >= 0");
  const double b2 = beta_mag * beta_mag;
  KerrFactors f;
  f.c = std::exp(b2 * (std::cos(2.0 * gamma) - 1.0));
  f.c2 = std::exp(b2 * (std::cos(4.0 * gamma) - 1.0));
  f.c3 = std::exp(b2 * (std::cos(6.0 * gamma) - 1.0));
  f.c4 = std::exp(b2 * (std::cos(8.0 * gamma) - 1.0));
  f.s = b2 * std::sin(2.0 * gamma);
  f.s2 = b2 * std::sin(4.0 * gamma);
  f.s3 = b2 * std::sin(6.0 * gamma);
  f.s4 = b2 * std::sin(8.0 * gamma);
  f.C = std::cosh(r);
  f.S = std::sinh(r);
  return f;
}

SksMoments sks_moments(const InputParams& p) {
  const KerrFactors f = kerr_factors(p.beta_mag, p.gamma, p.r);
  const double c = f.c, c2 = f.c2, c3 = f.c3, c4 = f.c4;
  const double s = f.s, s2 = f.s2, s3 = f.s3, s4 = f.s4;
  const double C = f.C, S = f.S;
  const double th = p.theta, gm = p.gamma;
  const double b = p.beta_mag;
  const double b2 = b * b, b3 = b2 * b, b4 = b2 * b2;

  SksMoments m;
  m.a_mean = b * c * (C * expi(-s) + S * expi(s + th));
  m.a2_mean = C * C * b2 * c2 * expi(-(2.0 * gm + s2)) +
              C * S * (2.0 * b2 + 1.0) * expi(th) +
              S * S * b2 * c2 * expi(2.0 * gm + 2.0 * th + s2);
  m.n_mean =
      b2 * (C * C + S * S + 2.0 * c2 * C * S * std::cos(2.0 * gm + th + s2)) +
      S * S;
  m.n2_normal =
      b4 * C * C * C * C + (b4 * S * S * S * S + 4.0 * b2 * S * S * S * S +
                            2.0 * S * S * S * S) +
      2.0 * b4 * C * C * S * S * c4 * std::cos(2.0 * th + 12.0 * gm + s4) +
      4.0 * b4 * c2 * C * S * (C * C + S * S) * std::cos(th + 6.0 * gm + s2) +
      2.0 * C * S * b2 * c2 * (C * C + 5.0 * S * S) *
          std::cos(th + 2.0 * gm + s2) +
      (4.0 * b4 + 8.0 * b2 + 1.0) * C * C * S * S;

  // <a+ a^2> = X_c - i X_s, with the cosine/sine series sharing structure.
  const double xc =
      b3 * c * ((C * C * C + 2.0 * C * S * S) * std::cos(2.0 * gm + s) +
                (S * S * S + 2.0 * C * C * S) * std::cos(th + 2.0 * gm + s)) +
      b * c * ((2.0 * S * S * S + C * C * S) * std::cos(th + s) +
               3.0 * C * S * S * std::cos(s)) +
      b3 * c3 * C * S *
          (C * std::cos(th + 6.0 * gm + s3) +
           S * std::cos(2.0 * th + 6.0 * gm + s3));
  const double xs =
      b3 * c * ((C * C * C + 2.0 * C * S * S) * std::sin(2.0 * gm + s) -
                (S * S * S + 2.0 * C * C * S) * std::sin(th + 2.0 * gm + s)) -
      b * c * ((2.0 * S * S * S + C * C * S) * std::sin(th + s) -
               3.0 * C * S * S * std::sin(s)) +
      b3 * c3 * C * S *
          (C * std::sin(th + 6.0 * gm + s3) -
           S * std::sin(2.0 * th + 6.0 * gm + s3));
  m.na_mean = complexd(xc, -xs);
  return m;
}

Moments joint_moments(const InputParams& p) {
  return detail::assemble_joint(p.alpha_mag, sks_moments(p));
}

namespace detail {

Moments assemble_joint(double a, const SksMoments& sm) {
  // <a_1^k> = alpha^k for the real coherent amplitude at port 1.
  const complexd a1(a, 0.0);
  const complexd am = sm.a_mean, am2 = sm.a2_mean, na = sm.na_mean;

  Moments g;
  g.g1 = a * a;
  g.g2 = sm.n_mean;
  g.g3 = take_real(a1 * std::conj(am) + std::conj(a1) * am, "g3");
  g.g4 = sm.n2_normal;
  g.g5 = a * a * a * a;
  g.g6 = take_real(a1 * a1 * std::conj(am2) + std::conj(a1 * a1) * am2, "g6");
  g.g7 = g.g1 * sm.n_mean;
  g.g8 = take_real(a1 * std::conj(na) + std::conj(a1) * na, "g8");
  g.g9 = take_real(a1 * a1 * a1 * (std::conj(am) + am), "g9");
  g.g10 = a * (am - std::conj(am));
  g.g11 = a * a * a * (std::conj(am) - am);
  g.g12 = a * (std::conj(na) - na);
  g.a_mean = am;
  g.a2_mean = am2;
  g.n_total = g.g1 + g.g2;
  return g;
}

}  // namespace detail

}  // namespace mzi
