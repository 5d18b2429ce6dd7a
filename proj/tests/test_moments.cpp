#include <doctest.h>

#include <cmath>
#include <random>

#include "mzi/fock.hpp"
#include "mzi/moments.hpp"

using namespace mzi;

namespace {
bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-10});
}
bool close(complexd a, complexd b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-10});
}
}  // namespace

TEST_CASE("kerr factors: zero amplitude kills the envelope") {
  const KerrFactors f = kerr_factors(0.0, 0.7, 0.0);
  CHECK(f.c == 1.0);
  CHECK(f.c2 == 1.0);
  CHECK(f.c3 == 1.0);
  CHECK(f.c4 == 1.0);
  CHECK(f.s == 0.0);
  CHECK(f.s2 == 0.0);
  CHECK(f.s3 == 0.0);
  CHECK(f.s4 == 0.0);
  CHECK(f.C == 1.0);
  CHECK(f.S == 0.0);
}

TEST_CASE("kerr factors: no Kerr interaction") {
  const KerrFactors f = kerr_factors(2.0, 0.0, 1.0);
  CHECK(f.c == 1.0);
  CHECK(f.c4 == 1.0);
  CHECK(f.s == 0.0);
  CHECK(f.s4 == 0.0);
  CHECK(f.C == doctest::Approx(std::cosh(1.0)).epsilon(1e-15));
  CHECK(f.S == doctest::Approx(std::sinh(1.0)).epsilon(1e-15));
}

TEST_CASE("kerr factors: generic point against direct scalar evaluation") {
  const KerrFactors f = kerr_factors(1.2, 0.3, 0.8);
  CHECK(close(f.c, 0.77762045994058737, 1e-14));
  CHECK(close(f.c2, 0.39923509161797371, 1e-14));
  CHECK(close(f.c3, 0.17081554030777929, 1e-14));
  CHECK(close(f.c4, 0.081933531623622075, 1e-14));
  CHECK(close(f.s, 0.81308516168885092, 1e-14));
  CHECK(close(f.s2, 1.3421362837928057, 1e-14));
  CHECK(close(f.s3, 1.4023405884646012, 1e-14));
  CHECK(close(f.s4, 0.97266697999365737, 1e-14));
  CHECK(close(f.C, 1.3374349463048447, 1e-14));
  CHECK(close(f.S, 0.88810598218762304, 1e-14));
  CHECK(close(f.C * f.C - f.S * f.S, 1.0, 1e-12));
}

TEST_CASE("kerr factors: invariant under gamma -> gamma + pi") {
  const KerrFactors f1 = kerr_factors(1.7, 0.4, 0.3);
  const KerrFactors f2 = kerr_factors(1.7, 0.4 + kPi, 0.3);
  CHECK(close(f1.c, f2.c, 1e-12));
  CHECK(close(f1.c3, f2.c3, 1e-12));
  CHECK(close(f1.s, f2.s, 1e-12));
  CHECK(close(f1.s4, f2.s4, 1e-12));
}

TEST_CASE("sks moments: degenerate coherent state") {
  const SksMoments m = sks_moments(InputParams(0, 3, kPi, 0, 0));
  CHECK(close(m.a_mean, complexd(3, 0), 1e-14));
  CHECK(close(m.a2_mean, complexd(9, 0), 1e-14));
  CHECK(close(m.n_mean, 9.0, 1e-14));
  CHECK(close(m.n2_normal, 81.0, 1e-14));
  CHECK(close(m.na_mean, complexd(27, 0), 1e-14));
}

TEST_CASE("sks moments: amplitude-squeezed coherent state") {
  const SksMoments m = sks_moments(InputParams(0, 2, kPi, 0, 1));
  const double expected = 4.0 * std::exp(-2.0) + std::sinh(1.0) * std::sinh(1.0);
  CHECK(close(m.n_mean, expected, 1e-13));
}

TEST_CASE("sks moments: generic point frozen from an independent evaluation") {
  const SksMoments m = sks_moments(InputParams(0, 1.2, kPi, 0.3, 0.8));
  CHECK(close(m.a_mean,
              complexd(0.28816072878553567, -1.5085749274151448), 1e-13));
  CHECK(close(m.a2_mean,
              complexd(-5.1462872145230385, -0.5357145745835481), 1e-13));
  CHECK(close(m.n_mean, 4.9958487859264649, 1e-13));
  CHECK(close(m.n2_normal, 55.029504378276179, 1e-13));
  CHECK(close(m.na_mean,
              complexd(0.40131412762810381, -15.339268735947927), 1e-13));
}

TEST_CASE("sks moments: oracle equivalence at a generic point") {
  const InputParams p(0, 1.2, kPi, 0.3, 0.8);
  const SksMoments closed = sks_moments(p);
  const SksMoments oracle = oracle_single_mode_moments(build_sks_state(p));
  CHECK(close(closed.a_mean, oracle.a_mean, 1e-8));
  CHECK(close(closed.a2_mean, oracle.a2_mean, 1e-8));
  CHECK(close(closed.n_mean, oracle.n_mean, 1e-8));
  CHECK(close(closed.n2_normal, oracle.n2_normal, 1e-8));
  CHECK(close(closed.na_mean, oracle.na_mean, 1e-8));
}

TEST_CASE("joint moments: vacuum second port") {
  const Moments g = joint_moments(InputParams(3, 0, kPi, 0, 0));
  CHECK(g.g1 == 9.0);
  CHECK(g.g5 == 81.0);
  CHECK(g.g2 == 0.0);
  CHECK(g.g3 == 0.0);
  CHECK(g.g4 == 0.0);
  CHECK(g.g6 == 0.0);
  CHECK(g.g7 == 0.0);
  CHECK(g.g8 == 0.0);
  CHECK(g.g9 == 0.0);
  CHECK(std::abs(g.g10) == 0.0);
  CHECK(g.n_total == 9.0);
}

TEST_CASE("joint moments: vacuum first port keeps Poisson statistics") {
  const Moments g = joint_moments(InputParams(0, 5, kPi, 0.37, 0));
  CHECK(g.g1 == 0.0);
  CHECK(g.g3 == 0.0);
  CHECK(g.g5 == 0.0);
  CHECK(g.g7 == 0.0);
  CHECK(g.g8 == 0.0);
  CHECK(g.g9 == 0.0);
  CHECK(close(g.g2, 25.0, 1e-13));
  CHECK(close(g.g4, 625.0, 1e-13));
  CHECK(std::abs(g.g10) == 0.0);
  CHECK(std::abs(g.g11) == 0.0);
  CHECK(std::abs(g.g12) == 0.0);
}

TEST_CASE("joint moments: frozen g set at a generic point") {
  const Moments g = joint_moments(InputParams(3, 1.2, kPi, 0.3, 0.8));
  CHECK(close(g.g1, 9.0, 1e-14));
  CHECK(close(g.g2, 4.9958487859264649, 1e-13));
  CHECK(close(g.g3, 1.728964372713214, 1e-13));
  CHECK(close(g.g4, 55.029504378276179, 1e-13));
  CHECK(close(g.g5, 81.0, 1e-14));
  CHECK(close(g.g6, -92.6331698614147, 1e-13));
  CHECK(close(g.g7, 44.962639073338181, 1e-13));
  CHECK(close(g.g8, 2.4078847657686229, 1e-13));
  CHECK(close(g.g9, 15.560679354418927, 1e-13));
  CHECK(close(g.g10, complexd(0, -9.0514495644908681), 1e-13));
  CHECK(close(g.g11, complexd(0, 81.463046080417811), 1e-13));
  CHECK(close(g.g12, complexd(0, 92.035612415687567), 1e-13));
}

TEST_CASE("joint moments: full oracle equivalence at a generic point") {
  const InputParams p(3, 1.2, kPi, 0.3, 0.8);
  const Moments closed = joint_moments(p);
  const Moments oracle = detail::assemble_joint(
      p.alpha_mag, oracle_single_mode_moments(build_sks_state(p)));
  CHECK(close(closed.g2, oracle.g2, 1e-8));
  CHECK(close(closed.g3, oracle.g3, 1e-8));
  CHECK(close(closed.g4, oracle.g4, 1e-8));
  CHECK(close(closed.g6, oracle.g6, 1e-8));
  CHECK(close(closed.g8, oracle.g8, 1e-8));
  CHECK(close(closed.g10, oracle.g10, 1e-8));
  CHECK(close(closed.g12, oracle.g12, 1e-8));
}

TEST_CASE("moments: gamma = 0, r = 0 collapse is exact") {
  const SksMoments m = sks_moments(InputParams(0, 1.7, kPi, 0, 0));
  CHECK(m.a_mean.real() == doctest::Approx(1.7).epsilon(1e-15));
  CHECK(m.n_mean == doctest::Approx(1.7 * 1.7).epsilon(1e-15));
  CHECK(m.n2_normal ==
        doctest::Approx(1.7 * 1.7 * 1.7 * 1.7).epsilon(1e-15));
}

TEST_CASE("moments: period pi in gamma") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double a = 3.0 * uni(rng), b = 3.0 * uni(rng);
    const double th = kTwoPi * uni(rng), gm = kPi * uni(rng);
    const double r = 1.5 * uni(rng);
    const Moments g1 = joint_moments(InputParams(a, b, th, gm, r));
    const Moments g2 = joint_moments(InputParams(a, b, th, gm + kPi, r));
    // The shifted evaluation sees sin/cos arguments offset by 2*pi*k, so the
    // agreement is absolute at the scale of the largest moment, not relative.
    const double tol = 1e-12 * std::max(1.0, std::abs(g1.g4));
    CHECK(std::abs(g1.g2 - g2.g2) <= tol);
    CHECK(std::abs(g1.g4 - g2.g4) <= tol);
    CHECK(std::abs(g1.g6 - g2.g6) <= tol);
    CHECK(std::abs(g1.g8 - g2.g8) <= tol);
    CHECK(std::abs(g1.g10 - g2.g10) <= tol);
    CHECK(std::abs(g1.g12 - g2.g12) <= tol);
  }
}

TEST_CASE("input validation rejects out-of-range parameters") {
  CHECK_THROWS_AS(InputParams(-1, 0, 0, 0, 0), range_error);
  CHECK_THROWS_AS(InputParams(0, -0.5, 0, 0, 0), range_error);
  CHECK_THROWS_AS(InputParams(0, 0, 0, 0, -0.1), range_error);
  CHECK_THROWS_AS(InputParams(201, 0, 0, 0, 0), range_error);
  CHECK_THROWS_AS(InputParams(0, 201, 0, 0, 0), range_error);
  CHECK_THROWS_AS(InputParams(0, 0, 0, 0, 10.5), range_error);
  CHECK_THROWS_AS(InputParams(0, 0, std::nan(""), 0, 0), range_error);
  CHECK_NOTHROW(InputParams(200, 200, 0, 0, 10));
}
