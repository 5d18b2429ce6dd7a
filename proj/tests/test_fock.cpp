#include <doctest.h>

#include <cmath>
#include <complex>
#include <tuple>

#include "mzi/bounds.hpp"
#include "mzi/fock.hpp"
#include "mzi/moments.hpp"
#include "mzi/sensitivity.hpp"

using namespace mzi;

namespace {
bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-10});
}
bool close(complexd a, complexd b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-10});
}
}  // namespace

TEST_CASE("coherent state amplitudes follow the Poisson profile") {
  const FockState st = build_sks_state(InputParams(0, 1.3, 0, 0, 0));
  REQUIRE(st.dim >= 10);
  const double b = 1.3;
  double norm = 0.0;
  for (int n = 0; n < st.dim; ++n) norm += std::norm(st.amplitudes[n]);
  CHECK(close(norm, 1.0, 1e-12));
  for (int n = 0; n < 10; ++n) {
    const double expect = std::exp(-b * b / 2.0 + n * std::log(b) -
                                   0.5 * std::lgamma(n + 1.0));
    CHECK(close(st.amplitudes[n].real(), expect, 1e-10));
    CHECK(std::abs(st.amplitudes[n].imag()) < 1e-14);
  }
}

TEST_CASE("squeezed vacuum populates only even levels") {
  const FockState st = build_sks_state(InputParams(0, 0, kPi, 0, 1.0));
  for (int n = 1; n < st.dim; n += 2) {
    CHECK(std::abs(st.amplitudes[n]) < 1e-13);
  }
  const SksMoments m = oracle_single_mode_moments(st);
  CHECK(close(m.n_mean, std::sinh(1.0) * std::sinh(1.0), 1e-10));
}

TEST_CASE("single-mode moments of a plain coherent state") {
  const FockState st = build_sks_state(InputParams(0, 2, 0, 0, 0));
  const SksMoments m = oracle_single_mode_moments(st);
  CHECK(close(m.a_mean, complexd(2, 0), 1e-10));
  CHECK(close(m.a2_mean, complexd(4, 0), 1e-10));
  CHECK(close(m.n_mean, 4.0, 1e-10));
  CHECK(close(m.n2_normal, 16.0, 1e-10));
}

TEST_CASE("oracle moments match the closed forms at a hard point") {
  const InputParams p(0, 2.5, 2.1, 0.45, 1.1);
  const SksMoments closed = sks_moments(p);
  const SksMoments oracle = oracle_single_mode_moments(build_sks_state(p));
  CHECK(close(closed.a_mean, oracle.a_mean, 1e-8));
  CHECK(close(closed.a2_mean, oracle.a2_mean, 1e-8));
  CHECK(close(closed.n_mean, oracle.n_mean, 1e-8));
  CHECK(close(closed.n2_normal, oracle.n2_normal, 1e-8));
  CHECK(close(closed.na_mean, oracle.na_mean, 1e-8));
}

TEST_CASE("interferometer on double vacuum stays vacuum") {
  const FockState vac = build_sks_state(InputParams(0, 0, 0, 0, 0));
  const TwoModeState out =
      oracle_interferometer(0.0, vac, 1.3, Convention::WithGlobalPhase);
  CHECK(close(std::abs(out.amplitudes(0, 0)), 1.0, 1e-12));
  double rest = 0.0;
  for (int i = 0; i < out.amplitudes.rows(); ++i)
    for (int j = 0; j < out.amplitudes.cols(); ++j)
      if (i || j) rest += std::norm(out.amplitudes(i, j));
  CHECK(rest < 1e-20);
}

TEST_CASE("coherent amplitudes split as expected through the interferometer") {
  // Coherent (x) vacuum input: the outputs are coherent with
  // |<a3>|^2 + |<a4>|^2 = alpha^2 for every phi.
  const FockState vac = build_sks_state(InputParams(0, 0, 0, 0, 0));
  for (double phi : {0.0, 0.7, kPi / 2.0, 2.9}) {
    const TwoModeState out =
        oracle_interferometer(2.0, vac, phi, Convention::WithGlobalPhase);
    const DetectorMoments m = two_mode_moments(out);
    CHECK(close(m.n3 + m.n4, 4.0, 1e-9));
    CHECK(close(std::norm(m.a3) + m.n4, 4.0, 1e-9));
  }
}

TEST_CASE("photon number is conserved by the interferometer") {
  const InputParams p(0, 1.5, kPi, 0.3, 0.6);
  const FockState sks = build_sks_state(p);
  const double n_in = 4.0 + oracle_single_mode_moments(sks).n_mean;
  for (double phi : {0.4, 1.8, 5.1}) {
    const DetectorMoments m = two_mode_moments(
        oracle_interferometer(2.0, sks, phi, Convention::WithGlobalPhase));
    CHECK(close(m.n3 + m.n4, n_in, 1e-8));
  }
}

TEST_CASE("oracle detector statistics match the closed-form stats") {
  const InputParams p(2, 1, kPi, 0.2, 0.5);
  const double phi = kPi / 3.0;
  const FockState sks = build_sks_state(p);
  const DetectorMoments m = two_mode_moments(
      oracle_interferometer(2.0, sks, phi, Convention::WithGlobalPhase));
  const SignalStats sid = signal_stats(Scheme::Sid, p, phi);
  CHECK(close(detector_mean(Scheme::Sid, m), sid.mean, 1e-8));
  CHECK(close(detector_variance(Scheme::Sid, m), sid.variance, 1e-8));
  const SignalStats idd = signal_stats(Scheme::Idd, p, phi);
  CHECK(close(detector_mean(Scheme::Idd, m), idd.mean, 1e-8));
  CHECK(close(detector_variance(Scheme::Idd, m), idd.variance, 1e-8));
  const SignalStats hd = signal_stats(Scheme::Hd, p, phi);
  CHECK(close(detector_mean(Scheme::Hd, m), hd.mean, 1e-8));
  CHECK(close(detector_variance(Scheme::Hd, m), hd.variance, 1e-8));
}

TEST_CASE("results are stable when the truncation dimension grows") {
  const InputParams p(0, 1.5, kPi, 0.3, 0.6);
  const FockState base = build_sks_state(p);
  const FockState bigger = build_sks_state(p, base.dim + base.dim / 4);
  const SksMoments m1 = oracle_single_mode_moments(base);
  const SksMoments m2 = oracle_single_mode_moments(bigger);
  CHECK(close(m1.n2_normal, m2.n2_normal, 1e-9));
  CHECK(close(m1.a2_mean, m2.a2_mean, 1e-9));
}

TEST_CASE("fixed-dimension builder rejects impossible truncations") {
  CHECK_THROWS_AS(build_sks_state(InputParams(0, 5, kPi, 0, 0), 8),
                  truncation_error);
}

TEST_CASE("global-phase convention does not change photon statistics") {
  const InputParams p(0, 1.2, 0.9, 0.25, 0.4);
  const FockState sks = build_sks_state(p);
  for (double phi : {0.6, 2.2}) {
    const DetectorMoments a = two_mode_moments(
        oracle_interferometer(1.5, sks, phi, Convention::WithGlobalPhase));
    const DetectorMoments b = two_mode_moments(
        oracle_interferometer(1.5, sks, phi, Convention::WithoutGlobalPhase));
    CHECK(close(a.n3, b.n3, 1e-10));
    CHECK(close(a.n4, b.n4, 1e-10));
    CHECK(close(a.n3_sq, b.n3_sq, 1e-10));
    CHECK(close(a.n4_sq, b.n4_sq, 1e-10));
    CHECK(close(a.n3n4, b.n3n4, 1e-10));
  }
}

TEST_CASE("oracle sensitivity reproduces the shot-noise limit") {
  const Sensitivity s = oracle_sensitivity(
      Scheme::Idd, InputParams(3, 0, kPi, 0, 0), kPi / 2.0,
      Convention::WithGlobalPhase);
  CHECK(close(s.delta_phi, 1.0 / 3.0, 1e-7));
}

TEST_CASE("oracle sensitivity matches the closed form with squeezing") {
  const InputParams p(2, 1, kPi, 0.2, 0.5);
  for (Scheme scheme : {Scheme::Sid, Scheme::Idd, Scheme::Hd}) {
    const Sensitivity closed = phase_sensitivity(scheme, p, 1.2);
    const Sensitivity oracle =
        oracle_sensitivity(scheme, p, 1.2, Convention::WithGlobalPhase);
    CHECK(close(closed.delta_phi, oracle.delta_phi, 1e-6));
  }
}

TEST_CASE("homodyne beats the shot-noise limit with squeezing") {
  const InputParams p(4, 0, kPi, 0, 1.0);
  const Sensitivity s =
      oracle_sensitivity(Scheme::Hd, p, 0.0, Convention::WithGlobalPhase);
  const Bounds b = benchmark_limits(p);
  CHECK(s.delta_phi < b.snl);
}

TEST_CASE("oracle qfi agrees with the closed form") {
  CHECK(close(oracle_qfi(InputParams(3, 0, kPi, 0, 0)), 18.0, 1e-9));
  CHECK(close(oracle_qfi(InputParams(0, 0, kPi, 0, 1.0)),
              qfi(InputParams(0, 0, kPi, 0, 1.0)), 1e-8));
  const InputParams p(1.5, 1.2, kPi, 0.3, 0.8);
  CHECK(close(oracle_qfi(p), qfi(p), 1e-8));
}

TEST_CASE("coherent_dim grows with the amplitude and shrinks with budget") {
  CHECK(coherent_dim(0.0, 1e-10) >= 1);
  CHECK(coherent_dim(2.0, 1e-10) > coherent_dim(1.0, 1e-10));
  CHECK(coherent_dim(2.0, 1e-14) > coherent_dim(2.0, 1e-6));
}
