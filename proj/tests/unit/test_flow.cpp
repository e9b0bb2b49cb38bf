#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "iso/calibration.hpp"
#include "iso/errors.hpp"
#include "iso/flow.hpp"
#include "iso/normalform.hpp"

using namespace iso;

namespace {

NumericHamiltonian harmonic() { return NumericHamiltonian({{2, 0, std::numbers::pi}, {0, 2, std::numbers::pi}}); }

// 2 pi I + c I^2 with I = (x^2 + y^2) / 2
NumericHamiltonian action_quadratic(double c) {
  const double pi = std::numbers::pi;
  return NumericHamiltonian({{2, 0, pi}, {0, 2, pi}, {4, 0, c / 4}, {2, 2, c / 2}, {0, 4, c / 4}});
}

// Degree-k part scaled by (1/10)^(k-2) so that the floating jet map stays accurate.
JetSeries damped(const JetSeries& g) {
  JetSeries out(g.truncation());
  for (const auto& [beta, c] : g.terms()) {
    mpq_class s = 1;
    for (int k = 2; k < beta.degree(); ++k) s *= mpq_class(1, 10);
    out.set(beta, c * GaussianRational(s));
  }
  return out;
}

}  // namespace

TEST_CASE("jet time-one map") {
  CHECK(jet_time_one_map(harmonic_hamiltonian(7), 6).deviation <= 1e-10);

  JetSeries sheared = harmonic_hamiltonian(7);
  sheared.set({2, 2}, 1);
  CHECK(jet_time_one_map(sheared, 6).deviation > 1e-3);

  CHECK_THROWS_AS(jet_time_one_map(JetSeries(4), 3), NormalizationError);
  CHECK_THROWS_AS(jet_time_one_map(harmonic_hamiltonian(4), kMaxJetFlowOrder + 1), UsageError);
}

TEST_CASE("pullback generator") {
  CHECK(make_isochronous_pullback(JetSeries(8), 8) == harmonic_hamiltonian(8));

  JetSeries g(8);
  g.set({3, 0}, 1);
  g.set({0, 3}, 1);
  const JetSeries h = make_isochronous_pullback(g, 8);
  CHECK(reality_check(h));
  CHECK(h.degree_range(0, 2) == harmonic_hamiltonian(8));
  CHECK(h.coeff({3, 0}) == GradedCoefficient::term(GaussianRational(0, -6), 1));
  CHECK(jet_time_one_map(h, 7).deviation <= 1e-7);

  CHECK_THROWS_AS(make_isochronous_pullback(JetSeries::monomial({3, 0}, 1, 8), 8), UsageError);
  CHECK_THROWS_AS(make_isochronous_pullback(JetSeries::monomial({2, 0}, 1, 8) + JetSeries::monomial({0, 2}, 1, 8), 8),
                  UsageError);
}

TEST_CASE("jet flow and normal form agree on exact instances") {
  std::mt19937_64 rng(77);
  int isochronous = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 6 + trial % 5;
    JetSeries h = trial % 2 == 0 ? make_isochronous_pullback(damped(random_real_generator(rng, n + 1, 4, 0.5)), n + 1)
                                 : random_real_hamiltonian(rng, n + 1, 3, -1, 0.4);
    // The n-jet of the time-one map sees H through degree n + 1.
    if (trial % 4 == 1) h = force_vanishing(h, (n - 1) / 2);
    const bool nf = is_isochronous_nf(h, n + 1).isochronous;
    const double deviation = jet_time_one_map(h, n).deviation;
    CAPTURE(n);
    CAPTURE(deviation);
    CHECK(nf == (deviation < 1e-7));
    isochronous += nf ? 1 : 0;
  }
  CHECK(isochronous >= 6);
}

TEST_CASE("harmonic oscillator has period one") {
  for (double r : {0.1, 0.5, 2.0}) {
    const auto rt = return_time(harmonic(), r, 1e-10);
    CHECK(std::abs(rt.period - 1.0) <= 1e-9);
    CHECK(rt.steps > 0);
  }
  const std::vector<double> radii = {0.1, 0.2, 0.3};
  const auto scan = period_scan(harmonic(), radii, 1e-10);
  REQUIRE(scan.samples.size() == 3);
  for (const auto& s : scan.samples) CHECK(std::abs(s.period - 1.0) <= 1e-9);
}

TEST_CASE("action-angle oracle") {
  for (double c : {1.0, -2.0, 5.0}) {
    const std::vector<double> radii = {0.1, 0.2, 0.4};
    const auto scan = period_scan(action_quadratic(c), radii, 1e-12);
    for (const auto& s : scan.samples) {
      const double action = s.r * s.r / 2;
      CHECK(std::abs(s.period - 1.0 / (1.0 + c * action / std::numbers::pi)) <= 1e-7);
    }
    CHECK(scan.samples[0].period != scan.samples[1].period);
  }
}

TEST_CASE("energy drift and reversibility") {
  std::mt19937_64 rng(4);
  const auto h = NumericHamiltonian::from_jet(random_real_hamiltonian(rng, 6, 3, 4, 0.5));
  for (double tol : {1e-6, 1e-9, 1e-12}) {
    const auto rt = return_time(h, 0.1, tol);
    CHECK(rt.stats.max_relative_energy_drift <= 100 * tol);

    IntegrationStats stats;
    const PhaseState start{0.1, 0.02};
    const PhaseState forward = integrate(h, start, rt.period, tol, &stats);
    CHECK(stats.max_relative_energy_drift <= 100 * tol);
    const PhaseState back = integrate(h, forward, -rt.period, tol);
    CHECK(std::hypot(back.x - start.x, back.y - start.y) <= 10 * tol);
  }
}

TEST_CASE("integration errors") {
  CHECK_THROWS_AS(return_time(harmonic(), 0.1, 1e-3), UsageError);
  CHECK_THROWS_AS(return_time(harmonic(), 0.0, 1e-10), UsageError);
  // H = pi x^2 - y: x grows linearly, never returns.
  CHECK_THROWS_AS(return_time(NumericHamiltonian({{2, 0, std::numbers::pi}, {0, 1, -1.0}}), 0.1, 1e-8),
                  NonPeriodicError);
  // Pure x^2 + y^4 style with a cubic pushing the orbit to infinity.
  CHECK_THROWS_AS(return_time(NumericHamiltonian({{0, 2, std::numbers::pi}, {3, 0, -50.0}}), 1.0, 1e-8),
                  IntegrationError);
  const std::vector<double> bad = {0.2, 0.1};
  CHECK_THROWS_AS(period_scan(harmonic(), bad, 1e-10), UsageError);
}
