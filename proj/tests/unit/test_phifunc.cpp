#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "iso/errors.hpp"
#include "iso/phifunc.hpp"
#include "oracles.hpp"

using namespace iso;
using cd = std::complex<double>;

namespace {

cd phi(std::initializer_list<cd> xi) {
  std::vector<cd> v(xi);
  return phi_closed(std::span<const cd>(v));
}

std::vector<cd> random_point(std::mt19937_64& rng, int k, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<cd> xi;
  for (int j = 0; j < k; ++j) xi.emplace_back(u(rng), u(rng));
  return xi;
}

}  // namespace

TEST_CASE("rho products") {
  const std::vector<cd> xi = {{1, 2}, {-0.5, 0.25}, {3, -1}};
  const std::span<const cd> s(xi);
  const cd eps(0.1, -0.2);
  CHECK(rho(RhoSign::plus, 1, 1, eps, s) == eps + xi[0]);
  CHECK(rho(RhoSign::plus, 2, 1, eps, s) == cd(1));
  CHECK(rho(RhoSign::minus, 3, 2, eps, s) == cd(1));
  CHECK(std::abs(rho(RhoSign::minus, 1, 2, cd(0), s) - (xi[0] + xi[1]) * xi[1]) < 1e-15);
  CHECK_THROWS_AS(rho(RhoSign::plus, 0, 1, eps, s), UsageError);
  CHECK_THROWS_AS(rho(RhoSign::plus, 2, 4, eps, s), UsageError);
}

TEST_CASE("reversal exchanges rho^+ and (-1)^k rho^-") {
  std::mt19937_64 rng(3);
  for (int k = 1; k <= 5; ++k) {
    const auto xi = random_point(rng, k, 2.0);
    std::vector<cd> rev(xi.rbegin(), xi.rend());
    const cd plus = rho(RhoSign::plus, 1, k, cd(0), std::span<const cd>(xi));
    const cd minus_rev = rho(RhoSign::minus, 1, k, cd(0), std::span<const cd>(rev));
    CHECK(std::abs(plus - std::pow(-1.0, k) * minus_rev) <= 1e-12 * std::abs(plus));
  }
}

TEST_CASE("closed form basics") {
  CHECK(std::abs(phi({1.0}) - (std::exp(1.0) - 1.0)) < 1e-15);
  CHECK_THROWS_AS(phi({0.0}), ResonanceError);
  CHECK_THROWS_AS(phi({{0, 2 * std::numbers::pi}, {0, -2 * std::numbers::pi}}), ResonanceError);
  const std::vector<cd> xi = {1.0, -3.0};
  CHECK(oracle::close(phi({1.0, -3.0}), oracle::phi_series(xi, 200), 1e-13));
}

TEST_CASE("closed form against series and Taylor oracles") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + trial % 5;
    const auto xi = random_point(rng, k, 2.0);
    const cd value = phi_closed(std::span<const cd>(xi));
    // Both oracles lose digits to cancellation when |Phi| is small.
    CHECK(oracle::close(value, oracle::phi_taylor(xi), 1e-9));
    CHECK(oracle::close(value, oracle::phi_series(xi), 1e-9));
  }
}

TEST_CASE("resonance structure") {
  SUBCASE("k = 2, (1, -1)") {
    const auto s = resonance_structure({{1, -1}});
    CHECK(s.minimal == std::vector<Interval>{{1, 2}});
    CHECK(s.tau() == 1);
  }
  SUBCASE("k = 1, (0)") {
    const auto s = resonance_structure({{0}});
    CHECK(s.minimal == std::vector<Interval>{{1, 1}});
    CHECK(s.tau() == 1);
  }
  SUBCASE("k = 4, (1, -1, 2, -2)") {
    const auto s = resonance_structure({{1, -1, 2, -2}});
    CHECK(s.zero_intervals == std::vector<Interval>{{1, 2}, {1, 4}, {3, 4}});
    CHECK(s.minimal == std::vector<Interval>{{1, 2}, {3, 4}});
    REQUIRE(s.tau() == 1);
    CHECK(s.collections[0] == std::vector<Interval>{{1, 2}, {3, 4}});
  }
  SUBCASE("separated chains") {
    const auto s = resonance_structure({{0, 5, 0}});
    CHECK(s.minimal == std::vector<Interval>{{1, 1}, {3, 3}});
    CHECK(s.tau() == 2);
  }
  CHECK_THROWS_AS(resonance_structure({{}}), UsageError);
  CHECK_THROWS_AS(resonance_structure({std::vector<int>(kMaxResonanceLength + 1, 0)}), UsageError);
}

TEST_CASE("exact values at resonance") {
  CHECK(phi_at_resonance({{0}}) == GradedCoefficient(1));
  CHECK(phi_at_resonance({{5}}).is_zero());
  CHECK(phi_at_resonance({{2, 3}}).is_zero());
  // Phi_k(0) = 1/k!
  CHECK(phi_at_resonance({{0, 0, 0}}) == GradedCoefficient(GaussianRational(mpq_class(1, 6))));
  const auto v = phi_at_resonance({{1, -1}});
  CHECK(oracle::close(v.evaluate(), oracle::phi_numeric_limit({1, -1}), 1e-10));
}

TEST_CASE("resonant values match the numeric limit") {
  const std::vector<std::vector<int>> points = {
      {1, -1, 2}, {0, 1, -1}, {2, -2, 0}, {1, 0, -1}, {3, -1, -2, 0}, {1, -1, 1, -1}, {0, 0, 1}, {-2, 1, 1, 3}};
  for (const auto& n : points) {
    CAPTURE(n.size());
    const cd exact = phi_at_resonance({n}).evaluate();
    CHECK(oracle::close(exact, oracle::phi_numeric_limit(n), 1e-8));
  }
}
