#include <doctest.h>

#include <cmath>
#include <numbers>

#include "iso/errors.hpp"
#include "iso/normalform.hpp"
#include "iso/solver.hpp"

using namespace iso;

namespace {

const auto kConv = ConditionConvention::calibrated();

std::vector<mpq_class> ints(std::initializer_list<long> v) {
  std::vector<mpq_class> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("normalization") {
  SUBCASE("already normalized") {
    const auto n = normalize_hamiltonian(harmonic_hamiltonian(4));
    CHECK(n.h == harmonic_hamiltonian(4));
    CHECK(n.time_scale == GradedCoefficient(1));
  }
  SUBCASE("x^2 + y^2 + x^4") {
    RealJet h(4);
    h.set({2, 0}, 1);
    h.set({0, 2}, 1);
    h.set({4, 0}, 1);
    const auto n = normalize_hamiltonian(h);
    RealJet expected(4);
    expected.set({2, 0}, GradedCoefficient::pi());
    expected.set({0, 2}, GradedCoefficient::pi());
    expected.set({4, 0}, GradedCoefficient::pi());
    CHECK(n.h == real_to_complex(expected));
    CHECK(n.time_scale == GradedCoefficient::pi(-1));
  }
  SUBCASE("rejections") {
    RealJet aniso(2);
    aniso.set({2, 0}, 1);
    aniso.set({0, 2}, 2);
    CHECK_THROWS_AS(normalize_hamiltonian(aniso), UnsupportedNormalizationError);
    RealJet indefinite(2);
    indefinite.set({2, 0}, -1);
    indefinite.set({0, 2}, -1);
    CHECK_THROWS_AS(normalize_hamiltonian(indefinite), UnsupportedNormalizationError);
    RealJet linear(2);
    linear.set({1, 0}, 1);
    linear.set({2, 0}, 1);
    linear.set({0, 2}, 1);
    CHECK_THROWS_AS(normalize_hamiltonian(linear), UnsupportedNormalizationError);
  }
}

TEST_CASE("radial family") {
  const RadialFamily fam{GaussianRational(1, 1), GaussianRational(2, -1), {{3, GradedCoefficient(5)}}};
  const JetSeries h = fam.assemble(6);
  CHECK(reality_check(h));
  CHECK(h.coeff({0, 4}) == GradedCoefficient(GaussianRational(1, -1)));
  CHECK(h.coeff({3, 3}) == GradedCoefficient(5));
}

TEST_CASE("example 1 trivial case") {
  const auto rep = solve_example1(0, 0, 5, kConv);
  for (const auto& [j, c] : rep.solved) CHECK(c.is_zero());
  CHECK(rep.radius.infinite_radius);
}

TEST_CASE("example 1, a = 1, b = 0") {
  const auto rep = solve_example1(1, 0, 3, kConv);
  REQUIRE(rep.solved.size() == 2);
  CHECK(rep.solved.at(3) == GradedCoefficient::term(2, -1));
  CHECK(rep.solved.at(4).is_zero());
  for (const auto& [d, r] : rep.residuals) CHECK(r.is_zero());
  CHECK(is_isochronous_nf(rep.hamiltonian, 8).isochronous);
  CHECK(rep.hamiltonian.truncation() == 8);
}

TEST_CASE("example 1 with complex data") {
  const auto rep = solve_example1(GaussianRational(mpq_class(1, 2), 1), GaussianRational(0, mpq_class(-1, 3)), 5, kConv);
  for (const auto& [j, c] : rep.solved) CHECK(c.is_real());
  CHECK(is_isochronous_nf(rep.hamiltonian, rep.hamiltonian.truncation()).isochronous);
}

TEST_CASE("solutions are unique") {
  const auto rep = solve_example1(1, 1, 6, kConv);
  for (int j : {3, 5, 7}) {
    RadialFamily fam{1, 1, rep.solved};
    fam.phi[j] += GradedCoefficient(1);
    const auto reports = check_isochronous(fam.assemble(rep.hamiltonian.truncation()), j - 1, kConv);
    CHECK_FALSE(reports.back().vanishes());
    for (std::size_t d = 0; d + 1 < reports.size(); ++d) CHECK(reports[d].vanishes());
  }
}

TEST_CASE("solver degeneracy under a mismatched convention is reported") {
  // With s <= d the cubic-free family still solves; the check is that every
  // convention either solves consistently or raises a typed error.
  for (const auto& conv : ConditionConvention::all()) {
    try {
      const auto rep = solve_example1(1, 0, 4, conv);
      for (const auto& [d, r] : rep.residuals) CHECK(r.is_zero());
    } catch (const SolverDegeneracyError&) {
    }
  }
  CHECK_THROWS_AS(solve_example1(1, 0, 1, kConv), UsageError);
}

TEST_CASE("example 2") {
  SUBCASE("f = 1 + u") {
    const auto rep = solve_example2(ints({1, 1}), 2, kConv);
    CHECK(rep.time_scale == GradedCoefficient::pi(-1));
    CHECK(rep.solved.at(2) == GradedCoefficient(GaussianRational(mpq_class(-1, 3))));
    for (const auto& [d, r] : rep.residuals) CHECK(r.is_zero());
    CHECK(is_isochronous_nf(rep.hamiltonian, 6).isochronous);
  }
  SUBCASE("swapping f and phi returns the original f") {
    const auto f = std::vector<mpq_class>{1, 1, mpq_class(1, 2), mpq_class(-1, 5), 2};
    const auto rep = solve_example2(f, 3, kConv);
    std::vector<mpq_class> phi = {1, 1};
    for (const auto& [j, c] : rep.solved) {
      REQUIRE(c.is_real());
      REQUIRE(c.terms().size() <= 1);
      phi.push_back(c.is_zero() ? mpq_class(0) : c.terms()[0].value.re());
    }
    const auto back = solve_example2(phi, 3, kConv);
    for (const auto& [j, c] : back.solved) CHECK(c == GradedCoefficient(GaussianRational(f[static_cast<std::size_t>(j)])));
  }
  SUBCASE("bad f") { CHECK_THROWS_AS(solve_example2(ints({1, 2}), 2, kConv), UsageError); }
}

TEST_CASE("radius estimates") {
  std::map<int, double> ones;
  for (int j = 1; j <= 10; ++j) ones[j] = 1.0;
  for (const auto& e : radius_estimate(ones).estimates) CHECK(e.value == doctest::Approx(1.0));

  std::map<int, double> entire;
  double f = 1.0;
  for (int j = 1; j <= 12; ++j) entire[j] = (f /= j);
  const auto r = radius_estimate(entire);
  for (std::size_t i = 1; i < r.estimates.size(); ++i) CHECK(r.estimates[i].value > r.estimates[i - 1].value);

  std::map<int, double> zeros = {{3, 0.0}, {4, 0.0}};
  CHECK(radius_estimate(zeros).infinite_radius);
  std::map<int, double> two = {{3, 1.0}, {4, 2.0}};
  CHECK_THROWS_AS(radius_estimate(two), UsageError);

  CHECK(monotone_decreasing({{3, 2.0}, {5, 1.5}, {7, 1.0}}, 3, 7));
  CHECK_FALSE(monotone_decreasing({{3, 2.0}, {5, 2.5}, {7, 1.0}}, 3, 7));
  CHECK_FALSE(monotone_decreasing({{3, 2.0}}, 3, 7));
}

TEST_CASE("example 1 divergence trend is stable across d_max") {
  for (int d_max : {8, 10, 12}) {
    const auto rep = solve_example1(1, 0, d_max, kConv);
    REQUIRE(rep.radius_available);
    CHECK(monotone_decreasing(rep.radius.estimates, 6, d_max + 1));
  }
}
