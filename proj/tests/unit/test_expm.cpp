#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <random>

#include "iso/expm.hpp"

using iso::matrix_exponential;
using iso::one_norm;

TEST_CASE("diagonal and nilpotent matrices") {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
  d(0, 0) = {0, 2 * std::numbers::pi};
  d(1, 1) = {0, -4 * std::numbers::pi};
  d(2, 2) = 1.5;
  const Eigen::MatrixXcd e = matrix_exponential(d);
  CHECK(std::abs(e(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(e(1, 1) - 1.0) < 1e-14);
  CHECK(std::abs(e(2, 2) - std::exp(1.5)) < 1e-13);

  Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(3, 3);
  n(1, 0) = 2.0;
  n(2, 1) = 3.0;
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Identity(3, 3) + n + 0.5 * n * n;
  CHECK((matrix_exponential(n) - expected).norm() < 1e-14);
  CHECK(matrix_exponential(Eigen::MatrixXcd(0, 0)).size() == 0);
}

TEST_CASE("agrees with Eigen's MatrixExponential across norm regimes") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (double scale : {1e-3, 0.1, 0.8, 2.0, 5.0, 40.0}) {
    for (int trial = 0; trial < 3; ++trial) {
      Eigen::MatrixXcd a(8, 8);
      for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = {g(rng), g(rng)};
      a *= scale / one_norm(a);
      const Eigen::MatrixXcd ours = matrix_exponential(a);
      const Eigen::MatrixXcd ref = a.exp();
      CAPTURE(scale);
      CHECK(one_norm(ours - ref) <= 1e-11 * std::max(1.0, one_norm(ref)));
    }
  }
}
