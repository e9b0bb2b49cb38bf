#include "iso/expm.hpp"

#include <array>
#include <cmath>
#include <complex>

namespace iso {

namespace {

// The time-one jet maps are exponentials of strongly non-normal matrices
// whose exact value is often the identity; squaring amplifies rounding, so
// the work is done in extended precision and rounded once at the end.
using Real = long double;
using Scalar = std::complex<Real>;
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

struct PadeParts {
  Matrix u;
  Matrix v;
};

template <std::size_t N>
PadeParts pade_low(const Matrix& a, const std::array<Real, N>& b) {
  // Orders 3..9: U = A * sum_{odd j} b_j A^{j-1}, V = sum_{even j} b_j A^j.
  const auto n = a.rows();
  const Matrix a2 = a * a;
  Matrix power = Matrix::Identity(n, n);
  Matrix odd = Matrix::Zero(n, n);
  Matrix even = Matrix::Zero(n, n);
  for (std::size_t j = 0; j < N; j += 2) {
    even += Scalar(b[j]) * power;
    odd += Scalar(b[j + 1]) * power;
    power = power * a2;
  }
  return {a * odd, even};
}

PadeParts pade13(const Matrix& a) {
  static constexpr std::array<Real, 14> b = {
      64764752532480000.0L, 32382376266240000.0L, 7771770303897600.0L, 1187353796428800.0L, 129060195264000.0L,
      10559470521600.0L,    670442572800.0L,      33522128640.0L,      1323241920.0L,       40840800.0L,
      960960.0L,            16380.0L,             182.0L,              1.0L};
  auto c = [](std::size_t j) { return Scalar(b[j]); };
  const auto n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  Matrix u_inner = a6 * (c(13) * a6 + c(11) * a4 + c(9) * a2);
  u_inner += c(7) * a6 + c(5) * a4 + c(3) * a2 + c(1) * id;
  Matrix v = a6 * (c(12) * a6 + c(10) * a4 + c(8) * a2);
  v += c(6) * a6 + c(4) * a4 + c(2) * a2 + c(0) * id;
  return {a * u_inner, v};
}

}  // namespace

double one_norm(const Eigen::MatrixXcd& a) {
  double best = 0.0;
  for (Eigen::Index c = 0; c < a.cols(); ++c) best = std::max(best, a.col(c).cwiseAbs().sum());
  return best;
}

Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& input) {
  // Thresholds for the unit roundoff of IEEE double; applying them in
  // extended precision only makes the approximant more accurate.
  static constexpr std::array<double, 4> theta = {1.495585217958292e-2, 2.539398330063230e-1,
                                                  9.504178996162932e-1, 2.097847961257068e0};
  static constexpr double theta13 = 5.371920351148152;
  if (input.size() == 0) return input;
  const double norm = one_norm(input);
  const Matrix a = input.cast<Scalar>();

  PadeParts parts;
  int squarings = 0;
  if (norm <= theta[0]) {
    parts = pade_low(a, std::array<Real, 4>{120.0L, 60.0L, 12.0L, 1.0L});
  } else if (norm <= theta[1]) {
    parts = pade_low(a, std::array<Real, 6>{30240.0L, 15120.0L, 3360.0L, 420.0L, 30.0L, 1.0L});
  } else if (norm <= theta[2]) {
    parts = pade_low(a, std::array<Real, 8>{17297280.0L, 8648640.0L, 1995840.0L, 277200.0L, 25200.0L, 1512.0L,
                                            56.0L, 1.0L});
  } else if (norm <= theta[3]) {
    parts = pade_low(a, std::array<Real, 10>{17643225600.0L, 8821612800.0L, 2075673600.0L, 302702400.0L,
                                             30270240.0L, 2162160.0L, 110880.0L, 3960.0L, 90.0L, 1.0L});
  } else {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / theta13))));
    parts = pade13(a * Scalar(std::ldexp(1.0L, -squarings)));
  }
  Matrix result = (parts.v - parts.u).partialPivLu().solve(parts.v + parts.u);
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result.cast<std::complex<double>>();
}

}  // namespace iso
