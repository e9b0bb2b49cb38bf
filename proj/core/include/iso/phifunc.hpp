#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "iso/errors.hpp"
#include "iso/graded.hpp"

namespace iso {

// Point xi = 2 pi i n of the integer lattice, n in Z^k.
struct ResonancePoint {
  std::vector<int> n;

  int k() const { return static_cast<int>(n.size()); }
};

// Index interval {lo, ..., hi}, 1-based and inclusive.
struct Interval {
  int lo = 1;
  int hi = 1;

  friend bool operator==(const Interval&, const Interval&) = default;
};

struct ResonanceStructure {
  std::vector<Interval> zero_intervals;  // every interval whose xi-sum vanishes
  std::vector<Interval> minimal;         // the minimal generating set
  // Complete friendly collections: maximal chains of adjacent minimal
  // intervals; they partition `minimal`.
  std::vector<std::vector<Interval>> collections;

  int tau() const { return static_cast<int>(collections.size()); }
};

enum class RhoSign { plus, minus };

// rho^+_{m,n,eps} = (eps + xi_m)(eps + xi_m + xi_{m+1}) ... (eps + xi_m + ... + xi_n)
// rho^-_{m,n,eps} = (-1)^{n-m+1} (xi_m + ... + xi_n + eps) ... (xi_n + eps)
// Indices are 1-based; n = m - 1 gives the empty product 1.
template <class T>
T rho(RhoSign sign, int m, int n, const T& eps, std::span<const T> xi) {
  const int len = static_cast<int>(xi.size());
  if (m < 1 || n < m - 1 || n > len) {
    throw UsageError("rho: indices out of range (m=" + std::to_string(m) + ", n=" + std::to_string(n) +
                     ", k=" + std::to_string(len) + ")");
  }
  T product(1);
  if (sign == RhoSign::plus) {
    T partial = eps;
    for (int j = m; j <= n; ++j) {
      partial = partial + xi[static_cast<std::size_t>(j - 1)];
      product = product * partial;
    }
  } else {
    T partial = eps;
    for (int j = n; j >= m; --j) {
      partial = partial + xi[static_cast<std::size_t>(j - 1)];
      product = product * (-partial);
    }
  }
  return product;
}

// Phi_k(xi) = sum_{l=1}^k (e^{xi_l + ... + xi_k} - 1) / (rho^-_{1,l-1,0} rho^+_{l,k,0}).
// Works for any complex scalar with exp found by ADL or in std. Throws
// ResonanceError when a denominator is exactly zero.
template <class C>
C phi_closed(std::span<const C> xi) {
  using std::exp;
  const int k = static_cast<int>(xi.size());
  if (k < 1) throw UsageError("phi_closed: empty argument");
  const C zero(0);
  C sum(0);
  for (int l = 1; l <= k; ++l) {
    C tail(0);
    for (int j = l; j <= k; ++j) tail = tail + xi[static_cast<std::size_t>(j - 1)];
    const C den = rho<C>(RhoSign::minus, 1, l - 1, zero, xi) * rho<C>(RhoSign::plus, l, k, zero, xi);
    if (den == zero) {
      throw ResonanceError("phi_closed: denominator vanishes at l = " + std::to_string(l) +
                           "; use phi_at_resonance for resonant points");
    }
    sum = sum + (exp(tail) - C(1)) / den;
  }
  return sum;
}

inline std::complex<double> phi_closed(std::span<const std::complex<double>> xi) {
  return phi_closed<std::complex<double>>(xi);
}

// Maximum supported k for the exhaustive interval analysis.
inline constexpr int kMaxResonanceLength = 6;

ResonanceStructure resonance_structure(const ResonancePoint& p);

// Exact value of Phi_k at xi = 2 pi i n, as the sum over complete friendly
// collections of the (m_j - 1)-th Taylor coefficient of be(x) N_j(x), with
// be(x) = (e^x - 1)/x. Zero when no interval sum vanishes.
GradedCoefficient phi_at_resonance(const ResonancePoint& p);

std::vector<std::complex<double>> lattice_point(const ResonancePoint& p);

}  // namespace iso
