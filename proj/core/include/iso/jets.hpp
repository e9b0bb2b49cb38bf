#pragma once

#include <compare>
#include <complex>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "iso/graded.hpp"

namespace iso {

// Exponent pair (b1, b2) of the monomial z^b1 zbar^b2 (or x^b1 y^b2 for
// real-coordinate jets). Ordered by total degree, then by b1.
struct MultiIndex {
  int b1 = 0;
  int b2 = 0;

  constexpr int degree() const { return b1 + b2; }
  constexpr MultiIndex swapped() const { return {b2, b1}; }
  constexpr bool radial() const { return b1 == b2; }

  friend constexpr bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend constexpr std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    return a.b1 <=> b.b1;
  }
  friend constexpr MultiIndex operator+(MultiIndex a, MultiIndex b) { return {a.b1 + b.b1, a.b2 + b.b2}; }
};

struct ComplexCoordinates {};
struct RealCoordinates {};

// Polynomial in two variables truncated at total degree `truncation()`.
// Monomials above the truncation are never stored, nor are zero coefficients.
template <class Coordinates>
class BasicJet {
 public:
  using Terms = std::map<MultiIndex, GradedCoefficient>;

  explicit BasicJet(int truncation);

  static BasicJet monomial(MultiIndex beta, GradedCoefficient coeff, int truncation);

  int truncation() const { return truncation_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Zero when absent.
  const GradedCoefficient& coeff(MultiIndex beta) const;
  // Throws UsageError for negative exponents or degree above the truncation.
  void set(MultiIndex beta, GradedCoefficient value);
  void add(MultiIndex beta, const GradedCoefficient& value);

  BasicJet homogeneous_part(int degree) const;
  // Terms with min_degree <= |beta| <= max_degree.
  BasicJet degree_range(int min_degree, int max_degree) const;
  // Re-truncates (may lower or raise the order; raising adds no terms).
  BasicJet with_truncation(int truncation) const;
  BasicJet without_constant() const { return degree_range(1, truncation_); }

  BasicJet& operator+=(const BasicJet& o);
  BasicJet& operator-=(const BasicJet& o);
  BasicJet& operator*=(const GradedCoefficient& c);
  friend BasicJet operator+(BasicJet a, const BasicJet& b) { return a += b; }
  friend BasicJet operator-(BasicJet a, const BasicJet& b) { return a -= b; }
  friend BasicJet operator*(BasicJet a, const GradedCoefficient& c) { return a *= c; }
  friend BasicJet operator*(const GradedCoefficient& c, BasicJet a) { return a *= c; }
  BasicJet operator-() const;

  friend bool operator==(const BasicJet&, const BasicJet&) = default;

 private:
  void require_same_order(const BasicJet& o, const char* op) const;

  int truncation_;
  Terms terms_;
};

using JetSeries = BasicJet<ComplexCoordinates>;
using RealJet = BasicJet<RealCoordinates>;

extern template class BasicJet<ComplexCoordinates>;
extern template class BasicJet<RealCoordinates>;

// Truncated product; both factors must share the truncation order.
JetSeries multiply(const JetSeries& f, const JetSeries& g);
RealJet multiply(const RealJet& f, const RealJet& g);

// {f, g} = i (f_zbar g_z - f_z g_zbar), truncated at the common order.
JetSeries poisson_bracket(const JetSeries& f, const JetSeries& g);
// Same bracket with an explicit output truncation; operands may have any order.
JetSeries poisson_bracket(const JetSeries& f, const JetSeries& g, int truncation);

// {z^a zbar^b, z^c zbar^d} = i (b c - a d) z^{a+c-1} zbar^{b+d-1}.
constexpr int bracket_weight(MultiIndex a, MultiIndex b) { return a.b2 * b.b1 - a.b1 * b.b2; }

// Substitutes x = (z + zbar)/sqrt2, y = -i (z - zbar)/sqrt2.
JetSeries real_to_complex(const RealJet& f);
// Inverse substitution z = (x + i y)/sqrt2, zbar = (x - i y)/sqrt2.
RealJet complex_to_real(const JetSeries& f);

// coeff(b1, b2) == conj(coeff(b2, b1)) for every stored index.
bool reality_check(const JetSeries& f);

// The quadratic normalization H_2 = 2 pi z zbar at truncation N.
JetSeries harmonic_hamiltonian(int truncation);

// Throws NormalizationError unless the degree <= 2 part of h is exactly
// 2 pi z zbar (constant terms are ignored).
void require_normalized(const JetSeries& h);

// Matrix of phi -> {F, phi} on the monomial basis 1 <= |beta| <= N (ordered
// by (degree, b1)), truncated at N and evaluated at the floating value of pi.
// All terms of F contribute, so an exact N-jet action needs F up to degree N+1.
struct LieMatrix {
  int order = 0;
  std::vector<MultiIndex> basis;
  Eigen::MatrixXcd entries;

  // Position of beta in the basis, or -1.
  int index_of(MultiIndex beta) const;
  Eigen::VectorXcd coefficient_vector(const JetSeries& phi) const;
};

std::vector<MultiIndex> jet_basis(int order);
LieMatrix lie_operator_matrix(const JetSeries& f, int order);

}  // namespace iso
