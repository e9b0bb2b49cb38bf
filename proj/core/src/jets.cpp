#include "iso/jets.hpp"

#include <string>

#include "iso/errors.hpp"

namespace iso {

namespace {

const GradedCoefficient& zero_coefficient() {
  static const GradedCoefficient zero;
  return zero;
}

mpz_class binomial(int n, int k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

// i^power for any integer power.
GaussianRational i_power(int power) {
  switch (((power % 4) + 4) % 4) {
    case 0: return 1;
    case 1: return GaussianRational::i();
    case 2: return -1;
    default: return -GaussianRational::i();
  }
}

template <class Jet>
Jet multiply_impl(const Jet& f, const Jet& g) {
  if (f.truncation() != g.truncation()) {
    throw UsageError("multiply: truncation orders differ (" + std::to_string(f.truncation()) + " vs " +
                     std::to_string(g.truncation()) + ")");
  }
  const int order = f.truncation();
  Jet out(order);
  for (const auto& [a, ca] : f.terms()) {
    for (const auto& [b, cb] : g.terms()) {
      if (a.degree() + b.degree() > order) continue;
      out.add(a + b, ca * cb);
    }
  }
  return out;
}

}  // namespace

template <class C>
BasicJet<C>::BasicJet(int truncation) : truncation_(truncation) {
  if (truncation < 0) throw UsageError("negative truncation order");
}

template <class C>
BasicJet<C> BasicJet<C>::monomial(MultiIndex beta, GradedCoefficient coeff, int truncation) {
  BasicJet out(truncation);
  out.set(beta, std::move(coeff));
  return out;
}

template <class C>
const GradedCoefficient& BasicJet<C>::coeff(MultiIndex beta) const {
  auto it = terms_.find(beta);
  return it == terms_.end() ? zero_coefficient() : it->second;
}

template <class C>
void BasicJet<C>::set(MultiIndex beta, GradedCoefficient value) {
  if (beta.b1 < 0 || beta.b2 < 0) throw UsageError("negative exponent in multi-index");
  if (beta.degree() > truncation_) {
    throw UsageError("monomial of degree " + std::to_string(beta.degree()) + " exceeds truncation " +
                     std::to_string(truncation_));
  }
  if (value.is_zero()) {
    terms_.erase(beta);
  } else {
    terms_[beta] = std::move(value);
  }
}

template <class C>
void BasicJet<C>::add(MultiIndex beta, const GradedCoefficient& value) {
  if (value.is_zero()) return;
  if (beta.b1 < 0 || beta.b2 < 0) throw UsageError("negative exponent in multi-index");
  if (beta.degree() > truncation_) {
    throw UsageError("monomial of degree " + std::to_string(beta.degree()) + " exceeds truncation " +
                     std::to_string(truncation_));
  }
  auto [it, inserted] = terms_.try_emplace(beta, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

template <class C>
BasicJet<C> BasicJet<C>::homogeneous_part(int degree) const {
  return degree_range(degree, degree);
}

template <class C>
BasicJet<C> BasicJet<C>::degree_range(int min_degree, int max_degree) const {
  BasicJet out(truncation_);
  for (const auto& [beta, c] : terms_) {
    if (beta.degree() >= min_degree && beta.degree() <= max_degree) out.terms_.emplace_hint(out.terms_.end(), beta, c);
  }
  return out;
}

template <class C>
BasicJet<C> BasicJet<C>::with_truncation(int truncation) const {
  BasicJet out(truncation);
  for (const auto& [beta, c] : terms_) {
    if (beta.degree() <= truncation) out.terms_.emplace_hint(out.terms_.end(), beta, c);
  }
  return out;
}

template <class C>
void BasicJet<C>::require_same_order(const BasicJet& o, const char* op) const {
  if (o.truncation_ != truncation_) {
    throw UsageError(std::string(op) + ": truncation orders differ (" + std::to_string(truncation_) + " vs " +
                     std::to_string(o.truncation_) + ")");
  }
}

template <class C>
BasicJet<C>& BasicJet<C>::operator+=(const BasicJet& o) {
  require_same_order(o, "add");
  for (const auto& [beta, c] : o.terms_) add(beta, c);
  return *this;
}

template <class C>
BasicJet<C>& BasicJet<C>::operator-=(const BasicJet& o) {
  require_same_order(o, "subtract");
  for (const auto& [beta, c] : o.terms_) add(beta, -c);
  return *this;
}

template <class C>
BasicJet<C>& BasicJet<C>::operator*=(const GradedCoefficient& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [beta, v] : terms_) v = v * c;
  return *this;
}

template <class C>
BasicJet<C> BasicJet<C>::operator-() const {
  BasicJet out = *this;
  for (auto& [beta, v] : out.terms_) v = -v;
  return out;
}

template class BasicJet<ComplexCoordinates>;
template class BasicJet<RealCoordinates>;

JetSeries multiply(const JetSeries& f, const JetSeries& g) { return multiply_impl(f, g); }
RealJet multiply(const RealJet& f, const RealJet& g) { return multiply_impl(f, g); }

JetSeries poisson_bracket(const JetSeries& f, const JetSeries& g) {
  if (f.truncation() != g.truncation()) {
    throw UsageError("poisson_bracket: truncation orders differ (" + std::to_string(f.truncation()) + " vs " +
                     std::to_string(g.truncation()) + ")");
  }
  return poisson_bracket(f, g, f.truncation());
}

JetSeries poisson_bracket(const JetSeries& f, const JetSeries& g, int truncation) {
  JetSeries out(truncation);
  for (const auto& [a, ca] : f.terms()) {
    for (const auto& [b, cb] : g.terms()) {
      if (a.degree() + b.degree() - 2 > truncation) continue;
      const int w = bracket_weight(a, b);
      if (w == 0) continue;
      out.add({a.b1 + b.b1 - 1, a.b2 + b.b2 - 1}, (ca * cb) * GaussianRational(0, w));
    }
  }
  return out;
}

JetSeries real_to_complex(const RealJet& f) {
  JetSeries out(f.truncation());
  for (const auto& [beta, c] : f.terms()) {
    const int a = beta.b1;  // power of x
    const int b = beta.b2;  // power of y
    // x^a y^b = 2^{-(a+b)/2} (-i)^b (z + zbar)^a (z - zbar)^b
    const GradedCoefficient prefactor = c * GradedCoefficient::term(i_power(-b), 0, -(a + b));
    for (int j = 0; j <= a; ++j) {
      for (int k = 0; k <= b; ++k) {
        mpz_class w = binomial(a, j) * binomial(b, k);
        if ((b - k) % 2 != 0) w = -w;
        out.add({j + k, a + b - j - k}, prefactor * GaussianRational(mpq_class(w)));
      }
    }
  }
  return out;
}

RealJet complex_to_real(const JetSeries& f) {
  RealJet out(f.truncation());
  for (const auto& [beta, c] : f.terms()) {
    const int a = beta.b1;  // power of z
    const int b = beta.b2;  // power of zbar
    // z^a zbar^b = 2^{-(a+b)/2} (x + i y)^a (x - i y)^b
    const GradedCoefficient prefactor = c * GradedCoefficient::term(1, 0, -(a + b));
    for (int j = 0; j <= a; ++j) {
      for (int k = 0; k <= b; ++k) {
        GaussianRational w = GaussianRational(mpq_class(binomial(a, j) * binomial(b, k))) * i_power(j) * i_power(-k);
        out.add({a + b - j - k, j + k}, prefactor * w);
      }
    }
  }
  return out;
}

bool reality_check(const JetSeries& f) {
  for (const auto& [beta, c] : f.terms()) {
    if (!(f.coeff(beta.swapped()) == c.conj())) return false;
  }
  return true;
}

JetSeries harmonic_hamiltonian(int truncation) {
  if (truncation < 2) throw UsageError("truncation must be at least 2 to hold 2*pi*z*zbar");
  return JetSeries::monomial({1, 1}, GradedCoefficient::term(2, 1), truncation);
}

void require_normalized(const JetSeries& h) {
  if (h.truncation() < 2) throw NormalizationError("Hamiltonian truncated below degree 2");
  for (const auto& [beta, c] : h.terms()) {
    if (beta.degree() == 0 || beta.degree() > 2) continue;
    if (beta == MultiIndex{1, 1} && c == GradedCoefficient::term(2, 1)) continue;
    throw NormalizationError("quadratic part must be exactly 2*pi*z*zbar; found coefficient " + c.to_string() +
                             " on z^" + std::to_string(beta.b1) + " zbar^" + std::to_string(beta.b2));
  }
  if (h.coeff({1, 1}).is_zero()) throw NormalizationError("quadratic part must be exactly 2*pi*z*zbar; it is absent");
}

std::vector<MultiIndex> jet_basis(int order) {
  std::vector<MultiIndex> basis;
  for (int n = 1; n <= order; ++n) {
    for (int b1 = 0; b1 <= n; ++b1) basis.push_back({b1, n - b1});
  }
  return basis;
}

namespace {
int basis_position(MultiIndex beta, int order) {
  const int n = beta.degree();
  if (n < 1 || n > order || beta.b1 < 0 || beta.b2 < 0) return -1;
  return (n - 1) * (n + 2) / 2 + beta.b1;
}
}  // namespace

int LieMatrix::index_of(MultiIndex beta) const { return basis_position(beta, order); }

Eigen::VectorXcd LieMatrix::coefficient_vector(const JetSeries& phi) const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  for (const auto& [beta, c] : phi.terms()) {
    const int idx = index_of(beta);
    if (idx >= 0) v(idx) = c.evaluate();
  }
  return v;
}

LieMatrix lie_operator_matrix(const JetSeries& f, int order) {
  if (order < 1) throw UsageError("lie_operator_matrix: order must be positive");
  LieMatrix m;
  m.order = order;
  m.basis = jet_basis(order);
  const auto size = static_cast<Eigen::Index>(m.basis.size());
  m.entries = Eigen::MatrixXcd::Zero(size, size);
  for (const auto& [a, ca] : f.terms()) {
    const std::complex<double> value = ca.evaluate();
    for (Eigen::Index col = 0; col < size; ++col) {
      const MultiIndex b = m.basis[static_cast<std::size_t>(col)];
      const int w = bracket_weight(a, b);
      if (w == 0) continue;
      const int row = basis_position({a.b1 + b.b1 - 1, a.b2 + b.b2 - 1}, order);
      if (row < 0) continue;
      m.entries(row, col) += std::complex<double>(0.0, w) * value;
    }
  }
  return m;
}

}  // namespace iso
