#include "iso/phifunc.hpp"

#include <algorithm>

namespace iso {

namespace {

// Polynomial in x truncated after x^order, with exact coefficients.
class TaylorX {
 public:
  TaylorX(long constant = 0) : coeffs_(static_cast<std::size_t>(order_ + 1)) { coeffs_[0] = constant; }  // NOLINT

  static void set_order(int order) { order_ = order; }
  static TaylorX constant(GradedCoefficient c) {
    TaylorX t;
    t.coeffs_[0] = std::move(c);
    return t;
  }
  static TaylorX x(long sign) {
    TaylorX t;
    if (order_ >= 1) t.coeffs_[1] = sign;
    return t;
  }

  void set(int j, GradedCoefficient c) { coeffs_[static_cast<std::size_t>(j)] = std::move(c); }
  const GradedCoefficient& operator[](int j) const { return coeffs_[static_cast<std::size_t>(j)]; }

  friend TaylorX operator+(const TaylorX& a, const TaylorX& b) {
    TaylorX out = a;
    for (int j = 0; j <= order_; ++j) out.coeffs_[static_cast<std::size_t>(j)] += b[j];
    return out;
  }
  friend TaylorX operator*(const TaylorX& a, const TaylorX& b) {
    TaylorX out;
    for (int i = 0; i <= order_; ++i) {
      if (a[i].is_zero()) continue;
      for (int j = 0; i + j <= order_; ++j) {
        if (b[j].is_zero()) continue;
        out.coeffs_[static_cast<std::size_t>(i + j)] += a[i] * b[j];
      }
    }
    return out;
  }
  TaylorX operator-() const {
    TaylorX out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  // 1/a; the constant term must be a single graded term.
  TaylorX reciprocal() const {
    if (coeffs_[0].is_zero()) throw InconsistencyError("phi_at_resonance: vanishing constant denominator");
    const GradedCoefficient inv0 = coeffs_[0].inverse();
    TaylorX out;
    out.coeffs_[0] = inv0;
    for (int j = 1; j <= order_; ++j) {
      GradedCoefficient acc;
      for (int i = 1; i <= j; ++i) acc += coeffs_[static_cast<std::size_t>(i)] * out[j - i];
      out.coeffs_[static_cast<std::size_t>(j)] = -(acc * inv0);
    }
    return out;
  }

 private:
  static thread_local int order_;
  std::vector<GradedCoefficient> coeffs_;
};

thread_local int TaylorX::order_ = 0;

bool interval_sums_to_zero(const std::vector<int>& n, int lo, int hi) {
  long sum = 0;
  for (int j = lo; j <= hi; ++j) sum += n[static_cast<std::size_t>(j - 1)];
  return sum == 0;
}

}  // namespace

std::vector<std::complex<double>> lattice_point(const ResonancePoint& p) {
  std::vector<std::complex<double>> xi;
  for (int nj : p.n) xi.emplace_back(0.0, 2.0 * std::numbers::pi * nj);
  return xi;
}

ResonanceStructure resonance_structure(const ResonancePoint& p) {
  const int k = p.k();
  if (k < 1 || k > kMaxResonanceLength) {
    throw UsageError("resonance_structure supports 1 <= k <= " + std::to_string(kMaxResonanceLength) + ", got " +
                     std::to_string(k));
  }
  ResonanceStructure out;
  for (int lo = 1; lo <= k; ++lo) {
    for (int hi = lo; hi <= k; ++hi) {
      if (interval_sums_to_zero(p.n, lo, hi)) out.zero_intervals.push_back({lo, hi});
    }
  }
  // An interval is a union of smaller vanishing intervals iff it has a
  // proper vanishing prefix (the complementary suffix then vanishes too).
  for (const auto& iv : out.zero_intervals) {
    bool splittable = false;
    for (int c = iv.lo; c < iv.hi && !splittable; ++c) splittable = interval_sums_to_zero(p.n, iv.lo, c);
    if (!splittable) out.minimal.push_back(iv);
  }
  // Minimal intervals have unique neighbours, so chains are well defined.
  auto starting_at = [&](int lo) {
    return std::find_if(out.minimal.begin(), out.minimal.end(), [lo](const Interval& iv) { return iv.lo == lo; });
  };
  auto ending_at = [&](int hi) {
    return std::find_if(out.minimal.begin(), out.minimal.end(), [hi](const Interval& iv) { return iv.hi == hi; });
  };
  for (const auto& iv : out.minimal) {
    if (ending_at(iv.lo - 1) != out.minimal.end()) continue;
    std::vector<Interval> chain{iv};
    for (auto next = starting_at(iv.hi + 1); next != out.minimal.end(); next = starting_at(next->hi + 1)) {
      chain.push_back(*next);
    }
    out.collections.push_back(std::move(chain));
  }
  return out;
}

GradedCoefficient phi_at_resonance(const ResonancePoint& p) {
  const auto structure = resonance_structure(p);
  const int k = p.k();
  GradedCoefficient total;
  for (const auto& chain : structure.collections) {
    const int m = static_cast<int>(chain.size());
    TaylorX::set_order(m - 1);
    std::vector<TaylorX> xi;
    for (int nj : p.n) xi.push_back(TaylorX::constant(GradedCoefficient::term(GaussianRational(0, 2L * nj), 1)));
    const std::span<const TaylorX> view(xi);
    const TaylorX plus_x = TaylorX::x(1);
    const TaylorX minus_x = TaylorX::x(-1);

    TaylorX den = rho<TaylorX>(RhoSign::minus, 1, chain.front().lo - 1, minus_x, view);
    for (const auto& iv : chain) den = den * rho<TaylorX>(RhoSign::minus, iv.lo + 1, iv.hi, minus_x, view);
    den = den * rho<TaylorX>(RhoSign::plus, chain.back().hi + 1, k, plus_x, view);

    // be(x) = (e^x - 1)/x = sum_j x^j / (j+1)!
    TaylorX be;
    mpz_class factorial = 1;
    for (int j = 0; j <= m - 1; ++j) {
      factorial *= j + 1;
      be.set(j, GaussianRational(mpq_class(mpz_class(1), factorial)));
    }
    total += (be * den.reciprocal())[m - 1];
  }
  return total;
}

}  // namespace iso
