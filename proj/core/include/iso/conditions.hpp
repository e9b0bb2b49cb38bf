#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iso/graded.hpp"
#include "iso/jets.hpp"

namespace iso {

// Which variant of the isochronicity condition family to evaluate:
//   value_d = sum_{s=1}^{S} sign(s) (d+s)! / (s! (d+1)!) Sigma^d_s
// with sign(s) = (-1)^{s-1} or +1 and S = d or 2d.
struct ConditionConvention {
  enum class Sign { alternating, positive };
  enum class UpperLimit { d, two_d };

  Sign sign = Sign::alternating;
  UpperLimit limit = UpperLimit::two_d;

  // "thm1": alternating signs, s <= d.
  static constexpr ConditionConvention theorem1() { return {Sign::alternating, UpperLimit::d}; }
  // "step7": positive signs, s <= d (the p_d sums).
  static constexpr ConditionConvention step7() { return {Sign::positive, UpperLimit::d}; }
  static constexpr ConditionConvention theorem1_2d() { return {Sign::alternating, UpperLimit::two_d}; }
  static constexpr ConditionConvention step7_2d() { return {Sign::positive, UpperLimit::two_d}; }
  // Result of `iso calibrate`: the only variant whose zero sets agree with
  // the Birkhoff normal form.
  static constexpr ConditionConvention calibrated() { return theorem1_2d(); }

  static std::vector<ConditionConvention> all() { return {theorem1(), step7(), theorem1_2d(), step7_2d()}; }

  int upper_limit(int d) const { return limit == UpperLimit::d ? d : 2 * d; }
  int sign_of(int s) const { return (sign == Sign::positive || s % 2 == 1) ? 1 : -1; }

  // "thm1" | "step7" | "thm1-2d" | "step7-2d"
  std::string name() const;
  static std::optional<ConditionConvention> parse(std::string_view name);

  friend constexpr bool operator==(const ConditionConvention&, const ConditionConvention&) = default;
};

struct ConditionTerm {
  int s = 0;
  GradedCoefficient sigma;  // Sigma^d_s
  mpq_class weight;         // sign(s) (d+s)! / (s! (d+1)!)
};

struct ConditionReport {
  int d = 0;
  GradedCoefficient value;
  ConditionConvention convention;
  std::vector<ConditionTerm> per_s_terms;

  bool vanishes() const { return value.is_zero(); }
};

// All ordered k-tuples (beta^1, ..., beta^k) with |beta^j| >= 3 and
// component-wise sum (d+k, d+k), in lexicographic order of the tuples under
// the (degree, b1) ordering of multi-indices. Empty when k > 2d.
std::vector<std::vector<MultiIndex>> enumerate_tuples(int d, int k);

// Smallest truncation order of H that determines Sigma^d_k: the largest
// single-factor degree 2d + 3 - k.
int sigma_required_truncation(int d, int k);
// Truncation needed by every condition of degree d (the s = 1 term reads
// the (d+1, d+1) coefficient).
constexpr int condition_required_truncation(int d) { return 2 * d + 2; }

// Sigma^d_k = (2 pi)^{-k} sum over enumerate_tuples(d, k) of H_{beta^1} ... H_{beta^k}.
// Only monomials of degree >= 3 of H participate. Throws UsageError when the
// truncation of H cannot determine the value.
GradedCoefficient sigma(const JetSeries& h, int d, int k);

// Sigma^d_k for 1 <= d <= d_max and 1 <= k <= 2d in one sweep;
// result[d-1][k-1]. Requires truncation >= 2 d_max + 2.
std::vector<std::vector<GradedCoefficient>> sigma_table(const JetSeries& h, int d_max);

// (d+s)! / (s! (d+1)!)
mpq_class condition_weight(int d, int s);

// Left-hand side of the degree-d condition. H must be normalized
// (quadratic part exactly 2 pi z zbar) and truncated at order >= 2d + 2.
ConditionReport condition_lhs(const JetSeries& h, int d, ConditionConvention convention);

GradedCoefficient p_d(const JetSeries& h, int d);

// Reports for d = 1..d_max. All values zero means isochronous to the tested order.
std::vector<ConditionReport> check_isochronous(const JetSeries& h, int d_max, ConditionConvention convention);

}  // namespace iso
