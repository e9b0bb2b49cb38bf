#include "iso/conditions.hpp"

#include <map>
#include <string>
#include <utility>

#include "iso/errors.hpp"

namespace iso {

std::string ConditionConvention::name() const {
  std::string base = sign == Sign::alternating ? "thm1" : "step7";
  return limit == UpperLimit::d ? base : base + "-2d";
}

std::optional<ConditionConvention> ConditionConvention::parse(std::string_view name) {
  for (const auto& c : all()) {
    if (c.name() == name) return c;
  }
  return std::nullopt;
}

namespace {

void enumerate_rec(int remaining_parts, int r1, int r2, std::vector<MultiIndex>& prefix,
                   std::vector<std::vector<MultiIndex>>& out) {
  if (remaining_parts == 0) {
    if (r1 == 0 && r2 == 0) out.push_back(prefix);
    return;
  }
  const int total = r1 + r2;
  // Leave at least degree 3 for every later part.
  const int max_degree = total - 3 * (remaining_parts - 1);
  for (int n = 3; n <= max_degree; ++n) {
    if (remaining_parts == 1 && n != total) continue;
    for (int b1 = 0; b1 <= n; ++b1) {
      const int b2 = n - b1;
      if (b1 > r1 || b2 > r2) continue;
      prefix.push_back({b1, b2});
      enumerate_rec(remaining_parts - 1, r1 - b1, r2 - b2, prefix, out);
      prefix.pop_back();
    }
  }
}

// Laurent-type polynomial in the "excess" exponents beta - (1,1). A tuple
// sums to (d+k, d+k) exactly when its excesses sum to (d, d), independent of k,
// so Sigma^d_k = (2pi)^{-k} [w^{(d,d)}] Q^k with Q = sum H_beta w^{beta-(1,1)}.
using ExcessPoly = std::map<std::pair<int, int>, GradedCoefficient>;

ExcessPoly excess_polynomial(const JetSeries& h, int max_excess) {
  ExcessPoly q;
  for (const auto& [beta, c] : h.terms()) {
    if (beta.degree() < 3 || beta.degree() - 2 > max_excess) continue;
    q.emplace(std::pair{beta.b1 - 1, beta.b2 - 1}, c);
  }
  return q;
}

// Keeps only partial products that can still reach (d, d) for some d <= d_max.
bool reachable(std::pair<int, int> e, int d_max) {
  const int total = e.first + e.second;
  return total <= 2 * d_max && 2 * e.first + e.second <= 3 * d_max && e.first + 2 * e.second <= 3 * d_max;
}

ExcessPoly multiply_excess(const ExcessPoly& p, const ExcessPoly& q, int d_max) {
  ExcessPoly out;
  for (const auto& [a, ca] : p) {
    for (const auto& [b, cb] : q) {
      std::pair<int, int> e{a.first + b.first, a.second + b.second};
      if (!reachable(e, d_max)) continue;
      auto [it, inserted] = out.try_emplace(e, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

// result[k-1] = [w^{(d,d)}] Q^k for k = 1..k_max, for each d in 1..d_max.
std::vector<std::vector<GradedCoefficient>> power_diagonals(const ExcessPoly& q, int d_max, int k_max) {
  std::vector<std::vector<GradedCoefficient>> out(static_cast<std::size_t>(d_max));
  for (auto& row : out) row.resize(static_cast<std::size_t>(k_max));
  ExcessPoly power;
  for (int k = 1; k <= k_max; ++k) {
    power = k == 1 ? q : multiply_excess(power, q, d_max);
    if (k == 1) std::erase_if(power, [&](const auto& kv) { return !reachable(kv.first, d_max); });
    for (int d = 1; d <= d_max; ++d) {
      auto it = power.find({d, d});
      if (it != power.end()) out[static_cast<std::size_t>(d - 1)][static_cast<std::size_t>(k - 1)] = it->second;
    }
    if (power.empty()) break;
  }
  return out;
}

// (2 pi)^{-k}
GradedCoefficient inverse_two_pi_power(int k) {
  mpz_class two_k = mpz_class(1) << static_cast<mp_bitcnt_t>(k);
  return GradedCoefficient::term(GaussianRational(mpq_class(mpz_class(1), two_k)), -k);
}

void require_truncation(const JetSeries& h, int needed, const std::string& what) {
  if (h.truncation() < needed) {
    throw UsageError(what + " needs H truncated at order >= " + std::to_string(needed) + ", got " +
                     std::to_string(h.truncation()));
  }
}

std::vector<GradedCoefficient> sigma_row(const JetSeries& h, int d) {
  auto q = excess_polynomial(h, 2 * d);
  auto table = power_diagonals(q, d, 2 * d);
  auto row = std::move(table[static_cast<std::size_t>(d - 1)]);
  for (int k = 1; k <= 2 * d; ++k) row[static_cast<std::size_t>(k - 1)] *= inverse_two_pi_power(k);
  return row;
}

ConditionReport assemble_report(const std::vector<GradedCoefficient>& row, int d, ConditionConvention convention) {
  ConditionReport report;
  report.d = d;
  report.convention = convention;
  const int upper = convention.upper_limit(d);
  for (int s = 1; s <= upper; ++s) {
    mpq_class w = condition_weight(d, s) * convention.sign_of(s);
    const auto& sig = row[static_cast<std::size_t>(s - 1)];
    report.value += sig * GaussianRational(w);
    report.per_s_terms.push_back({s, sig, w});
  }
  return report;
}

}  // namespace

std::vector<std::vector<MultiIndex>> enumerate_tuples(int d, int k) {
  if (d < 1 || k < 1) throw UsageError("enumerate_tuples: d and k must be positive");
  std::vector<std::vector<MultiIndex>> out;
  if (k > 2 * d) return out;
  std::vector<MultiIndex> prefix;
  prefix.reserve(static_cast<std::size_t>(k));
  enumerate_rec(k, d + k, d + k, prefix, out);
  return out;
}

int sigma_required_truncation(int d, int k) { return k > 2 * d ? 0 : 2 * d + 3 - k; }

GradedCoefficient sigma(const JetSeries& h, int d, int k) {
  if (d < 1 || k < 1) throw UsageError("sigma: d and k must be positive");
  if (k > 2 * d) return {};
  require_truncation(h, sigma_required_truncation(d, k), "Sigma^" + std::to_string(d) + "_" + std::to_string(k));
  auto q = excess_polynomial(h, 2 * d);
  auto table = power_diagonals(q, d, k);
  return table[static_cast<std::size_t>(d - 1)][static_cast<std::size_t>(k - 1)] * inverse_two_pi_power(k);
}

std::vector<std::vector<GradedCoefficient>> sigma_table(const JetSeries& h, int d_max) {
  if (d_max < 1) throw UsageError("sigma_table: d_max must be positive");
  require_truncation(h, condition_required_truncation(d_max), "sigma_table");
  auto q = excess_polynomial(h, 2 * d_max);
  auto table = power_diagonals(q, d_max, 2 * d_max);
  for (int d = 1; d <= d_max; ++d) {
    auto& row = table[static_cast<std::size_t>(d - 1)];
    row.resize(static_cast<std::size_t>(2 * d));
    for (int k = 1; k <= 2 * d; ++k) row[static_cast<std::size_t>(k - 1)] *= inverse_two_pi_power(k);
  }
  return table;
}

mpq_class condition_weight(int d, int s) {
  // (d+s)! / (s! (d+1)!) = (d+2)(d+3)...(d+s) / s!
  mpz_class num = 1;
  for (int j = d + 2; j <= d + s; ++j) num *= j;
  mpz_class den;
  mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(s));
  mpq_class w(num, den);
  w.canonicalize();
  return w;
}

ConditionReport condition_lhs(const JetSeries& h, int d, ConditionConvention convention) {
  if (d < 1) throw UsageError("condition degree d must be positive");
  require_normalized(h);
  require_truncation(h, condition_required_truncation(d), "condition of degree " + std::to_string(d));
  return assemble_report(sigma_row(h, d), d, convention);
}

GradedCoefficient p_d(const JetSeries& h, int d) { return condition_lhs(h, d, ConditionConvention::step7()).value; }

std::vector<ConditionReport> check_isochronous(const JetSeries& h, int d_max, ConditionConvention convention) {
  if (d_max < 1) throw UsageError("d_max must be positive");
  require_normalized(h);
  require_truncation(h, condition_required_truncation(d_max), "checking conditions up to d = " + std::to_string(d_max));
  auto table = sigma_table(h, d_max);
  std::vector<ConditionReport> reports;
  reports.reserve(static_cast<std::size_t>(d_max));
  for (int d = 1; d <= d_max; ++d) reports.push_back(assemble_report(table[static_cast<std::size_t>(d - 1)], d, convention));
  return reports;
}

}  // namespace iso
