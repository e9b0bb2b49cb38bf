#include "iso/calibration.hpp"

#include <algorithm>

#include "iso/errors.hpp"
#include "iso/flow.hpp"
#include "iso/normalform.hpp"

namespace iso {

namespace {

GaussianRational random_rational(std::mt19937_64& rng, bool real) {
  std::uniform_int_distribution<long> num(-3, 3);
  std::uniform_int_distribution<long> den(1, 4);
  const mpq_class re(num(rng), den(rng));
  const mpq_class im = real ? mpq_class(0) : mpq_class(num(rng), den(rng));
  mpq_class r = re;
  mpq_class i = im;
  r.canonicalize();
  i.canonicalize();
  return {r, i};
}

void fill_random(JetSeries& h, std::mt19937_64& rng, int lo, int hi, double density) {
  std::bernoulli_distribution keep(density);
  for (int n = lo; n <= hi; ++n) {
    for (int b1 = n; 2 * b1 >= n; --b1) {
      const MultiIndex beta{b1, n - b1};
      if (!keep(rng)) continue;
      const GaussianRational q = random_rational(rng, beta.radial());
      h.set(beta, q);
      if (!beta.radial()) h.set(beta.swapped(), q.conj());
    }
  }
}

}  // namespace

JetSeries random_real_hamiltonian(std::mt19937_64& rng, int truncation, int degree_lo, int degree_hi,
                                  double density) {
  if (degree_hi < 0) degree_hi = truncation;
  if (degree_lo < 3 || degree_hi > truncation) throw UsageError("random_real_hamiltonian: degree range");
  JetSeries h = harmonic_hamiltonian(truncation);
  fill_random(h, rng, degree_lo, degree_hi, density);
  return h;
}

JetSeries random_real_generator(std::mt19937_64& rng, int truncation, int degree_hi, double density) {
  if (degree_hi < 3 || degree_hi > truncation) throw UsageError("random_real_generator: degree range");
  JetSeries g(truncation);
  fill_random(g, rng, 3, degree_hi, density);
  return g;
}

JetSeries force_vanishing(JetSeries h, int d) {
  for (int j = 1; j <= d; ++j) {
    const auto nf = birkhoff_normal_form(h, condition_required_truncation(j));
    h.add({j + 1, j + 1}, -nf.c.at(j));
  }
  return h;
}

std::vector<CalibrationInstance> calibration_instances(std::uint64_t seed, int truncation, int d_max) {
  if (truncation < condition_required_truncation(d_max)) {
    throw UsageError("calibration: truncation " + std::to_string(truncation) + " too small for d_max " +
                     std::to_string(d_max));
  }
  std::mt19937_64 rng(seed);
  std::vector<CalibrationInstance> out;
  for (int i = 0; i < 30; ++i) out.push_back({"generic", 0, random_real_hamiltonian(rng, truncation, 3, -1, 0.6)});
  for (int i = 0; i < 10; ++i) {
    const JetSeries g = random_real_generator(rng, truncation, 3 + i % 3, 0.5);
    out.push_back({"pullback", d_max, make_isochronous_pullback(g, truncation)});
  }
  for (int d = 1; d <= d_max; ++d) {
    for (int i = 0; i < 3; ++i) {
      out.push_back({"forced", d, force_vanishing(random_real_hamiltonian(rng, truncation, 3, -1, 0.6), d)});
    }
  }
  // c_1..c_{d-1} forced, c_d left generic: 10 instances spread over d >= 2.
  for (int i = 0; i < 10; ++i) {
    const int d = 2 + i % std::max(1, d_max - 1);
    out.push_back({"forced-below", d - 1, force_vanishing(random_real_hamiltonian(rng, truncation, 3, -1, 0.6), d - 1)});
  }
  out.push_back({"cubic", 0, random_real_hamiltonian(rng, truncation, 3, 3)});
  return out;
}

bool ConventionScore::perfect() const {
  return std::all_of(agreements.begin(), agreements.end(), [&](int a) { return a == instances; });
}

CalibrationResult calibrate(std::uint64_t seed, int truncation, int d_max) {
  const auto instances = calibration_instances(seed, truncation, d_max);
  CalibrationResult result;
  result.seed = seed;
  result.truncation = truncation;
  result.d_max = d_max;
  result.instances = static_cast<int>(instances.size());

  // nf_zero[i][d-1]: c_1..c_d all vanish for instance i
  std::vector<std::vector<bool>> nf_zero;
  for (const auto& inst : instances) {
    const auto verdict = is_isochronous_nf(inst.h, condition_required_truncation(d_max));
    std::vector<bool> prefix;
    bool all = true;
    for (int d = 1; d <= d_max; ++d) {
      all = all && verdict.c.at(static_cast<std::size_t>(d - 1)).is_zero();
      prefix.push_back(all);
    }
    nf_zero.push_back(std::move(prefix));
  }

  int perfect = 0;
  for (const auto& conv : ConditionConvention::all()) {
    ConventionScore score{conv, std::vector<int>(static_cast<std::size_t>(d_max), 0), result.instances};
    for (std::size_t i = 0; i < instances.size(); ++i) {
      bool all = true;
      const auto reports = check_isochronous(instances[i].h, d_max, conv);
      for (int d = 1; d <= d_max; ++d) {
        all = all && reports[static_cast<std::size_t>(d - 1)].vanishes();
        if (all == nf_zero[i][static_cast<std::size_t>(d - 1)]) ++score.agreements[static_cast<std::size_t>(d - 1)];
      }
    }
    if (score.perfect()) {
      ++perfect;
      result.winner = conv;
    }
    result.scores.push_back(std::move(score));
  }
  if (perfect != 1) result.winner.reset();
  return result;
}

}  // namespace iso
