#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "iso/conditions.hpp"
#include "iso/jets.hpp"

namespace iso {

// Real series 2 pi z zbar + sum over degree_lo <= |beta| <= degree_hi of
// small random Gaussian rationals (radial coefficients real), each monomial
// kept with probability `density`.
JetSeries random_real_hamiltonian(std::mt19937_64& rng, int truncation, int degree_lo = 3, int degree_hi = -1,
                                  double density = 1.0);

// Real generator with terms of degree 3..degree_hi only.
JetSeries random_real_generator(std::mt19937_64& rng, int truncation, int degree_hi, double density = 1.0);

// Adjusts the radial coefficients h_{(j+1, j+1)}, j = 1..d, so that the
// normal-form coefficients c_1..c_d vanish.
JetSeries force_vanishing(JetSeries h, int d);

struct CalibrationInstance {
  std::string kind;  // generic | pullback | forced | forced-below | cubic
  int forced = 0;    // number of leading c_j forced to vanish
  JetSeries h{2};
};

// Seeded instance set: 30 generic, 10 pullback, 12 with c_1..c_d forced to
// zero, 10 with c_1..c_{d-1} forced to zero, one purely cubic.
std::vector<CalibrationInstance> calibration_instances(std::uint64_t seed, int truncation = 10, int d_max = 4);

struct ConventionScore {
  ConditionConvention convention;
  std::vector<int> agreements;  // per d = 1..d_max
  int instances = 0;

  bool perfect() const;
};

struct CalibrationResult {
  std::uint64_t seed = 0;
  int truncation = 0;
  int d_max = 0;
  int instances = 0;
  std::vector<ConventionScore> scores;
  // Set when exactly one convention agrees with the normal form everywhere.
  std::optional<ConditionConvention> winner;
};

// Agreement at degree d: (conditions 1..d all vanish) == (c_1..c_d all vanish).
CalibrationResult calibrate(std::uint64_t seed, int truncation = 10, int d_max = 4);

}  // namespace iso
