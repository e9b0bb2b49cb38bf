#pragma once

#include <map>
#include <string>
#include <vector>

#include "iso/conditions.hpp"
#include "iso/graded.hpp"
#include "iso/jets.hpp"

namespace iso {

struct NormalizedHamiltonian {
  JetSeries h{2};
  // c / pi. h = H / time_scale, so an orbit of period T for h has period
  // T / time_scale for the input H.
  GradedCoefficient time_scale;
};

// Rescales an input whose quadratic part is c (x^2 + y^2), c > 0 a single
// graded term, to H' = (pi / c) H with quadratic part 2 pi z zbar. Constant
// terms are dropped. Throws UnsupportedNormalizationError for anisotropic,
// indefinite or linear parts.
NormalizedHamiltonian normalize_hamiltonian(const JetSeries& h);
NormalizedHamiltonian normalize_hamiltonian(const RealJet& h);

// H = 2 pi z zbar + a z^4 + b z^3 zbar + conj(b) z zbar^3 + conj(a) zbar^4 + sum_{j>=3} phi_j (z zbar)^j
struct RadialFamily {
  GaussianRational a;
  GaussianRational b;
  std::map<int, GradedCoefficient> phi;

  JetSeries assemble(int truncation) const;
};

// H = phi(y^2) f(x^2) with f_0 = f_1 = phi_0 = phi_1 = 1.
struct SeparableFamily {
  std::vector<mpq_class> f;
  std::vector<GradedCoefficient> phi;

  RealJet assemble(int truncation) const;
};

struct RadiusEstimate {
  int j = 0;
  double value = 0.0;  // |phi_j|^{-1/j}
};

struct RadiusReport {
  std::vector<RadiusEstimate> estimates;  // nonzero coefficients only
  // Least-squares slope of log|phi_j| against j log j; positive values
  // indicate factorial growth. NaN with fewer than two points.
  double growth_slope = 0.0;
  bool infinite_radius = false;  // every coefficient vanished
};

// Root-test radius proxies. Throws UsageError with one or two nonzero
// coefficients (too few for a trend); all-zero input sets infinite_radius.
RadiusReport radius_estimate(const std::map<int, double>& magnitudes);
RadiusReport radius_estimate(const std::map<int, GradedCoefficient>& coeffs);

// Estimates with lo <= j <= hi are strictly decreasing in j (and at least two exist).
bool monotone_decreasing(const std::vector<RadiusEstimate>& estimates, int j_min, int j_max);

struct SolveReport {
  std::string family;
  ConditionConvention convention;
  int d_max = 0;
  std::map<int, GradedCoefficient> solved;     // phi_j
  std::map<int, GradedCoefficient> residuals;  // condition value per d, re-evaluated
  RadiusReport radius;
  bool radius_available = false;
  JetSeries hamiltonian{2};  // assembled and normalized, truncated at 2 d_max + 2
  GradedCoefficient time_scale{1};
};

// Determines phi_3, ..., phi_{d_max+1} degree by degree so that the
// conditions d = 1..d_max vanish.
SolveReport solve_example1(const GaussianRational& a, const GaussianRational& b, int d_max,
                           ConditionConvention convention);

// Determines phi_2, ..., phi_{d_max+1} for the given f (missing
// coefficients of f are zero).
SolveReport solve_example2(const std::vector<mpq_class>& f, int d_max, ConditionConvention convention);

}  // namespace iso
