#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "iso/jets.hpp"

namespace iso {

struct JetFlowResult {
  int order = 0;
  double deviation = 0.0;  // || e^M - I ||_1 on the jet basis
  Eigen::MatrixXcd map_matrix;
};

inline constexpr int kMaxJetFlowOrder = 14;

// Time-one map e^M of the Lie operator M = lie_operator_matrix(h, order).
// The N-jet map is exact when h carries its terms up to degree N + 1.
JetFlowResult jet_time_one_map(const JetSeries& h, int order);

// exp(ad_G) H_2 truncated at `order`: H_2 pulled back by the time-one flow of
// G, hence isochronous. G must be real and start at degree 3.
JetSeries make_isochronous_pullback(const JetSeries& generator, int order);

// H(x, y) as a real polynomial with floating coefficients.
class NumericHamiltonian {
 public:
  struct Term {
    int px = 0;
    int py = 0;
    double coeff = 0.0;
  };

  NumericHamiltonian() = default;
  explicit NumericHamiltonian(std::vector<Term> terms);

  // Drops imaginary parts, which vanish for real series.
  static NumericHamiltonian from_jet(const JetSeries& h);
  static NumericHamiltonian from_real_jet(const RealJet& h);

  const std::vector<Term>& terms() const { return terms_; }
  int degree() const { return degree_; }

  double value(double x, double y) const;
  // (dH/dx, dH/dy)
  std::array<double, 2> gradient(double x, double y) const;

 private:
  std::vector<Term> terms_;
  int degree_ = 0;
};

struct PhaseState {
  double x = 0.0;
  double y = 0.0;
};

struct IntegrationStats {
  long steps = 0;
  long rejected = 0;
  // max over accepted steps of |H(t) - H(0)| / |H(0)|
  double max_relative_energy_drift = 0.0;
};

struct ReturnTime {
  double period = 0.0;
  long steps = 0;
  IntegrationStats stats;
};

inline constexpr double kMinTolerance = 1e-13;
inline constexpr double kMaxTolerance = 1e-6;
inline constexpr double kReturnTimeLimit = 10.0;

// Integrates xdot = H_y, ydot = -H_x from (r, 0) with an adaptive
// Dormand-Prince 5(4) pair and returns the first time the orbit crosses
// {y = 0, x > 0} again (downward, the flow being clockwise). Throws NonPeriodicError past t = 10 and
// StiffnessError on step-size underflow.
ReturnTime return_time(const NumericHamiltonian& h, double r, double tol);

// Integrates for signed duration t (negative runs backwards).
PhaseState integrate(const NumericHamiltonian& h, PhaseState start, double t, double tol,
                     IntegrationStats* stats = nullptr);

struct PeriodSample {
  double r = 0.0;
  double period = 0.0;
  long steps = 0;
  double max_relative_energy_drift = 0.0;
};

struct PeriodScan {
  double tol = 0.0;
  std::vector<PeriodSample> samples;
};

// return_time over strictly increasing radii (evaluated concurrently).
PeriodScan period_scan(const NumericHamiltonian& h, std::span<const double> radii, double tol);

}  // namespace iso
