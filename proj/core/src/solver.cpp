#include "iso/solver.hpp"

#include <cmath>
#include <limits>

#include "iso/errors.hpp"

namespace iso {

NormalizedHamiltonian normalize_hamiltonian(const JetSeries& h) {
  for (const auto& [beta, c] : h.terms()) {
    if (beta.degree() == 1) throw UnsupportedNormalizationError("linear terms: the origin is not an equilibrium");
    if (beta.degree() == 2 && !beta.radial()) {
      throw UnsupportedNormalizationError(
          "anisotropic quadratic part (needs a linear symplectic diagonalization, which is not supported)");
    }
  }
  const GradedCoefficient& quad = h.coeff({1, 1});
  if (quad.is_zero()) throw UnsupportedNormalizationError("degenerate quadratic part");
  if (!quad.is_pure() || !quad.is_real() || quad.evaluate().real() <= 0.0) {
    throw UnsupportedNormalizationError("quadratic part must be c (x^2 + y^2) with c > 0 a single graded term, got 2c = " +
                                        quad.to_string());
  }
  // quad = 2c
  const GradedCoefficient c = quad * GaussianRational(mpq_class(1, 2));
  const GradedCoefficient scale = GradedCoefficient::pi() * c.inverse();
  NormalizedHamiltonian out;
  out.h = h.without_constant() * scale;
  out.time_scale = c * GradedCoefficient::pi(-1);
  return out;
}

NormalizedHamiltonian normalize_hamiltonian(const RealJet& h) { return normalize_hamiltonian(real_to_complex(h)); }

JetSeries RadialFamily::assemble(int truncation) const {
  JetSeries h = harmonic_hamiltonian(truncation);
  if (truncation >= 4) {
    h.set({4, 0}, a);
    h.set({0, 4}, a.conj());
    h.set({3, 1}, b);
    h.set({1, 3}, b.conj());
  }
  for (const auto& [j, c] : phi) {
    if (j < 3) throw UsageError("radial family coefficients start at j = 3");
    if (2 * j <= truncation) h.set({j, j}, c);
  }
  return h;
}

RealJet SeparableFamily::assemble(int truncation) const {
  RealJet h(truncation);
  for (std::size_t i = 0; i < phi.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) {
      const int degree = 2 * static_cast<int>(i + j);
      if (degree > truncation) continue;
      // x^{2j} y^{2i}
      h.add({2 * static_cast<int>(j), 2 * static_cast<int>(i)}, phi[i] * GaussianRational(f[j]));
    }
  }
  return h;
}

RadiusReport radius_estimate(const std::map<int, double>& magnitudes) {
  RadiusReport report;
  std::vector<std::pair<double, double>> fit;  // (j log j, log|phi_j|)
  for (const auto& [j, m] : magnitudes) {
    if (m == 0.0) continue;
    if (j < 1) throw UsageError("radius_estimate: indices must be positive");
    report.estimates.push_back({j, std::pow(std::abs(m), -1.0 / j)});
    fit.emplace_back(j * std::log(static_cast<double>(j)), std::log(std::abs(m)));
  }
  if (report.estimates.empty()) {
    report.infinite_radius = true;
    report.growth_slope = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  if (report.estimates.size() < 3) throw UsageError("radius_estimate needs at least three nonzero coefficients");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : fit) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(fit.size());
  const double denom = n * sxx - sx * sx;
  report.growth_slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : std::numeric_limits<double>::quiet_NaN();
  return report;
}

RadiusReport radius_estimate(const std::map<int, GradedCoefficient>& coeffs) {
  std::map<int, double> magnitudes;
  for (const auto& [j, c] : coeffs) magnitudes[j] = std::abs(c.evaluate());
  return radius_estimate(magnitudes);
}

bool monotone_decreasing(const std::vector<RadiusEstimate>& estimates, int j_min, int j_max) {
  int count = 0;
  double previous = std::numeric_limits<double>::infinity();
  for (const auto& e : estimates) {
    if (e.j < j_min || e.j > j_max) continue;
    if (!(e.value < previous)) return false;
    previous = e.value;
    ++count;
  }
  return count >= 2;
}

namespace {

// Solves the affine equation value(u) = 0 for the unknown u entering only
// the degree-d condition, given the assembler `with_unknown(u)`.
template <class Assemble>
GradedCoefficient solve_affine(int d, ConditionConvention convention, Assemble with_unknown) {
  const GradedCoefficient r0 = condition_lhs(with_unknown(GradedCoefficient{}), d, convention).value;
  const GradedCoefficient r1 = condition_lhs(with_unknown(GradedCoefficient{1}), d, convention).value;
  const GradedCoefficient lead = r1 - r0;
  if (lead.is_zero()) {
    throw SolverDegeneracyError("condition of degree " + std::to_string(d) + " does not involve its unknown under " +
                                convention.name());
  }
  if (!lead.is_pure()) {
    throw SolverDegeneracyError("coefficient of the unknown at degree " + std::to_string(d) +
                                " is not a single graded term: " + lead.to_string());
  }
  return -r0.divided_by(lead);
}

void fill_residuals(SolveReport& report) {
  for (const auto& r : check_isochronous(report.hamiltonian, report.d_max, report.convention)) {
    report.residuals[r.d] = r.value;
    if (!r.vanishes()) {
      throw InconsistencyError("solved Hamiltonian leaves a nonzero residual at d = " + std::to_string(r.d));
    }
  }
  int nonzero = 0;
  for (const auto& [j, c] : report.solved) nonzero += c.is_zero() ? 0 : 1;
  if (nonzero >= 3 || nonzero == 0) {
    report.radius = radius_estimate(report.solved);
    report.radius_available = true;
  }
}

}  // namespace

SolveReport solve_example1(const GaussianRational& a, const GaussianRational& b, int d_max,
                           ConditionConvention convention) {
  if (d_max < 2) throw UsageError("solve_example1: d_max must be at least 2");
  const int order = condition_required_truncation(d_max);
  RadialFamily family{a, b, {}};

  SolveReport report;
  report.family = "example1";
  report.convention = convention;
  report.d_max = d_max;

  // No (2,2) or cubic terms exist in the family, so d = 1 holds a priori.
  if (!condition_lhs(family.assemble(order), 1, convention).vanishes()) {
    throw InconsistencyError("degree-1 condition of the radial family is nonzero");
  }
  for (int d = 2; d <= d_max; ++d) {
    const int j = d + 1;
    family.phi[j] = solve_affine(d, convention, [&](const GradedCoefficient& u) {
      RadialFamily trial = family;
      trial.phi[j] = u;
      return trial.assemble(order);
    });
  }
  report.solved = family.phi;
  report.hamiltonian = family.assemble(order);
  fill_residuals(report);
  return report;
}

SolveReport solve_example2(const std::vector<mpq_class>& f, int d_max, ConditionConvention convention) {
  if (d_max < 1) throw UsageError("solve_example2: d_max must be at least 1");
  if (f.size() < 2 || f[0] != 1 || f[1] != 1) throw UsageError("solve_example2: f must satisfy f(0) = f'(0) = 1");
  const int order = condition_required_truncation(d_max);
  SeparableFamily family;
  family.f = f;
  family.f.resize(static_cast<std::size_t>(d_max + 2));
  family.phi = {GradedCoefficient{1}, GradedCoefficient{1}};

  for (int d = 1; d <= d_max; ++d) {
    family.phi.emplace_back();
    family.phi.back() = solve_affine(d, convention, [&](const GradedCoefficient& u) {
      SeparableFamily trial = family;
      trial.phi.back() = u;
      return normalize_hamiltonian(trial.assemble(order)).h;
    });
  }

  SolveReport report;
  report.family = "example2";
  report.convention = convention;
  report.d_max = d_max;
  for (std::size_t j = 2; j < family.phi.size(); ++j) report.solved[static_cast<int>(j)] = family.phi[j];
  auto normalized = normalize_hamiltonian(family.assemble(order));
  report.hamiltonian = std::move(normalized.h);
  report.time_scale = normalized.time_scale;
  fill_residuals(report);
  return report;
}

}  // namespace iso
