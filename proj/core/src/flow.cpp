#include "iso/flow.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

#include "iso/errors.hpp"
#include "iso/expm.hpp"
#include "iso/normalform.hpp"

namespace iso {

JetFlowResult jet_time_one_map(const JetSeries& h, int order) {
  require_normalized(h);
  if (order < 1 || order > kMaxJetFlowOrder) {
    throw UsageError("jet_time_one_map: order must be in [1, " + std::to_string(kMaxJetFlowOrder) + "], got " +
                     std::to_string(order));
  }
  const LieMatrix m = lie_operator_matrix(h, order);
  JetFlowResult out;
  out.order = order;
  out.map_matrix = matrix_exponential(m.entries);
  const auto n = out.map_matrix.rows();
  out.deviation = one_norm(out.map_matrix - Eigen::MatrixXcd::Identity(n, n));
  return out;
}

JetSeries make_isochronous_pullback(const JetSeries& generator, int order) {
  if (!generator.is_zero() && generator.terms().begin()->first.degree() < 3) {
    throw UsageError("pullback generator must only contain monomials of degree >= 3");
  }
  if (!reality_check(generator)) throw UsageError("pullback generator must be real");
  return lie_transform(generator.with_truncation(order), harmonic_hamiltonian(order));
}

NumericHamiltonian::NumericHamiltonian(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) degree_ = std::max(degree_, t.px + t.py);
}

NumericHamiltonian NumericHamiltonian::from_real_jet(const RealJet& h) {
  std::vector<Term> terms;
  for (const auto& [beta, c] : h.terms()) {
    if (beta.degree() == 0) continue;
    terms.push_back({beta.b1, beta.b2, c.evaluate().real()});
  }
  return NumericHamiltonian(std::move(terms));
}

NumericHamiltonian NumericHamiltonian::from_jet(const JetSeries& h) { return from_real_jet(complex_to_real(h)); }

namespace {

void fill_powers(double v, int degree, std::vector<double>& out) {
  out.resize(static_cast<std::size_t>(degree + 1));
  out[0] = 1.0;
  for (int j = 1; j <= degree; ++j) out[static_cast<std::size_t>(j)] = out[static_cast<std::size_t>(j - 1)] * v;
}

}  // namespace

double NumericHamiltonian::value(double x, double y) const {
  std::vector<double> xp;
  std::vector<double> yp;
  fill_powers(x, degree_, xp);
  fill_powers(y, degree_, yp);
  double sum = 0.0;
  for (const auto& t : terms_) sum += t.coeff * xp[static_cast<std::size_t>(t.px)] * yp[static_cast<std::size_t>(t.py)];
  return sum;
}

std::array<double, 2> NumericHamiltonian::gradient(double x, double y) const {
  std::vector<double> xp;
  std::vector<double> yp;
  fill_powers(x, degree_, xp);
  fill_powers(y, degree_, yp);
  double hx = 0.0;
  double hy = 0.0;
  for (const auto& t : terms_) {
    if (t.px > 0) hx += t.coeff * t.px * xp[static_cast<std::size_t>(t.px - 1)] * yp[static_cast<std::size_t>(t.py)];
    if (t.py > 0) hy += t.coeff * t.py * xp[static_cast<std::size_t>(t.px)] * yp[static_cast<std::size_t>(t.py - 1)];
  }
  return {hx, hy};
}

namespace {

using Vec2 = std::array<double, 2>;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                 e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

class DormandPrince {
 public:
  explicit DormandPrince(const NumericHamiltonian& h) : h_(h) {}

  Vec2 rhs(const Vec2& s) const {
    auto g = h_.gradient(s[0], s[1]);
    return {g[1], -g[0]};
  }

  struct Trial {
    Vec2 next;
    Vec2 error;
  };

  // One step of size dt from s with derivative k1 = rhs(s).
  Trial step(const Vec2& s, const Vec2& k1, double dt) const {
    auto at = [&](std::initializer_list<std::pair<double, const Vec2*>> combo) {
      Vec2 out = s;
      for (const auto& [w, k] : combo) {
        out[0] += dt * w * (*k)[0];
        out[1] += dt * w * (*k)[1];
      }
      return out;
    };
    const Vec2 k2 = rhs(at({{a21, &k1}}));
    const Vec2 k3 = rhs(at({{a31, &k1}, {a32, &k2}}));
    const Vec2 k4 = rhs(at({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const Vec2 k5 = rhs(at({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const Vec2 k6 = rhs(at({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const Vec2 next = at({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const Vec2 k7 = rhs(next);
    Trial t{next, {}};
    for (int i = 0; i < 2; ++i) {
      const auto u = static_cast<std::size_t>(i);
      t.error[u] = dt * (e1 * k1[u] + e3 * k3[u] + e4 * k4[u] + e5 * k5[u] + e6 * k6[u] + e7 * k7[u]);
    }
    return t;
  }

 private:
  const NumericHamiltonian& h_;
};

struct Driver {
  const NumericHamiltonian& ham;
  DormandPrince dp;
  double tol;
  double atol;
  double energy0;
  IntegrationStats stats;

  Driver(const NumericHamiltonian& h, const Vec2& start, double tolerance)
      : ham(h), dp(h), tol(tolerance), atol(tolerance * std::max(std::hypot(start[0], start[1]), 1e-300)),
        energy0(h.value(start[0], start[1])) {}

  double error_norm(const Vec2& a, const Vec2& b, const Vec2& err) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
      const double scale = atol + tol * std::max(std::abs(a[i]), std::abs(b[i]));
      worst = std::max(worst, std::abs(err[i]) / scale);
    }
    return worst;
  }

  void record_energy(const Vec2& s) {
    const double e = ham.value(s[0], s[1]);
    const double denom = energy0 != 0.0 ? std::abs(energy0) : 1.0;
    stats.max_relative_energy_drift = std::max(stats.max_relative_energy_drift, std::abs(e - energy0) / denom);
  }

  static double next_step(double dt, double err) {
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    return dt * factor;
  }

  void check_underflow(double dt, double t) const {
    if (std::abs(dt) < 1e-14 * std::max(1.0, std::abs(t))) {
      throw StiffnessError("step size underflow at t = " + std::to_string(t));
    }
  }

  static void check_bounded(const Vec2& s, double t) {
    if (!std::isfinite(s[0]) || !std::isfinite(s[1]) || std::hypot(s[0], s[1]) > 1e6) {
      throw NonPeriodicError("orbit escaped at t = " + std::to_string(t));
    }
  }
};

// Root of y(step(s, delta)) = 0 for delta in (0, dt]; Newton on the one-step
// solution with bisection safeguards.
double polish_crossing(const DormandPrince& dp, const Vec2& s, const Vec2& k1, double dt, double y_end) {
  double lo = 0.0;
  double hi = dt;
  double delta = dt * s[1] / (s[1] - y_end);
  for (int iter = 0; iter < 60; ++iter) {
    const Vec2 p = dp.step(s, k1, delta).next;
    const double g = p[1];
    if (g > 0.0) {
      lo = delta;
    } else {
      hi = delta;
    }
    const double slope = dp.rhs(p)[1];
    double next = slope != 0.0 ? delta - g / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - delta) <= 1e-15 * std::max(1.0, dt) || hi - lo <= 1e-16) return next;
    delta = next;
  }
  return delta;
}

void require_tolerance(double tol) {
  if (!(tol >= kMinTolerance && tol <= kMaxTolerance)) {
    throw UsageError("tolerance must lie in [1e-13, 1e-6], got " + std::to_string(tol));
  }
}

}  // namespace

ReturnTime return_time(const NumericHamiltonian& h, double r, double tol) {
  require_tolerance(tol);
  if (!(r > 0.0)) throw UsageError("return_time: amplitude must be positive");
  Vec2 s{r, 0.0};
  Driver drv(h, s, tol);
  Vec2 k1 = drv.dp.rhs(s);
  double t = 0.0;
  double dt = 1e-3;
  while (t < kReturnTimeLimit) {
    drv.check_underflow(dt, t);
    auto trial = drv.dp.step(s, k1, dt);
    const double err = drv.error_norm(s, trial.next, trial.error);
    if (err > 1.0) {
      ++drv.stats.rejected;
      dt = Driver::next_step(dt, err);
      continue;
    }
    ++drv.stats.steps;
    Driver::check_bounded(trial.next, t + dt);
    drv.record_energy(trial.next);
    // xdot = H_y, ydot = -H_x turns clockwise: the return is a downward crossing.
    if (s[1] > 0.0 && trial.next[1] <= 0.0 && trial.next[0] > 0.0) {
      const double delta = polish_crossing(drv.dp, s, k1, dt, trial.next[1]);
      ReturnTime out;
      out.period = t + delta;
      out.steps = drv.stats.steps;
      out.stats = drv.stats;
      return out;
    }
    t += dt;
    s = trial.next;
    k1 = drv.dp.rhs(s);
    dt = Driver::next_step(dt, err);
  }
  throw NonPeriodicError("no return to the section {y = 0, x > 0} before t = " + std::to_string(kReturnTimeLimit) +
                         " (r = " + std::to_string(r) + ")");
}

PhaseState integrate(const NumericHamiltonian& h, PhaseState start, double t_end, double tol,
                     IntegrationStats* stats) {
  require_tolerance(tol);
  Vec2 s{start.x, start.y};
  Driver drv(h, s, tol);
  Vec2 k1 = drv.dp.rhs(s);
  const double direction = t_end < 0.0 ? -1.0 : 1.0;
  double t = 0.0;
  double dt = direction * 1e-3;
  while (direction * (t_end - t) > 0.0) {
    if (direction * (t + dt - t_end) > 0.0) dt = t_end - t;
    drv.check_underflow(dt, t);
    auto trial = drv.dp.step(s, k1, dt);
    const double err = drv.error_norm(s, trial.next, trial.error);
    if (err > 1.0) {
      ++drv.stats.rejected;
      dt = Driver::next_step(dt, err);
      continue;
    }
    ++drv.stats.steps;
    Driver::check_bounded(trial.next, t + dt);
    drv.record_energy(trial.next);
    t += dt;
    s = trial.next;
    k1 = drv.dp.rhs(s);
    dt = Driver::next_step(dt, err);
  }
  if (stats) *stats = drv.stats;
  return {s[0], s[1]};
}

PeriodScan period_scan(const NumericHamiltonian& h, std::span<const double> radii, double tol) {
  require_tolerance(tol);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw UsageError("period_scan: radii must be positive and strictly increasing");
    }
  }
  std::vector<std::future<ReturnTime>> jobs;
  jobs.reserve(radii.size());
  for (double r : radii) jobs.push_back(std::async(std::launch::async, [&h, r, tol] { return return_time(h, r, tol); }));
  PeriodScan scan;
  scan.tol = tol;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    auto rt = jobs[i].get();
    scan.samples.push_back({radii[i], rt.period, rt.steps, rt.stats.max_relative_energy_drift});
  }
  return scan;
}

}  // namespace iso
