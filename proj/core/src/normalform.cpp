#include "iso/normalform.hpp"

#include <string>

#include "iso/errors.hpp"

namespace iso {

HomologicalSolution homological_solve(const JetSeries& r) {
  HomologicalSolution out{JetSeries(r.truncation()), JetSeries(r.truncation())};
  if (r.is_zero()) return out;
  const int n = r.terms().begin()->first.degree();
  if (n < 3) throw UsageError("homological_solve: degree must be at least 3, got " + std::to_string(n));
  for (const auto& [beta, c] : r.terms()) {
    if (beta.degree() != n) throw UsageError("homological_solve: input is not homogeneous");
    if (beta.radial()) {
      out.resonant.set(beta, c);
    } else {
      const GradedCoefficient lambda = GradedCoefficient::term(GaussianRational(0, 2 * (beta.b1 - beta.b2)), 1);
      out.generator.set(beta, c.divided_by(lambda));
    }
  }
  return out;
}

JetSeries lie_transform(const JetSeries& generator, const JetSeries& f) {
  if (generator.is_zero()) return f;
  if (generator.terms().begin()->first.degree() < 3) {
    throw UsageError("lie_transform: generator must start at degree 3");
  }
  const int order = f.truncation();
  JetSeries sum = f;
  JetSeries term = f;
  for (long n = 1;; ++n) {
    term = poisson_bracket(generator, term, order);
    if (term.is_zero()) break;
    term *= GradedCoefficient(GaussianRational(mpq_class(1, n)));
    sum += term;
  }
  return sum;
}

NormalFormResult birkhoff_normal_form(const JetSeries& h, int order) {
  require_normalized(h);
  if (order < 2) throw UsageError("normal form order must be at least 2");
  if (h.truncation() < order) {
    throw UsageError("normal form of order " + std::to_string(order) + " needs H truncated at >= " +
                     std::to_string(order) + ", got " + std::to_string(h.truncation()));
  }
  NormalFormResult result;
  result.order = order;
  JetSeries current = h.with_truncation(order).without_constant();
  for (int n = 3; n <= order; ++n) {
    auto [generator, resonant] = homological_solve(current.homogeneous_part(n));
    if (!generator.is_zero()) current = lie_transform(generator, current);
    result.generators.push_back(std::move(generator));
  }
  for (const auto& [beta, c] : current.terms()) {
    if (!beta.radial()) throw InconsistencyError("normal form retained a non-radial monomial");
  }
  for (int d = 1; 2 * (d + 1) <= order; ++d) result.c[d] = current.coeff({d + 1, d + 1});
  result.normal_form = std::move(current);
  return result;
}

NormalFormVerdict is_isochronous_nf(const JetSeries& h, int order) {
  auto nf = birkhoff_normal_form(h, order);
  NormalFormVerdict verdict;
  verdict.isochronous = true;
  for (const auto& [d, c] : nf.c) {
    verdict.c.push_back(c);
    if (!c.is_zero()) verdict.isochronous = false;
  }
  return verdict;
}

}  // namespace iso
