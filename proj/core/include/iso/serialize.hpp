#pragma once

#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "iso/conditions.hpp"
#include "iso/flow.hpp"
#include "iso/graded.hpp"
#include "iso/jets.hpp"
#include "iso/normalform.hpp"
#include "iso/solver.hpp"

namespace iso {

// Insertion-ordered so that emitted files are byte-stable.
using Json = nlohmann::ordered_json;

// Coefficients: [{"pi": m, "sqrt2": e, "re": "p/q", "im": "p/q"}, ...].
Json to_json(const GradedCoefficient& c);
// Also accepts a bare integer or a "p/q" string for real rationals.
GradedCoefficient coefficient_from_json(const Json& j);

// [re, im] evaluated at the double nearest to pi.
Json float_json(const GradedCoefficient& c);

// {"truncation": N, "terms": [{"beta": [b1, b2], "coeff": [...]}, ...]}
Json to_json(const JetSeries& h);
Json to_json(const RealJet& h);  // adds "coords": "xy"
// Reads either coordinate system ("coords": "xy" selects x^b1 y^b2 and is
// converted to (z, zbar)). Duplicate betas and negative exponents are
// rejected with ParseError.
JetSeries jet_from_json(const Json& j);

Json to_json(const ConditionReport& r);
Json to_json(const NormalFormResult& r);
// verification_order: the order at which is_isochronous_nf confirmed the
// solution, or 0 when not run.
Json to_json(const SolveReport& r, int verification_order);
Json to_json(const JetFlowResult& r);
Json to_json(const PeriodScan& scan);
void write_csv(std::ostream& os, const PeriodScan& scan);

Json read_json_file(const std::string& path);

}  // namespace iso
