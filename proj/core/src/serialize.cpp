#include "iso/serialize.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>

#include "iso/errors.hpp"

namespace iso {

namespace {

std::string rational_string(const mpq_class& q) { return q.get_str(); }

std::string as_rational_text(const Json& j, const char* what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ParseError(std::string(what) + ": expected a rational string or an integer, got " + j.dump());
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + ": expected an integer, got " + j.dump());
  return j.get<int>();
}

Json terms_json(const auto& jet) {
  Json terms = Json::array();
  for (const auto& [beta, c] : jet.terms()) {
    Json t;
    t["beta"] = {beta.b1, beta.b2};
    t["coeff"] = to_json(c);
    terms.push_back(std::move(t));
  }
  return terms;
}

template <class Jet>
Jet read_terms(const Json& j, int truncation) {
  Jet out(truncation);
  std::set<MultiIndex> seen;
  const Json& terms = j.at("terms");
  if (!terms.is_array()) throw ParseError("jet: \"terms\" must be an array");
  for (const auto& t : terms) {
    const Json& beta = t.at("beta");
    if (!beta.is_array() || beta.size() != 2) throw ParseError("jet: \"beta\" must be [b1, b2], got " + beta.dump());
    const MultiIndex b{as_int(beta[0], "beta"), as_int(beta[1], "beta")};
    if (b.b1 < 0 || b.b2 < 0) throw ParseError("jet: negative exponent in " + beta.dump());
    if (b.degree() > truncation) {
      throw ParseError("jet: monomial " + beta.dump() + " exceeds truncation " + std::to_string(truncation));
    }
    if (!seen.insert(b).second) throw ParseError("jet: duplicate beta " + beta.dump());
    out.set(b, coefficient_from_json(t.at("coeff")));
  }
  return out;
}

Json complex_pair(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

Json to_json(const GradedCoefficient& c) {
  Json out = Json::array();
  for (const auto& t : c.terms()) {
    Json term;
    term["pi"] = t.pi_power;
    term["sqrt2"] = t.sqrt2_power;
    term["re"] = rational_string(t.value.re());
    term["im"] = rational_string(t.value.im());
    out.push_back(std::move(term));
  }
  return out;
}

GradedCoefficient coefficient_from_json(const Json& j) {
  try {
    if (j.is_number_integer() || j.is_string()) {
      return GaussianRational::parse(as_rational_text(j, "coefficient"), "0");
    }
    if (!j.is_array()) throw ParseError("coefficient: expected an array of graded terms, got " + j.dump());
    GradedCoefficient out;
    for (const auto& t : j) {
      const int m = t.contains("pi") ? as_int(t["pi"], "pi") : 0;
      const int e = t.contains("sqrt2") ? as_int(t["sqrt2"], "sqrt2") : 0;
      const std::string re = t.contains("re") ? as_rational_text(t["re"], "re") : "0";
      const std::string im = t.contains("im") ? as_rational_text(t["im"], "im") : "0";
      out += GradedCoefficient::term(GaussianRational::parse(re, im), m, e);
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("coefficient: ") + e.what());
  }
}

Json float_json(const GradedCoefficient& c) { return complex_pair(c.evaluate()); }

Json to_json(const JetSeries& h) {
  Json out;
  out["truncation"] = h.truncation();
  out["terms"] = terms_json(h);
  return out;
}

Json to_json(const RealJet& h) {
  Json out;
  out["truncation"] = h.truncation();
  out["coords"] = "xy";
  out["terms"] = terms_json(h);
  return out;
}

JetSeries jet_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw ParseError("jet: expected a JSON object");
    const int truncation = as_int(j.at("truncation"), "truncation");
    if (truncation < 0) throw ParseError("jet: negative truncation");
    const std::string coords = j.contains("coords") ? j["coords"].get<std::string>() : "zzbar";
    if (coords == "xy") return real_to_complex(read_terms<RealJet>(j, truncation));
    if (coords != "zzbar") throw ParseError("jet: unknown coords \"" + coords + "\" (use \"zzbar\" or \"xy\")");
    return read_terms<JetSeries>(j, truncation);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("jet: ") + e.what());
  }
}

Json to_json(const ConditionReport& r) {
  Json out;
  out["d"] = r.d;
  out["convention"] = r.convention.name();
  out["vanishes"] = r.vanishes();
  out["value"] = to_json(r.value);
  out["value_float"] = float_json(r.value);
  Json terms = Json::array();
  for (const auto& t : r.per_s_terms) {
    Json term;
    term["s"] = t.s;
    term["weight"] = rational_string(t.weight);
    term["sigma"] = to_json(t.sigma);
    term["sigma_float"] = float_json(t.sigma);
    terms.push_back(std::move(term));
  }
  out["terms"] = std::move(terms);
  return out;
}

Json to_json(const NormalFormResult& r) {
  Json out;
  out["order"] = r.order;
  Json c = Json::array();
  for (const auto& [d, value] : r.c) {
    Json entry;
    entry["d"] = d;
    entry["value"] = to_json(value);
    entry["value_float"] = float_json(value);
    c.push_back(std::move(entry));
  }
  out["c"] = std::move(c);
  out["normal_form"] = to_json(r.normal_form);
  Json generators = Json::array();
  for (const auto& g : r.generators) generators.push_back(to_json(g));
  out["generators"] = std::move(generators);
  return out;
}

Json to_json(const SolveReport& r, int verification_order) {
  Json out;
  out["family"] = r.family;
  out["convention"] = r.convention.name();
  out["d_max"] = r.d_max;
  out["verification_order"] = verification_order;
  out["time_scale"] = to_json(r.time_scale);
  Json solved = Json::array();
  for (const auto& [j, c] : r.solved) {
    Json entry;
    entry["j"] = j;
    entry["value"] = to_json(c);
    entry["value_float"] = c.evaluate().real();
    solved.push_back(std::move(entry));
  }
  out["solved"] = std::move(solved);
  Json residuals = Json::array();
  for (const auto& [d, c] : r.residuals) {
    Json entry;
    entry["d"] = d;
    entry["value"] = to_json(c);
    residuals.push_back(std::move(entry));
  }
  out["residuals"] = std::move(residuals);
  Json radius;
  if (!r.radius_available) {
    radius = nullptr;
  } else if (r.radius.infinite_radius) {
    radius["infinite_radius"] = true;
  } else {
    Json estimates = Json::array();
    for (const auto& e : r.radius.estimates) estimates.push_back(Json::array({e.j, e.value}));
    radius["estimates"] = std::move(estimates);
    radius["growth_slope"] = std::isfinite(r.radius.growth_slope) ? Json(r.radius.growth_slope) : Json(nullptr);
  }
  out["radius"] = std::move(radius);
  out["hamiltonian"] = to_json(r.hamiltonian);
  return out;
}

Json to_json(const JetFlowResult& r) {
  Json out;
  out["order"] = r.order;
  out["dimension"] = r.map_matrix.rows();
  out["deviation"] = r.deviation;
  return out;
}

Json to_json(const PeriodScan& scan) {
  Json out;
  out["tol"] = scan.tol;
  Json samples = Json::array();
  for (const auto& s : scan.samples) {
    Json entry;
    entry["r"] = s.r;
    entry["T"] = s.period;
    entry["steps"] = s.steps;
    entry["max_relative_energy_drift"] = s.max_relative_energy_drift;
    samples.push_back(std::move(entry));
  }
  out["samples"] = std::move(samples);
  return out;
}

void write_csv(std::ostream& os, const PeriodScan& scan) {
  os << "r,T,steps,tol\n";
  const auto flags = os.flags();
  const auto precision = os.precision();
  os << std::setprecision(17);
  for (const auto& s : scan.samples) os << s.r << ',' << s.period << ',' << s.steps << ',' << scan.tol << '\n';
  os.flags(flags);
  os.precision(precision);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace iso
