#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>

#include "iso/calibration.hpp"
#include "iso/conditions.hpp"
#include "iso/errors.hpp"
#include "iso/flow.hpp"
#include "iso/normalform.hpp"
#include "iso/phifunc.hpp"
#include "iso/serialize.hpp"
#include "iso/solver.hpp"

namespace iso::cli {

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string convention;
  std::string format = "json";
  std::optional<int> dmax;
  std::optional<int> truncation;
  double tol = 1e-10;
  std::uint64_t seed = 1;

  bool period = false;
  std::vector<double> radii;
  double period_tol = 1e-6;

  std::string a = "0";
  std::string b = "0";
  std::vector<std::string> f_coeffs;
  bool no_verify = false;

  std::vector<int> n;
  std::vector<std::string> xi;
};

// Gaussian rational written "re" or "re:im".
GaussianRational parse_gaussian(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return GaussianRational::parse(text, "0");
  return GaussianRational::parse(text.substr(0, colon), text.substr(colon + 1));
}

std::complex<double> parse_complex(const std::string& text) {
  const auto colon = text.find(':');
  try {
    std::size_t used = 0;
    const double re = std::stod(text.substr(0, colon), &used);
    if (used != (colon == std::string::npos ? text.size() : colon)) throw std::invalid_argument(text);
    double im = 0.0;
    if (colon != std::string::npos) {
      const std::string tail = text.substr(colon + 1);
      im = std::stod(tail, &used);
      if (used != tail.size()) throw std::invalid_argument(text);
    }
    return {re, im};
  } catch (const std::logic_error&) {
    throw ParseError("malformed complex number '" + text + "' (expected re or re:im)");
  }
}

JetSeries load_hamiltonian(const Options& o) {
  if (o.input.empty()) throw UsageError("--input is required");
  const Json j = read_json_file(o.input);
  // Solve reports carry their Hamiltonian under "hamiltonian".
  if (j.is_object() && j.contains("hamiltonian")) return jet_from_json(j["hamiltonian"]);
  return jet_from_json(j);
}

ConditionConvention resolve_convention(const Options& o) {
  if (!o.convention.empty()) {
    auto c = ConditionConvention::parse(o.convention);
    if (!c) throw UsageError("unknown convention '" + o.convention + "' (thm1 | step7 | thm1-2d | step7-2d)");
    return *c;
  }
  const std::string path = calibration_path();
  if (!std::filesystem::exists(path)) return ConditionConvention::calibrated();
  const Json j = read_json_file(path);
  if (!j.is_object() || !j.contains("winner") || !j["winner"].is_string()) {
    throw ParseError(path + ": no calibrated convention recorded (rerun `iso calibrate`)");
  }
  auto c = ConditionConvention::parse(j["winner"].get<std::string>());
  if (!c) throw ParseError(path + ": unknown convention " + j["winner"].dump());
  return *c;
}

void require_format(const Options& o, std::initializer_list<const char*> allowed, const char* command) {
  for (const char* f : allowed) {
    if (o.format == f) return;
  }
  throw UsageError(std::string("--format ") + o.format + " is not available for `" + command + "`");
}

void emit(const Options& o, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (o.output.empty()) {
    body(out);
    return;
  }
  std::ofstream file(o.output);
  if (!file) throw UsageError("cannot write " + o.output);
  body(file);
}

void emit_json(const Options& o, std::ostream& out, const Json& j) {
  emit(o, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

std::string show(const GradedCoefficient& c) {
  std::ostringstream os;
  const auto z = c.evaluate();
  os << c.to_string() << "  (" << std::setprecision(12) << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  os << ')';
  return os.str();
}

int default_dmax(const JetSeries& h) { return std::max(1, (h.truncation() - 2) / 2); }

int cmd_check(const Options& o, std::ostream& out) {
  require_format(o, {"json", "pretty", "csv"}, "check");
  const JetSeries h = load_hamiltonian(o);
  const auto conv = resolve_convention(o);
  const int d_max = o.dmax.value_or(default_dmax(h));
  const auto reports = check_isochronous(h, d_max, conv);
  const bool all_zero = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.vanishes(); });

  if (o.format == "json") {
    Json j;
    j["convention"] = conv.name();
    j["d_max"] = d_max;
    j["isochronous"] = all_zero;
    j["reports"] = Json::array();
    for (const auto& r : reports) j["reports"].push_back(to_json(r));
    emit_json(o, out, j);
  } else {
    emit(o, out, [&](std::ostream& os) {
      if (o.format == "csv") {
        os << "d,vanishes,re,im\n" << std::setprecision(17);
        for (const auto& r : reports) {
          const auto z = r.value.evaluate();
          os << r.d << ',' << (r.vanishes() ? 1 : 0) << ',' << z.real() << ',' << z.imag() << '\n';
        }
        return;
      }
      os << "convention " << conv.name() << '\n';
      for (const auto& r : reports) os << "d=" << r.d << "  " << show(r.value) << '\n';
      os << (all_zero ? "isochronous through d = " : "not isochronous; checked through d = ") << d_max << '\n';
    });
  }
  return all_zero ? kOk : kNegative;
}

int cmd_nf(const Options& o, std::ostream& out) {
  require_format(o, {"json", "pretty"}, "nf");
  const JetSeries h = load_hamiltonian(o);
  const int order = o.truncation.value_or(h.truncation());
  const auto result = birkhoff_normal_form(h, order);
  const bool iso_ok = std::all_of(result.c.begin(), result.c.end(), [](const auto& kv) { return kv.second.is_zero(); });
  if (o.format == "json") {
    Json j;
    j["isochronous"] = iso_ok;
    j.update(to_json(result));
    emit_json(o, out, j);
  } else {
    emit(o, out, [&](std::ostream& os) {
      for (const auto& [d, c] : result.c) os << "c_" << d << " = " << show(c) << '\n';
      os << (iso_ok ? "normal form equals H_2" : "normal form differs from H_2") << " to order " << order << '\n';
    });
  }
  return iso_ok ? kOk : kNegative;
}

int cmd_flow(const Options& o, std::ostream& out) {
  const JetSeries h = load_hamiltonian(o);
  if (!o.period) {
    require_format(o, {"json", "pretty"}, "flow");
    const int order = o.truncation.value_or(std::clamp(h.truncation() - 1, 1, kMaxJetFlowOrder));
    const auto result = jet_time_one_map(h, order);
    const bool identity = result.deviation < 1e-7;
    if (o.format == "json") {
      Json j = to_json(result);
      j["identity"] = identity;
      emit_json(o, out, j);
    } else {
      emit(o, out, [&](std::ostream& os) {
        os << "order " << order << "  deviation " << std::setprecision(6) << result.deviation << '\n';
      });
    }
    return identity ? kOk : kNegative;
  }

  require_format(o, {"json", "pretty", "csv"}, "flow --period");
  if (o.radii.empty()) throw UsageError("--period needs --radii");
  const auto scan = period_scan(NumericHamiltonian::from_jet(h), o.radii, o.tol);
  double worst = 0.0;
  for (const auto& s : scan.samples) worst = std::max(worst, std::abs(s.period - 1.0));
  if (o.format == "json") {
    Json j = to_json(scan);
    j["max_period_error"] = worst;
    emit_json(o, out, j);
  } else if (o.format == "csv") {
    emit(o, out, [&](std::ostream& os) { write_csv(os, scan); });
  } else {
    emit(o, out, [&](std::ostream& os) {
      os << std::setprecision(15);
      for (const auto& s : scan.samples) os << "r=" << s.r << "  T=" << s.period << "  steps=" << s.steps << '\n';
    });
  }
  return worst <= o.period_tol ? kOk : kNegative;
}

int emit_solve(const Options& o, std::ostream& out, const SolveReport& report) {
  require_format(o, {"json", "pretty"}, "solve");
  int verified = 0;
  if (!o.no_verify) {
    verified = report.hamiltonian.truncation();
    if (!is_isochronous_nf(report.hamiltonian, verified).isochronous) {
      throw InconsistencyError("solved Hamiltonian fails the normal-form check at order " + std::to_string(verified));
    }
  }
  if (o.format == "json") {
    emit_json(o, out, to_json(report, verified));
    return kOk;
  }
  emit(o, out, [&](std::ostream& os) {
    os << report.family << " under " << report.convention.name() << ", d_max = " << report.d_max << '\n';
    for (const auto& [j, c] : report.solved) os << "phi_" << j << " = " << show(c) << '\n';
    if (report.radius_available && !report.radius.infinite_radius) {
      os << "root-test estimates |phi_j|^(-1/j):\n";
      for (const auto& e : report.radius.estimates) os << "  j=" << e.j << "  " << std::setprecision(6) << e.value << '\n';
      os << "growth slope " << report.radius.growth_slope << '\n';
    }
    if (verified > 0) os << "normal form confirmed to order " << verified << '\n';
  });
  return kOk;
}

int cmd_phi(const Options& o, std::ostream& out) {
  require_format(o, {"json", "pretty"}, "phi");
  if (o.n.empty() == o.xi.empty()) throw UsageError("give exactly one of --n or --xi");
  Json j;
  if (!o.n.empty()) {
    const ResonancePoint p{o.n};
    const auto structure = resonance_structure(p);
    const auto value = phi_at_resonance(p);
    j["n"] = o.n;
    j["resonant"] = !structure.zero_intervals.empty();
    Json collections = Json::array();
    for (const auto& chain : structure.collections) {
      Json c = Json::array();
      for (const auto& iv : chain) c.push_back({iv.lo, iv.hi});
      collections.push_back(std::move(c));
    }
    j["collections"] = std::move(collections);
    j["value"] = to_json(value);
    j["value_float"] = float_json(value);
    if (o.format == "pretty") {
      emit(o, out, [&](std::ostream& os) { os << "Phi = " << show(value) << '\n'; });
      return kOk;
    }
  } else {
    std::vector<std::complex<double>> xi;
    for (const auto& t : o.xi) xi.push_back(parse_complex(t));
    const auto value = phi_closed(std::span<const std::complex<double>>(xi));
    j["xi"] = Json::array();
    for (const auto& z : xi) j["xi"].push_back({z.real(), z.imag()});
    j["value_float"] = {value.real(), value.imag()};
    if (o.format == "pretty") {
      emit(o, out, [&](std::ostream& os) { os << std::setprecision(15) << "Phi = " << value << '\n'; });
      return kOk;
    }
  }
  emit_json(o, out, j);
  return kOk;
}

int cmd_normalize(const Options& o, std::ostream& out) {
  require_format(o, {"json"}, "normalize");
  if (o.input.empty()) throw UsageError("--input is required");
  const auto normalized = normalize_hamiltonian(jet_from_json(read_json_file(o.input)));
  Json j = to_json(normalized.h);
  j["time_scale"] = to_json(normalized.time_scale);
  j["time_scale_float"] = normalized.time_scale.evaluate().real();
  emit_json(o, out, j);
  return kOk;
}

int cmd_calibrate(const Options& o, std::ostream& out, std::ostream& err) {
  require_format(o, {"json", "pretty"}, "calibrate");
  const auto result = calibrate(o.seed, o.truncation.value_or(10), o.dmax.value_or(4));
  Json j;
  j["seed"] = result.seed;
  j["truncation"] = result.truncation;
  j["d_max"] = result.d_max;
  j["instances"] = result.instances;
  j["scores"] = Json::array();
  for (const auto& s : result.scores) {
    Json score;
    score["convention"] = s.convention.name();
    score["agreements"] = s.agreements;
    score["perfect"] = s.perfect();
    j["scores"].push_back(std::move(score));
  }
  j["winner"] = result.winner ? Json(result.winner->name()) : Json(nullptr);

  if (o.format == "json") {
    emit_json(o, out, j);
  } else {
    emit(o, out, [&](std::ostream& os) {
      os << "seed " << result.seed << ", " << result.instances << " instances, truncation " << result.truncation
         << '\n';
      for (const auto& s : result.scores) {
        os << std::left << std::setw(10) << s.convention.name();
        for (int a : s.agreements) os << ' ' << a << '/' << s.instances;
        os << '\n';
      }
      os << "winner " << (result.winner ? result.winner->name() : "none") << '\n';
    });
  }
  if (!result.winner) {
    err << "iso: calibration inconclusive: no unique convention agrees with the normal form\n";
    return kInconsistent;
  }
  const std::filesystem::path path = calibration_path();
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream file(path);
  if (!file) throw UsageError("cannot write calibration file " + path.string());
  file << j.dump(2) << '\n';
  return kOk;
}

}  // namespace

std::string calibration_path() {
  if (const char* env = std::getenv("ISO_CALIBRATION"); env != nullptr && *env != '\0') return env;
  return "data/calibration.json";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Isochronicity analysis for planar Hamiltonian systems", "iso"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--input", o.input, "Input JSON (jet, or a solve report)");
  app.add_option("--output", o.output, "Write the report here instead of stdout");
  app.add_option("--dmax", o.dmax, "Highest condition degree")->check(CLI::PositiveNumber);
  app.add_option("--truncation", o.truncation, "Truncation / jet order")->check(CLI::PositiveNumber);
  app.add_option("--convention", o.convention, "thm1 | step7 | thm1-2d | step7-2d (default: calibrated)");
  app.add_option("--tol", o.tol, "Integrator tolerance")->check(CLI::Range(kMinTolerance, kMaxTolerance));
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--format", o.format, "json | csv | pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));

  auto* check = app.add_subcommand("check", "Evaluate the isochronicity conditions");
  auto* nf = app.add_subcommand("nf", "Birkhoff normal form");
  auto* flow = app.add_subcommand("flow", "Time-one jet map or measured periods");
  flow->add_flag("--period", o.period, "Measure return times instead of the jet map");
  flow->add_option("--radii", o.radii, "Initial amplitudes r (comma separated)")->delimiter(',');
  flow->add_option("--period-tol", o.period_tol, "Accepted |T - 1| for exit status 0");
  auto* solve = app.add_subcommand("solve", "Solve for the isochronous completion of a family");
  solve->require_subcommand(1);
  solve->add_flag("--no-verify", o.no_verify, "Skip the normal-form confirmation");
  auto* ex1 = solve->add_subcommand("ex1", "2 pi z zbar + a z^4 + b z^3 zbar + c.c. + phi(z zbar)");
  ex1->add_option("--a", o.a, "Coefficient of z^4 (re or re:im)");
  ex1->add_option("--b", o.b, "Coefficient of z^3 zbar (re or re:im)");
  auto* ex2 = solve->add_subcommand("ex2", "phi(y^2) f(x^2)");
  ex2->add_option("--f-coeffs", o.f_coeffs, "Taylor coefficients f_0, f_1, ... (rationals)")
      ->delimiter(',')
      ->required();
  auto* phi = app.add_subcommand("phi", "Evaluate Phi_k");
  phi->add_option("--n", o.n, "Lattice point xi = 2 pi i n (comma separated integers)")->delimiter(',');
  phi->add_option("--xi", o.xi, "Complex point (re or re:im, comma separated)")->delimiter(',');
  auto* normalize = app.add_subcommand("normalize", "Rescale to quadratic part 2 pi z zbar");
  auto* calibrate_cmd = app.add_subcommand("calibrate", "Pick the condition convention matching the normal form");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*check) return cmd_check(o, out);
    if (*nf) return cmd_nf(o, out);
    if (*flow) return cmd_flow(o, out);
    if (*ex1) {
      return emit_solve(o, out,
                        solve_example1(parse_gaussian(o.a), parse_gaussian(o.b), o.dmax.value_or(6),
                                       resolve_convention(o)));
    }
    if (*ex2) {
      std::vector<mpq_class> f;
      for (const auto& t : o.f_coeffs) f.push_back(GaussianRational::parse(t, "0").re());
      return emit_solve(o, out, solve_example2(f, o.dmax.value_or(4), resolve_convention(o)));
    }
    if (*phi) return cmd_phi(o, out);
    if (*normalize) return cmd_normalize(o, out);
    if (*calibrate_cmd) return cmd_calibrate(o, out, err);
  } catch (const InconsistencyError& e) {
    err << "iso: internal inconsistency: " << e.what() << '\n';
    return kInconsistent;
  } catch (const SolverDegeneracyError& e) {
    err << "iso: solver degeneracy: " << e.what() << '\n';
    return kInconsistent;
  } catch (const NonPeriodicError& e) {
    err << "iso: " << e.what() << '\n';
    return kNegative;
  } catch (const NormalizationError& e) {
    err << "iso: error: " << e.what() << "\n  hint: rescale with `iso normalize --input FILE --output FILE` first\n";
    return kInputError;
  } catch (const Error& e) {
    err << "iso: error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "iso: unexpected failure: " << e.what() << '\n';
    return kInconsistent;
  }
  return kInputError;
}

}  // namespace iso::cli
