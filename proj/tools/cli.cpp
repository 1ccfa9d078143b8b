#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "elocc/criticality.hpp"
#include "elocc/error.hpp"
#include "elocc/report.hpp"
#include "elocc/schmidt_io.hpp"

#ifndef ELOCC_VERSION
#define ELOCC_VERSION "0.0.0"
#endif

namespace elocc::cli {

namespace {

using nlohmann::json;

// Bad flag values. Reported with exit status 2, like parse errors.
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& field, const std::string& what)
      : std::runtime_error("--" + field + ": " + what) {}
};

const std::vector<std::pair<std::string, std::string>> kSubcommands = {
    {"sweep", "ground-state Schmidt spectra over a parameter range"},
    {"table", "Renyi interception table for every pair of sweep points"},
    {"classify", "match a table against the two interception patterns"},
    {"locate", "refine the bracket around a pattern change"},
    {"scaling", "fit g_c(N) = a exp(-N/b) + c over chain lengths"},
    {"check", "LOCC and Renyi verdicts for two Schmidt vectors"},
    {"excited", "compare the first excited state with the ground state"},
    {"demo-catalyst", "the textbook catalysis example"},
};

bool needs_range(const std::string& cmd) {
  return cmd == "sweep" || cmd == "table" || cmd == "classify";
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

AlphaGrid grid_of(const RunConfig& cfg) {
  return AlphaGrid{cfg.alpha_min, cfg.alpha_max, cfg.alpha_points, cfg.refine_tol};
}

ModelSpec model_of(const RunConfig& cfg) {
  try {
    return ModelSpec::parse(cfg.model);
  } catch (const Error& e) {
    throw UsageError("model", e.what());
  }
}

std::optional<Bipartition> cut_of(const RunConfig& cfg, int n) {
  if (cfg.cut.empty()) {
    if (n % 2 != 0) throw UsageError("cut", "the default half cut needs an even number of sites");
    return std::nullopt;
  }
  try {
    return Bipartition::parse(cfg.cut, n);
  } catch (const Error& e) {
    throw UsageError("cut", e.what());
  }
}

void check_sites(const std::string& field, int n) {
  if (n < 2 || n > kMaxSites) {
    throw UsageError(field, "chain length must be in [2, " + std::to_string(kMaxSites) + "], got " +
                                std::to_string(n));
  }
}

// Everything that can be checked without computing anything.
void validate(const RunConfig& cfg) {
  const std::string& cmd = cfg.subcommand;
  if (cfg.workers < 1) throw UsageError("workers", "must be at least 1");
  if (!(cfg.trunc > 0.0 && cfg.trunc < 1.0)) throw UsageError("trunc", "must lie in (0, 1)");
  try {
    grid_of(cfg).validate();
  } catch (const Error& e) {
    throw UsageError("alpha-min/--alpha-max/--alpha-points/--refine-tol", e.what());
  }

  if (cmd == "check") {
    if (cfg.a_path.empty()) throw UsageError("a", "required by check");
    if (cfg.b_path.empty()) throw UsageError("b", "required by check");
    return;
  }
  if (cmd == "demo-catalyst") return;
  if (cmd == "scaling" && !cfg.points_path.empty()) return;

  if (cfg.model.empty()) throw UsageError("model", "required by " + cmd);
  const ModelSpec model = model_of(cfg);

  if (cmd == "excited") {
    check_sites("n", cfg.n_sites);
    cut_of(cfg, cfg.n_sites);
    try {
      model.build(2);
    } catch (const Error& e) {
      throw UsageError("model", std::string(e.what()) + " (excited needs every coupling fixed)");
    }
    return;
  }

  if (cfg.parameter.empty()) throw UsageError("param", "required by " + cmd);
  const auto names = ModelSpec::parameter_names(model.family);
  if (std::find(names.begin(), names.end(), cfg.parameter) == names.end()) {
    throw UsageError("param", "'" + cfg.parameter + "' is not a coupling of " +
                                  std::string(to_string(model.family)));
  }
  if (model.params.contains(cfg.parameter)) {
    throw UsageError("param", "'" + cfg.parameter + "' is already fixed by --model");
  }
  try {
    model.with(cfg.parameter, 0.0).build(2);
  } catch (const Error& e) {
    throw UsageError("model", e.what());
  }

  if (cmd == "scaling") {
    if (cfg.sizes.size() < 3) throw UsageError("sizes", "need at least 3 chain lengths");
    for (int n : cfg.sizes) {
      check_sites("sizes", n);
      cut_of(cfg, n);
    }
  } else {
    check_sites("n", cfg.n_sites);
    cut_of(cfg, cfg.n_sites);
  }

  if (needs_range(cmd)) {
    if (!(cfg.step > 0.0)) throw UsageError("step", "must be > 0");
    if (cfg.to < cfg.from) throw UsageError("to", "must not be below --from");
  } else {
    if (!(cfg.target_step > 0.0)) throw UsageError("target-step", "must be > 0");
    if (!(cfg.to > cfg.from)) throw UsageError("to", "must exceed --from");
  }
  if (cmd == "classify") {
    if (!cfg.split) throw UsageError("split", "required by classify");
    if (!(*cfg.split > cfg.from && *cfg.split <= cfg.to)) {
      throw UsageError("split", "must lie in (--from, --to]");
    }
    if (!(cfg.tolerance >= 0.0 && cfg.tolerance < 1.0)) {
      throw UsageError("tolerance", "must lie in [0, 1)");
    }
  }
}

SweepRequest sweep_request(const RunConfig& cfg, int n) {
  SweepRequest req;
  req.model = model_of(cfg);
  req.parameter = cfg.parameter;
  req.n_sites = n;
  req.cut = cut_of(cfg, n);
  req.with_excited = cfg.excited;
  req.trunc_tol = cfg.trunc;
  return req;
}

// Rows of a flat "key,value" CSV from a JSON object; nested values are dumped.
std::string key_value_csv(const json& obj) {
  std::string out = "key,value\n";
  for (const auto& [k, v] : obj.items()) {
    std::string text;
    if (v.is_string()) {
      text = v.get<std::string>();
    } else if (v.is_number_float()) {
      text = format_real(v.get<double>());
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_number(); })) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        text += (i ? ";" : "") + format_real(v[i].get<double>());
      }
    } else {
      text = v.dump();
      if (v.is_object() || v.is_array()) {
        std::string quoted = "\"";
        for (char ch : text) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        text = quoted + "\"";
      }
    }
    out += k + "," + text + "\n";
  }
  return out;
}

struct Output {
  std::string csv;
  json doc;
};

void emit(const RunConfig& cfg, Output result, std::ostream& out) {
  std::string content;
  if (cfg.format == OutputFormat::Json) {
    if (cfg.banner) result.doc["generated"] = std::string("elocc ") + ELOCC_VERSION + " " + timestamp();
    content = result.doc.dump(2) + "\n";
  } else {
    if (cfg.banner) content = std::string("# elocc ") + ELOCC_VERSION + " " + timestamp() + "\n";
    content += result.csv;
  }
  if (cfg.output.empty()) {
    out << content;
  } else {
    write_atomic(cfg.output, content);
  }
}

Output run_sweep(const RunConfig& cfg) {
  const auto result = sweep(sweep_request(cfg, cfg.n_sites), {cfg.from, cfg.to, cfg.step},
                            ExecutionOptions{cfg.workers});
  return {sweep_csv(result), sweep_json(result)};
}

InterceptionTable build_table(const RunConfig& cfg) {
  const ExecutionOptions exec{cfg.workers};
  const auto result = sweep(sweep_request(cfg, cfg.n_sites), {cfg.from, cfg.to, cfg.step}, exec);
  return interception_table(result, grid_of(cfg), exec);
}

Output run_table(const RunConfig& cfg) {
  const auto table = build_table(cfg);
  const TableFormat fmt{cfg.paper_rounding};
  return {table_csv(table, cfg.parameter, fmt), table_json(table, cfg.parameter, fmt)};
}

Output run_classify(const RunConfig& cfg) {
  const auto table = build_table(cfg);
  // The second group starts at the first label at or above the split value.
  const auto labels = table.labels();
  std::size_t split = 0;
  while (split < labels.size() && labels[split] < *cfg.split - 1e-9) ++split;
  if (split == 0 || split >= labels.size()) {
    throw UsageError("split", "leaves one of the label groups empty");
  }
  const auto report = classify_pattern(table, split, cfg.tolerance);
  json doc = pattern_json(report, labels[split]);
  doc["region"] = nullptr;
  try {
    const Bracket b = table_boundary(table, split, report.pattern);
    doc["region"] = json{{"lower", b.lower}, {"upper", b.upper}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoTransition) throw;
  }
  json flat = {{"pattern", doc["pattern"]},
               {"split", doc["split"]},
               {"nonconforming_fraction", doc["nonconforming_fraction"]}};
  if (!doc["region"].is_null()) {
    flat["region_lower"] = doc["region"]["lower"];
    flat["region_upper"] = doc["region"]["upper"];
  }
  return {key_value_csv(flat), doc};
}

BracketTrace locate_for(const RunConfig& cfg, int n) {
  BoundaryRequest req;
  req.sweep = sweep_request(cfg, n);
  req.sweep.with_excited = false;
  req.from = cfg.from;
  req.to = cfg.to;
  req.target_step = cfg.target_step;
  req.grid = grid_of(cfg);
  return locate_boundary(req, ExecutionOptions{cfg.workers});
}

Output run_locate(const RunConfig& cfg) {
  const auto trace = locate_for(cfg, cfg.n_sites);
  return {bracket_csv(trace), bracket_json(trace)};
}

std::vector<ScalingPoint> read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::vector<ScalingPoint> pts;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#' || line.rfind("n_sites", 0) == 0) continue;
    std::istringstream row(line);
    ScalingPoint p;
    char comma = 0;
    if (!(row >> p.n_sites >> comma >> p.critical) || comma != ',') {
      throw Error(ErrorCode::ParseError, path + ":" + std::to_string(line_no) + ": expected n_sites,critical");
    }
    pts.push_back(p);
  }
  return pts;
}

Output run_scaling(const RunConfig& cfg) {
  std::vector<ScalingPoint> pts;
  json brackets = json::array();
  if (!cfg.points_path.empty()) {
    pts = read_points(cfg.points_path);
  } else {
    for (int n : cfg.sizes) {
      const auto trace = locate_for(cfg, n);
      pts.push_back({n, trace.bracket.midpoint()});
      json b = bracket_json(trace);
      b["n_sites"] = n;
      brackets.push_back(std::move(b));
    }
  }
  const auto fit = scaling_fit(pts);
  json doc = scaling_json(fit, pts);
  if (!brackets.empty()) doc["brackets"] = std::move(brackets);
  return {scaling_csv(fit, pts), doc};
}

Output run_check(const RunConfig& cfg) {
  const auto a = read_schmidt_csv(std::filesystem::path(cfg.a_path), cfg.trunc);
  const auto b = read_schmidt_csv(std::filesystem::path(cfg.b_path), cfg.trunc);
  const auto verdict = elocc_verdict(a, b, grid_of(cfg));
  json doc = verdict_json(verdict);
  doc["locc_a_to_b"] = locc_convertible(a, b);
  doc["locc_b_to_a"] = locc_convertible(b, a);
  return {key_value_csv(doc), doc};
}

Output run_excited(const RunConfig& cfg) {
  const int n = cfg.n_sites;
  const auto cut = cut_of(cfg, n).value_or(half_chain(n));
  const auto cmp = gs_vs_excited(model_of(cfg), n, cut, grid_of(cfg), cfg.trunc);
  json doc = excited_json(cmp);
  json flat = {{"direction", doc["verdict"]["direction"]},
               {"crossings", doc["verdict"]["crossings"]},
               {"ground_energy", cmp.ground_energy},
               {"excited_energy", cmp.excited_energy},
               {"large_alpha_gap", cmp.large_alpha_gap}};
  return {key_value_csv(flat), doc};
}

std::string spectrum_text(const SchmidtVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.rank(); ++i) out += (i ? ", " : "") + format_real(v[i]);
  return out + ")";
}

Output run_demo_catalyst(const RunConfig& cfg) {
  const auto p = SchmidtVector::from_sorted({0.4, 0.4, 0.1, 0.1});
  const auto q = SchmidtVector::from_sorted({0.5, 0.25, 0.25});
  const auto c = SchmidtVector::from_sorted({0.6, 0.4});
  const bool forward = locc_convertible(p, q);
  const bool backward = locc_convertible(q, p);
  const bool catalysed = verify_catalyst(p, q, c);
  const auto pc = tensor_product(p, c);
  const auto qc = tensor_product(q, c);
  const auto verdict = elocc_verdict(p, q, grid_of(cfg));

  const std::string locc = forward ? "p -> q" : (backward ? "q -> p" : "incomparable");
  std::string csv = "# p = " + spectrum_text(p) + ", q = " + spectrum_text(q) + "\n";
  csv += "# LOCC: " + locc + "\n";
  csv += "# with catalyst " + spectrum_text(c) + ": " + (catalysed ? "convertible" : "not convertible") + "\n";
  json doc = {{"p", p.coeffs()},
              {"q", q.coeffs()},
              {"catalyst", c.coeffs()},
              {"locc_p_to_q", forward},
              {"locc_q_to_p", backward},
              {"catalysed_p_to_q", catalysed},
              {"p_with_catalyst", pc.coeffs()},
              {"q_with_catalyst", qc.coeffs()},
              {"elocc_direction", std::string(to_string(verdict.direction))}};
  csv += key_value_csv(doc);
  return {csv, doc};
}

Output dispatch(const RunConfig& cfg) {
  const std::string& cmd = cfg.subcommand;
  if (cmd == "sweep") return run_sweep(cfg);
  if (cmd == "table") return run_table(cfg);
  if (cmd == "classify") return run_classify(cfg);
  if (cmd == "locate") return run_locate(cfg);
  if (cmd == "scaling") return run_scaling(cfg);
  if (cmd == "check") return run_check(cfg);
  if (cmd == "excited") return run_excited(cfg);
  return run_demo_catalyst(cfg);
}

void add_options(CLI::App& app, RunConfig& cfg) {
  app.add_option("--model", cfg.model, "family[:name=value,...], e.g. xy:gamma=sqrt(3)/2");
  app.add_option("--param", cfg.parameter, "coupling to sweep (g | gamma, h | delta)");
  app.add_option("--n", cfg.n_sites, "number of sites")->capture_default_str();
  app.add_option("--cut", cfg.cut, "half | comb | sites=1,3,...");
  app.add_option("--from", cfg.from, "first parameter value");
  app.add_option("--to", cfg.to, "last parameter value");
  app.add_option("--step", cfg.step, "sweep step");
  app.add_option("--target-step", cfg.target_step, "final bracket resolution")->capture_default_str();
  app.add_option("--split", cfg.split, "parameter value where the second label group starts");
  app.add_option("--tolerance", cfg.tolerance, "nonconforming share allowed per block")->capture_default_str();
  app.add_option("--sizes", cfg.sizes, "chain lengths for scaling")->delimiter(',')->capture_default_str();
  app.add_option("--points", cfg.points_path, "CSV of n_sites,critical to fit instead of locating");
  app.add_option("--a", cfg.a_path, "Schmidt coefficients of state A (CSV)");
  app.add_option("--b", cfg.b_path, "Schmidt coefficients of state B (CSV)");
  app.add_flag("--excited", cfg.excited, "also record the first excited state");
  app.add_flag("--round-paper", cfg.paper_rounding, "round crossings up to 0.1");
  app.add_option("--alpha-min", cfg.alpha_min)->capture_default_str();
  app.add_option("--alpha-max", cfg.alpha_max)->capture_default_str();
  app.add_option("--alpha-points", cfg.alpha_points)->capture_default_str();
  app.add_option("--refine-tol", cfg.refine_tol)->capture_default_str();
  app.add_option("--trunc", cfg.trunc, "drop Schmidt coefficients below this")->capture_default_str();
  app.add_option("--output,-o", cfg.output, "output file (default: stdout)");
  app.add_option("--format", cfg.format, "csv | json")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, OutputFormat>{{"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}},
          CLI::ignore_case)
          .description(""));
  app.add_flag("!--no-banner", cfg.banner, "omit the timestamp header");
  app.add_option("--workers", cfg.workers, "concurrent sweep points")
      ->envname("ELOCC_WORKERS")
      ->capture_default_str();
  app.set_config("--config", "", "file of key = value lines; flags win");
}

}  // namespace

int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Entanglement-monotone diagnostics for spin-chain ground states", "elocc"};
  app.set_version_flag("--version", ELOCC_VERSION);
  add_options(app, cfg);
  app.require_subcommand(1);
  for (const auto& [name, about] : kSubcommands) app.add_subcommand(name, about)->fallthrough();

  std::vector<const char*> raw;
  raw.reserve(argv.size());
  for (const auto& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e, out, err);
    return status == 0 ? kSuccess : kUsageError;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    validate(cfg);
    emit(cfg, dispatch(cfg), out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return kDomainError;
  }
  return kSuccess;
}

}  // namespace elocc::cli
