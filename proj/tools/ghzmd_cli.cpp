// Command-line runner for the GHZ measurement-dependence toolkit. Links only
// the C interface.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ghzmd/ghzmd.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

constexpr double kPi = 3.14159265358979323846;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CString {
  char* p = nullptr;
  ~CString() { ghzmd_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

void check(ghzmd_status s) {
  if (s == GHZMD_OK) return;
  const std::string msg = ghzmd_last_error();
  if (s == GHZMD_ERR_INVALID_ARGUMENT || s == GHZMD_ERR_BUDGET_TOO_SMALL) throw UsageError(msg);
  throw CheckFailed(msg);
}

// "1.5" is radians; "deg:90" is degrees.
double parse_angle(std::string text) {
  bool degrees = false;
  if (text.rfind("deg:", 0) == 0) {
    degrees = true;
    text = text.substr(4);
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("cannot parse angle '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw UsageError("cannot parse angle '" + text + "'");
  return degrees ? v * kPi / 180.0 : v;
}

// "a,b,c" in radians, "deg:a,b,c" with every entry in degrees, or per-entry prefixes.
std::array<double, 3> parse_settings(const std::string& text) {
  std::string body = text;
  std::string prefix;
  if (body.rfind("deg:", 0) == 0) {
    prefix = "deg:";
    body = body.substr(4);
  }
  std::vector<std::string> parts;
  std::stringstream ss(body);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("--settings needs three comma-separated angles, got '" + text + "'");
  std::array<double, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string& p = parts[i];
    out[i] = parse_angle(p.rfind("deg:", 0) == 0 ? p : prefix + p);
  }
  return out;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CheckFailed("cannot open output file " + path);
  out << content;
  if (!content.empty() && content.back() != '\n') out << '\n';
  if (!out) throw CheckFailed("failed writing " + path);
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

struct ModelFlags {
  std::string variant = "full";
  std::string mode = "corrected";
  std::string lambda0 = "0";

  void add(CLI::App* cmd) {
    cmd->add_option("--variant", variant, "Model variant: full or expectation")
        ->check(CLI::IsMember({"full", "expectation"}));
    cmd->add_option("--mode", mode, "Measure construction: corrected or literal")
        ->check(CLI::IsMember({"corrected", "literal"}));
    cmd->add_option("--lambda0", lambda0, "Atom anchor angle (radians, deg: prefix for degrees)");
  }

  ghzmd_model_config config() const {
    ghzmd_model_config c;
    ghzmd_model_config_default(&c);
    c.variant = variant == "full" ? GHZMD_VARIANT_FULL : GHZMD_VARIANT_EXPECTATION;
    c.mode = mode == "corrected" ? GHZMD_MODE_CORRECTED : GHZMD_MODE_LITERAL;
    c.lambda0 = parse_angle(lambda0);
    return c;
  }
};

int run_verify_oracle(std::uint64_t seed, int triples, const std::string& out) {
  int passed = 0;
  CString json;
  check(ghzmd_verify_oracle(seed, triples, &passed, &json.p));
  write_output(out, json.str());
  if (!passed) {
    const auto j = nlohmann::json::parse(json.str());
    for (const auto& c : j["checks"]) {
      if (!c["passed"].get<bool>()) std::cerr << "check failed: " << c["check"].get<std::string>() << '\n';
    }
    return kExitCheckFailed;
  }
  return kExitOk;
}

int run_simulate(const std::string& settings_text, const ModelFlags& model, std::uint64_t n, std::uint64_t seed,
                 unsigned threads, const std::string& out, const std::string& csv) {
  if (settings_text.empty()) throw UsageError("simulate needs --settings");
  const auto phi = parse_settings(settings_text);
  const ghzmd_model_config cfg = model.config();
  CString json, table;
  check(ghzmd_simulate(phi.data(), &cfg, n, seed, threads, &json.p, &table.p));
  write_output(out, json.str());
  if (!csv.empty()) write_output(csv, table.str());

  const auto j = nlohmann::json::parse(json.str());
  double total = 0.0;
  for (const auto& [key, value] : j["exact_joint"].items()) total += value.get<double>();
  if (std::abs(total - 1.0) > 1e-9) {
    std::cerr << "check failed: exact joint normalization (total mass " << total << ")\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

int run_metrics(const ModelFlags& model, const ghzmd_search_config& search, std::uint64_t independence_trials,
                const std::string& out, const std::string& trace) {
  const ghzmd_model_config cfg = model.config();
  ghzmd_report* raw = nullptr;
  check(ghzmd_measurement_dependence(&cfg, &search, &raw));
  std::unique_ptr<ghzmd_report, decltype(&ghzmd_report_destroy)> report(raw, ghzmd_report_destroy);

  CString json;
  check(ghzmd_report_json(report.get(), &json.p));
  auto j = nlohmann::json::parse(json.str());
  if (independence_trials >= 2) {
    int independent = 0;
    check(ghzmd_independence_check(&cfg, independence_trials, search.seed, &independent));
    j["measurement_independent"] = independent != 0;
    j["independence_trials"] = independence_trials;
  }
  write_output(out, j.dump(2));
  if (!trace.empty()) {
    CString csv;
    check(ghzmd_report_trace_csv(report.get(), &csv.p));
    write_output(trace, csv.str());
  }

  const double m = ghzmd_report_m(report.get()), f = ghzmd_report_f(report.get());
  if (!(m >= 0.0 && m <= 2.0)) {
    std::cerr << "check failed: M outside [0, 2]\n";
    return kExitCheckFailed;
  }
  if (std::abs(f - (1.0 - m / 2.0)) > 1e-12) {
    std::cerr << "check failed: F != 1 - M/2\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

int run_bg_curves(int points, int grid, const std::string& out) {
  CString csv;
  check(ghzmd_e1_curve_csv(points, &csv.p));
  write_output(out, csv.str());
  int holds = 0;
  double slack = 0.0, where = 0.0;
  check(ghzmd_dominance_check(grid, &holds, &slack, &where));
  std::cerr << "dominance |E1| >= |cos|: " << (holds ? "holds" : "FAILS") << ", min slack " << slack << " at phi "
            << where << '\n';
  if (!holds) {
    std::cerr << "check failed: dominance\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

int run_decompose(int m_max, int grid, const std::string& out) {
  CString json;
  double residual = 0.0;
  check(ghzmd_mixture_decompose(m_max, grid, &residual, &json.p));
  write_output(out, json.str());
  const auto j = nlohmann::json::parse(json.str());
  if (std::abs(j["weight_sum"].get<double>() - 1.0) > 1e-9) {
    std::cerr << "check failed: mixture weights do not sum to 1\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

int run_acceptance(const ghzmd_acceptance_config& cfg, const std::string& out) {
  ghzmd_acceptance* raw = nullptr;
  check(ghzmd_run_acceptance(&cfg, &raw));
  std::unique_ptr<ghzmd_acceptance, decltype(&ghzmd_acceptance_destroy)> report(raw, ghzmd_acceptance_destroy);
  bool all = true;
  for (std::size_t i = 0; i < ghzmd_acceptance_count(report.get()); ++i) {
    const bool ok = ghzmd_acceptance_passed(report.get(), i) != 0;
    all = all && ok;
    std::fprintf(stderr, "[%s] %d. %s: %s (%.2fs)\n", ok ? "PASS" : "FAIL", ghzmd_acceptance_id(report.get(), i),
                 ghzmd_acceptance_name(report.get(), i), ghzmd_acceptance_summary(report.get(), i),
                 ghzmd_acceptance_seconds(report.get(), i));
  }
  CString json;
  check(ghzmd_acceptance_json(report.get(), &json.p));
  write_output(out, json.str());
  return all ? kExitOk : kExitCheckFailed;
}

// Config-file entries become "--key=value" tokens placed before the user's
// own flags; with TakeLast the command line wins.
std::vector<std::string> expand_config(int argc, char** argv, CLI::App& app) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a path");
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (config_path.empty() || rest.empty()) return rest;

  CLI::App* sub = nullptr;
  for (CLI::App* s : app.get_subcommands({})) {
    if (s->get_name() == rest.front()) sub = s;
  }
  if (sub == nullptr) return rest;
  std::vector<std::string> expanded{rest.front()};
  for (const auto& [key, value] : read_config(config_path)) {
    if (sub->get_option_no_throw("--" + key) == nullptr) {
      std::cerr << "note: config key '" << key << "' does not apply to " << sub->get_name() << ", ignored\n";
      continue;
    }
    expanded.push_back("--" + key + "=" + value);
  }
  expanded.insert(expanded.end(), rest.begin() + 1, rest.end());
  return expanded;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measurement-dependent hidden-variable models of equatorial GHZ measurements"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_version_flag("--version", std::string(ghzmd_version()));
  app.footer("Every command accepts --config FILE with key=value lines; command-line flags override it.\n"
             "Exit codes: 0 success, 1 check failure, 2 usage error.");

  std::string out;
  std::uint64_t seed = 1;
  unsigned threads = 0;

  // verify-oracle
  int triples = 200;
  auto* verify = app.add_subcommand("verify-oracle", "Cross-check closed-form and Born-rule GHZ statistics");
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--triples", triples, "Random direction triples")->check(CLI::PositiveNumber);
  verify->add_option("--out", out, "Output JSON path (default stdout)");

  // simulate
  std::string settings_text;
  std::uint64_t n = 10000;
  std::string csv;
  ModelFlags sim_model;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run of the hidden-variable model");
  simulate->add_option("--settings", settings_text, "phiA,phiB,phiC (radians; deg: prefix for degrees)");
  sim_model.add(simulate);
  simulate->add_option("--n", n, "Number of samples")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "Random seed");
  simulate->add_option("--threads", threads, "Worker threads (0 = all cores; output does not depend on it)");
  simulate->add_option("--out", out, "Output JSON path (default stdout)");
  simulate->add_option("--csv", csv, "Per-outcome CSV path");

  // metrics
  ModelFlags met_model;
  ghzmd_search_config search;
  ghzmd_search_config_default(&search);
  std::uint64_t independence_trials = 100;
  std::string trace;
  auto* metrics = app.add_subcommand("metrics", "Measurement dependence M and free-will fraction F");
  met_model.add(metrics);
  metrics->add_option("--grid", search.grid, "Coarse grid points per angle (>= 12)");
  metrics->add_option("--multistarts", search.multistarts, "Simplex refinements from the best grid cells");
  metrics->add_option("--max-iterations", search.max_iterations, "Iteration cap per refinement");
  metrics->add_option("--random-starts", search.random_starts, "Extra refinements from random points");
  metrics->add_option("--seed", search.seed, "Random seed");
  metrics->add_option("--threads", search.threads, "Worker threads (0 = all cores; output does not depend on it)");
  metrics->add_option("--independence-trials", independence_trials, "Setting pairs for the independence check (0 skips)");
  metrics->add_option("--out", out, "Output JSON path (default stdout)");
  metrics->add_option("--trace", trace, "Search trace CSV path");

  // bg-curves
  int points = 1001;
  int dominance_grid = 10000;
  auto* curves = app.add_subcommand("bg-curves", "Tabulate E1(phi) against cos(phi)");
  curves->add_option("--points", points, "Rows in the curve table")->check(CLI::Range(2, 100000000));
  curves->add_option("--grid", dominance_grid, "Grid for the dominance check (>= 100)");
  curves->add_option("--out", out, "Output CSV path (default stdout)");

  // decompose
  int m_max = 10;
  int mix_grid = 2000;
  auto* decompose = app.add_subcommand("decompose", "Fit cos(phi) as a mixture of E1((2m+1)phi)");
  decompose->add_option("--m-max", m_max, "Largest m in the mixture");
  decompose->add_option("--grid", mix_grid, "Fit grid points on [0, pi]");
  decompose->add_option("--out", out, "Output JSON path (default stdout)");

  // acceptance
  ghzmd_acceptance_config acc;
  ghzmd_acceptance_config_default(&acc);
  auto* acceptance = app.add_subcommand("acceptance", "Run the full acceptance suite");
  acceptance->add_option("--seed", acc.seed, "Base seed");
  acceptance->add_option("--grid", acc.search.grid, "Coarse grid points per angle for the M searches");
  acceptance->add_option("--multistarts", acc.search.multistarts, "Simplex refinements per search");
  acceptance->add_option("--n", acc.mc_samples, "Monte Carlo samples per triple");
  acceptance->add_option("--threads", acc.threads, "Worker threads (0 = all cores)");
  acceptance->add_option("--out", out, "Output JSON report path (default stdout)");

  try {
    std::vector<std::string> args = expand_config(argc, argv, app);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*verify) return run_verify_oracle(seed, triples, out);
    if (*simulate) return run_simulate(settings_text, sim_model, n, seed, threads, out, csv);
    if (*metrics) return run_metrics(met_model, search, independence_trials, out, trace);
    if (*curves) return run_bg_curves(points, dominance_grid, out);
    if (*decompose) return run_decompose(m_max, mix_grid, out);
    if (*acceptance) return run_acceptance(acc, out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CheckFailed& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitUsage;
}
