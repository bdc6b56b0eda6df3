#include "ghzmd/ghzmd.h"

#include <cstring>
#include <string>

#include "ghzmd/acceptance.hpp"
#include "ghzmd/baseline.hpp"
#include "ghzmd/error.hpp"
#include "ghzmd/io.hpp"
#include "ghzmd/metrics.hpp"
#include "ghzmd/model.hpp"

struct ghzmd_measure {
  ghzmd::CircleMeasure measure;
};

struct ghzmd_report {
  ghzmd::FreeWillReport report;
  ghzmd::ModelConfig config;
};

struct ghzmd_acceptance {
  ghzmd::AcceptanceReport report;
};

namespace {

thread_local std::string last_error;

ghzmd_status status_of(ghzmd::ErrorCode code) {
  switch (code) {
    case ghzmd::ErrorCode::kInvalidArgument: return GHZMD_ERR_INVALID_ARGUMENT;
    case ghzmd::ErrorCode::kZeroLengthDivision: return GHZMD_ERR_ZERO_LENGTH_DIVISION;
    case ghzmd::ErrorCode::kUnnormalizedInput: return GHZMD_ERR_UNNORMALIZED_INPUT;
    case ghzmd::ErrorCode::kBudgetTooSmall: return GHZMD_ERR_BUDGET_TOO_SMALL;
    case ghzmd::ErrorCode::kInfeasibleConstraints: return GHZMD_ERR_INFEASIBLE;
    case ghzmd::ErrorCode::kIo: return GHZMD_ERR_IO;
  }
  return GHZMD_ERR_INTERNAL;
}

template <typename F>
ghzmd_status guarded(F&& body) {
  try {
    body();
    return GHZMD_OK;
  } catch (const ghzmd::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return GHZMD_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return GHZMD_ERR_INTERNAL;
  }
}

void require(bool condition, const char* what) {
  if (!condition) throw ghzmd::Error(ghzmd::ErrorCode::kInvalidArgument, what);
}

char* duplicate(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ghzmd::ModelConfig model_from(const ghzmd_model_config* cfg) {
  ghzmd::ModelConfig m;
  if (cfg == nullptr) return m;
  require(cfg->variant == GHZMD_VARIANT_FULL || cfg->variant == GHZMD_VARIANT_EXPECTATION, "unknown model variant");
  require(cfg->mode == GHZMD_MODE_CORRECTED || cfg->mode == GHZMD_MODE_LITERAL, "unknown construction mode");
  m.lambda0 = ghzmd::HiddenVariable(cfg->lambda0);
  m.variant = cfg->variant == GHZMD_VARIANT_FULL ? ghzmd::ModelVariant::kFullStatistics
                                                 : ghzmd::ModelVariant::kExpectationOnly;
  m.mode = cfg->mode == GHZMD_MODE_CORRECTED ? ghzmd::ConstructionMode::kCorrected : ghzmd::ConstructionMode::kLiteral;
  return m;
}

ghzmd::SearchConfig search_from(const ghzmd_search_config* cfg) {
  ghzmd::SearchConfig s;
  if (cfg == nullptr) return s;
  s.grid = cfg->grid;
  s.multistarts = cfg->multistarts;
  s.max_iterations = cfg->max_iterations;
  s.initial_step = cfg->initial_step;
  s.tolerance = cfg->tolerance;
  s.random_starts = cfg->random_starts;
  s.seed = cfg->seed;
  s.threads = cfg->threads;
  return s;
}

ghzmd::DirectionTriple directions(const double theta[3], const double phi[3]) {
  require(theta != nullptr && phi != nullptr, "null angle array");
  return {ghzmd::MeasurementDirection(theta[0], phi[0]), ghzmd::MeasurementDirection(theta[1], phi[1]),
          ghzmd::MeasurementDirection(theta[2], phi[2])};
}

ghzmd::SettingTriple settings(const double phi[3]) {
  require(phi != nullptr, "null settings array");
  return {phi[0], phi[1], phi[2]};
}

void copy_joint(const ghzmd::JointDistribution& d, double out[8]) {
  require(out != nullptr, "null output array");
  std::memcpy(out, d.p.data(), sizeof(double) * 8);
}

ghzmd::JointDistribution joint_from(const double joint[8]) {
  ghzmd::JointDistribution d;
  std::memcpy(d.p.data(), joint, sizeof(double) * 8);
  return d;
}

const ghzmd::CriterionResult& criterion(const ghzmd_acceptance* a, size_t i) {
  static const ghzmd::CriterionResult missing{};
  if (a == nullptr || i >= a->report.criteria.size()) return missing;
  return a->report.criteria[i];
}

}  // namespace

extern "C" {

const char* ghzmd_version(void) { return "1.0.0"; }

const char* ghzmd_last_error(void) { return last_error.c_str(); }

void ghzmd_string_free(char* s) { delete[] s; }

void ghzmd_model_config_default(ghzmd_model_config* cfg) {
  if (cfg == nullptr) return;
  cfg->lambda0 = 0.0;
  cfg->variant = GHZMD_VARIANT_FULL;
  cfg->mode = GHZMD_MODE_CORRECTED;
}

void ghzmd_search_config_default(ghzmd_search_config* cfg) {
  if (cfg == nullptr) return;
  const ghzmd::SearchConfig d;
  cfg->grid = d.grid;
  cfg->multistarts = d.multistarts;
  cfg->max_iterations = d.max_iterations;
  cfg->initial_step = d.initial_step;
  cfg->tolerance = d.tolerance;
  cfg->random_starts = d.random_starts;
  cfg->seed = d.seed;
  cfg->threads = d.threads;
}

void ghzmd_acceptance_config_default(ghzmd_acceptance_config* cfg) {
  if (cfg == nullptr) return;
  const ghzmd::AcceptanceConfig d;
  cfg->seed = d.seed;
  ghzmd_search_config_default(&cfg->search);
  cfg->mc_samples = d.mc_samples;
  cfg->mc_triples = d.mc_triples;
  cfg->threads = d.threads;
}

ghzmd_status ghzmd_closed_form_joint(const double theta[3], const double phi[3], double out[8]) {
  return guarded([&] { copy_joint(ghzmd::ghz_joint_closed_form(directions(theta, phi)), out); });
}

ghzmd_status ghzmd_born_rule_joint(const double theta[3], const double phi[3], double out[8]) {
  return guarded([&] { copy_joint(ghzmd::born_rule_joint(directions(theta, phi)), out); });
}

ghzmd_status ghzmd_equatorial_joint(const double phi[3], double out[8]) {
  return guarded([&] { copy_joint(ghzmd::equatorial_joint(settings(phi)), out); });
}

double ghzmd_expectation(const double joint[8]) { return ghzmd::expectation(joint_from(joint)); }

void ghzmd_marginals(const double joint[8], double out[6]) {
  const auto m = ghzmd::marginals(joint_from(joint)).as_array();
  std::memcpy(out, m.data(), sizeof(double) * 6);
}

ghzmd_status ghzmd_joint_json(const double joint[8], char** out) {
  return guarded([&] {
    require(joint != nullptr && out != nullptr, "null argument");
    *out = duplicate(ghzmd::to_json(joint_from(joint)).dump());
  });
}

ghzmd_status ghzmd_measure_create(const double phi[3], const ghzmd_model_config* cfg, ghzmd_measure** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    *out = new ghzmd_measure{ghzmd::build_measure(settings(phi), model_from(cfg))};
  });
}

void ghzmd_measure_destroy(ghzmd_measure* m) { delete m; }

ghzmd_status ghzmd_measure_joint(const ghzmd_measure* m, double out[8]) {
  return guarded([&] {
    require(m != nullptr, "null measure");
    copy_joint(ghzmd::joint_from_measure(m->measure), out);
  });
}

ghzmd_status ghzmd_measure_mass(const ghzmd_measure* m, double* out) {
  return guarded([&] {
    require(m != nullptr && out != nullptr, "null argument");
    *out = m->measure.total_mass();
  });
}

ghzmd_status ghzmd_measure_distance(const ghzmd_measure* a, const ghzmd_measure* b, double* out) {
  return guarded([&] {
    require(a != nullptr && b != nullptr && out != nullptr, "null argument");
    *out = ghzmd::variational_distance(a->measure, b->measure);
  });
}

ghzmd_status ghzmd_measure_sample(const ghzmd_measure* m, uint64_t seed, uint64_t n, double* lambdas, int* outcomes) {
  return guarded([&] {
    require(m != nullptr && lambdas != nullptr && outcomes != nullptr, "null argument");
    const auto draws = ghzmd::sample(m->measure, seed, n);
    for (size_t i = 0; i < draws.size(); ++i) {
      lambdas[i] = draws[i].lambda.lambda();
      outcomes[i] = draws[i].outcome.index();
    }
  });
}

ghzmd_status ghzmd_simulate(const double phi[3], const ghzmd_model_config* cfg, uint64_t n, uint64_t seed,
                            unsigned threads, char** json_out, char** csv_out) {
  return guarded([&] {
    const ghzmd::SimulationResult r = ghzmd::simulate_run(settings(phi), model_from(cfg), n, seed, threads);
    if (json_out != nullptr) *json_out = duplicate(ghzmd::to_json(r).dump(2));
    if (csv_out != nullptr) *csv_out = duplicate(ghzmd::simulation_csv(r));
  });
}

ghzmd_status ghzmd_independence_check(const ghzmd_model_config* cfg, uint64_t trials, uint64_t seed,
                                      int* independent) {
  return guarded([&] {
    require(independent != nullptr, "null output");
    *independent = ghzmd::independence_check(model_from(cfg), trials, seed) ? 1 : 0;
  });
}

ghzmd_status ghzmd_measurement_dependence(const ghzmd_model_config* cfg, const ghzmd_search_config* search,
                                          ghzmd_report** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    const ghzmd::ModelConfig model = model_from(cfg);
    *out = new ghzmd_report{ghzmd::measurement_dependence(model, search_from(search)), model};
  });
}

void ghzmd_report_destroy(ghzmd_report* r) { delete r; }

double ghzmd_report_m(const ghzmd_report* r) { return r->report.M; }

double ghzmd_report_f(const ghzmd_report* r) { return r->report.F; }

void ghzmd_report_argmax(const ghzmd_report* r, double out[6]) {
  const auto& a = r->report.argmax;
  for (int i = 0; i < 3; ++i) {
    out[i] = a.first[i];
    out[i + 3] = a.second[i];
  }
}

size_t ghzmd_report_trace_length(const ghzmd_report* r) { return r->report.search_trace.size(); }

ghzmd_status ghzmd_report_json(const ghzmd_report* r, char** out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "null argument");
    ghzmd::json j = ghzmd::to_json(r->report);
    j["model"] = ghzmd::to_json(r->config);
    j["structure"] = ghzmd::to_json(ghzmd::argmax_structure_report(r->report, r->config));
    *out = duplicate(j.dump(2));
  });
}

ghzmd_status ghzmd_report_trace_csv(const ghzmd_report* r, char** out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "null argument");
    *out = duplicate(ghzmd::trace_csv(r->report));
  });
}

double ghzmd_e1(double phi) { return ghzmd::e1(phi); }

ghzmd_status ghzmd_dominance_check(int grid, int* holds, double* min_slack, double* min_slack_phi) {
  return guarded([&] {
    const ghzmd::DominanceResult d = ghzmd::dominance_check(grid);
    if (holds != nullptr) *holds = d.holds ? 1 : 0;
    if (min_slack != nullptr) *min_slack = d.min_slack;
    if (min_slack_phi != nullptr) *min_slack_phi = d.min_slack_phi;
  });
}

ghzmd_status ghzmd_e1_curve_csv(int points, char** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = duplicate(ghzmd::e1_curve_csv(points));
  });
}

ghzmd_status ghzmd_mixture_decompose(int m_max, int grid, double* residual, char** json_out) {
  return guarded([&] {
    const ghzmd::MixtureSolution s = ghzmd::mixture_decompose(m_max, grid);
    if (residual != nullptr) *residual = s.residual;
    if (json_out != nullptr) {
      ghzmd::json j = ghzmd::to_json(s);
      j["m_max"] = m_max;
      j["grid"] = grid;
      *json_out = duplicate(j.dump(2));
    }
  });
}

ghzmd_status ghzmd_verify_oracle(uint64_t seed, int triples, int* passed, char** json_out) {
  return guarded([&] {
    require(triples >= 1, "need at least one triple");
    bool ok = false;
    const ghzmd::json j = ghzmd::verify_oracle(seed, triples, ok);
    if (passed != nullptr) *passed = ok ? 1 : 0;
    if (json_out != nullptr) *json_out = duplicate(j.dump(2));
  });
}

ghzmd_status ghzmd_run_acceptance(const ghzmd_acceptance_config* cfg, ghzmd_acceptance** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    ghzmd::AcceptanceConfig c;
    if (cfg != nullptr) {
      c.seed = cfg->seed;
      c.search = search_from(&cfg->search);
      c.mc_samples = cfg->mc_samples;
      c.mc_triples = cfg->mc_triples;
      c.threads = cfg->threads;
    }
    *out = new ghzmd_acceptance{ghzmd::run_acceptance(c)};
  });
}

void ghzmd_acceptance_destroy(ghzmd_acceptance* a) { delete a; }

size_t ghzmd_acceptance_count(const ghzmd_acceptance* a) { return a == nullptr ? 0 : a->report.criteria.size(); }

int ghzmd_acceptance_id(const ghzmd_acceptance* a, size_t i) { return criterion(a, i).id; }

int ghzmd_acceptance_passed(const ghzmd_acceptance* a, size_t i) { return criterion(a, i).passed ? 1 : 0; }

const char* ghzmd_acceptance_name(const ghzmd_acceptance* a, size_t i) { return criterion(a, i).name.c_str(); }

const char* ghzmd_acceptance_summary(const ghzmd_acceptance* a, size_t i) { return criterion(a, i).summary.c_str(); }

double ghzmd_acceptance_seconds(const ghzmd_acceptance* a, size_t i) { return criterion(a, i).seconds; }

ghzmd_status ghzmd_acceptance_json(const ghzmd_acceptance* a, char** out) {
  return guarded([&] {
    require(a != nullptr && out != nullptr, "null argument");
    *out = duplicate(ghzmd::to_json(a->report).dump(2));
  });
}

}  // extern "C"
