#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "ghzmd/metrics.hpp"
#include "ghzmd/model.hpp"

namespace ghzmd {

/// Grid approximation of ∫|ρ1 - ρ2|: each measure is binned into `cells`
/// equal cells (exact cell mass of the continuous part, atoms added to the
/// cell holding them) and the binned masses are compared cell by cell.
double grid_variational_distance(const CircleMeasure& m1, const CircleMeasure& m2, std::uint64_t cells);

struct AcceptanceConfig {
  std::uint64_t seed = 20140125;
  SearchConfig search{};
  std::uint64_t mc_samples = 1'000'000;
  int mc_triples = 10;
  unsigned threads = 0;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string summary;    // one line, human readable
  nlohmann::json detail;  // measured values and thresholds
  double seconds = 0.0;   // wall time, kept out of the JSON
};

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;
  bool all_passed() const;
};

/// Runs the eight acceptance criteria. A criterion that throws is recorded as failed.
AcceptanceReport run_acceptance(const AcceptanceConfig& cfg);
nlohmann::json to_json(const AcceptanceReport& r);

}  // namespace ghzmd

namespace ghzmd {

/// Cross-checks of the quantum statistics on `triples` random inputs: Born
/// rule against the closed form, the equatorial formula against the closed
/// form at θ = π/2, normalization, ⟨ABC⟩ = cos Φ and vanishing marginals.
nlohmann::json verify_oracle(std::uint64_t seed, int triples, bool& passed);

}  // namespace ghzmd
