#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ghzmd/model.hpp"

namespace ghzmd {

/// Atoms closer than this are the same point.
inline constexpr double kAtomColocationTolerance = 1e-9;

/// ∫|ρ1 - ρ2| over the circle, atoms included. Result clamped to [0, 2].
/// Throws Error(kUnnormalizedInput) if either mass is off by more than 1e-9.
double variational_distance(const CircleMeasure& m1, const CircleMeasure& m2);

using MeasureFactory = std::function<CircleMeasure(const SettingTriple&)>;

/// True iff every sampled setting pair yields identical measures (distance ≤ 1e-12).
bool independence_check(const MeasureFactory& factory, std::uint64_t trials, std::uint64_t seed = 1);
bool independence_check(const ModelConfig& cfg, std::uint64_t trials, std::uint64_t seed = 1);

struct SettingPair {
  SettingTriple first;
  SettingTriple second;
};

struct SearchConfig {
  int grid = 12;               // points per angle in the coarse pass (≥ 12)
  int multistarts = 8;         // simplex refinements seeded from the best grid cells
  int max_iterations = 400;    // per refinement
  double initial_step = 0.0;   // simplex edge; 0 means half a grid spacing
  double tolerance = 1e-12;    // stop when the simplex value spread falls below this
  int random_starts = 0;       // extra refinements from seeded uniform points
  std::uint64_t seed = 1;
  unsigned threads = 0;        // 0 = hardware concurrency; results do not depend on it
};

struct TraceEntry {
  SettingPair settings;
  double distance = 0.0;
  std::string stage;  // "grid" or "refine"
  int start = -1;     // multistart index for refine entries
  int iteration = 0;
};

struct FreeWillReport {
  double M = 0.0;
  double F = 1.0;
  SettingPair argmax;
  std::vector<TraceEntry> search_trace;
  SearchConfig search;
  std::uint64_t grid_evaluations = 0;
};

/// sup over setting pairs of variational_distance(build_measure(s), build_measure(s')):
/// exhaustive coarse grid over all six angles, then Nelder-Mead refinement from
/// the best cells. Throws Error(kBudgetTooSmall) for grids under 12 points.
FreeWillReport measurement_dependence(const ModelConfig& cfg, const SearchConfig& search);

/// Region labels: R1 (+++/---), R2 (+--/-++), R3 (--+/++-), R4 (-+-/+-+),
/// suffix +/- for β. Atoms are D+ at λ0 and D- at -λ0.
struct RegionOverlap {
  std::string primed;    // region of the second setting
  std::string unprimed;  // region of the first setting
  double length = 0.0;   // arc overlap length
};

struct AtomPlacement {
  std::string atom;              // "D'+" / "D'-"
  double weight = 0.0;
  std::string unprimed_region;   // region of the first setting containing it
};

struct StructureReport {
  std::vector<RegionOverlap> overlaps;   // nonzero arc overlaps only
  std::vector<AtomPlacement> atoms;      // primed atoms with nonzero weight
  double total_overlap = 0.0;            // equals 2π
  double distance = 0.0;
  bool d_minus_in_r1_plus = false;       // D'- ⊂ R1+
  bool r3_minus_in_r1_plus = false;      // R'3- ⊂ R1+ (and R'3- nonempty)
  bool r2_minus_partial_r1_plus = false; // R'2- meets R1+ without being inside it
};

StructureReport argmax_structure_report(const SettingPair& pair, const ModelConfig& cfg);
inline StructureReport argmax_structure_report(const FreeWillReport& report, const ModelConfig& cfg) {
  return argmax_structure_report(report.argmax, cfg);
}

std::string region_label(SignPattern p);

}  // namespace ghzmd
