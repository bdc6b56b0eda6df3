#pragma once

#include <cstdint>
#include <vector>

#include "ghzmd/circle.hpp"
#include "ghzmd/quantum.hpp"

namespace ghzmd {

enum class ModelVariant {
  kFullStatistics,   // reproduces the full GHZ joint distribution
  kExpectationOnly,  // reproduces only ⟨ABC⟩ = cos Φ
};

enum class ConstructionMode {
  /// Density = pattern weight / realized arc length; the pattern pair without
  /// arcs becomes a pair of atoms at ±λ0. Always normalized.
  kCorrected,
  /// The printed case table: fixed denominators (π - φ_AB), (φ_AB - φ_AC),
  /// φ_AB and their φ_AC counterparts, selected by Θ(φ_AB - φ_AC). Generally
  /// not normalized.
  kLiteral,
};

struct ModelConfig {
  HiddenVariable lambda0{0.0};
  ModelVariant variant = ModelVariant::kFullStatistics;
  ConstructionMode mode = ConstructionMode::kCorrected;
};

struct DensityPiece {
  Arc arc;
  double density = 0.0;
  SignPattern pattern;
};

struct Atom {
  HiddenVariable location;
  double weight = 0.0;
  SignPattern pattern;  // explicit outcome label, not the sign rule at location
};

/// Setting-conditioned distribution of λ: piecewise-constant arc densities
/// plus point atoms.
struct CircleMeasure {
  std::vector<DensityPiece> pieces;
  std::vector<Atom> atoms;

  double continuous_mass() const;
  double atom_mass() const;
  double total_mass() const { return continuous_mass() + atom_mass(); }
  /// Density of the continuous part at lambda (atoms excluded).
  double density_at(double lambda) const;
};

/// Per-pattern weight the model is designed to reproduce:
/// FullStatistics (1 + abc cosΦ)/8; ExpectationOnly (1 + abc cosΦ)/6 for a
/// pattern whose pair carries arcs (build_measure zeroes the missing pair).
double target_pattern_weight(SignPattern pat, double total_phase, ModelVariant variant);

/// Throws Error(kZeroLengthDivision) in literal mode when a printed
/// denominator vanishes.
CircleMeasure build_measure(const SettingTriple& s, const ModelConfig& cfg);

/// Exact ∫ p(abc|λ) ρ(λ) dλ.
JointDistribution joint_from_measure(const CircleMeasure& m);

struct Sample {
  HiddenVariable lambda;
  SignPattern outcome;
};

/// Samples are drawn in fixed-size blocks with per-block seeds, so the stream
/// for a given (seed, n) does not depend on how it is split across threads.
inline constexpr std::uint64_t kSampleBlockSize = 65536;

/// n i.i.d. draws. Deterministic in (m, seed, n).
std::vector<Sample> sample(const CircleMeasure& m, std::uint64_t seed, std::uint64_t n);

struct OutcomeCounts {
  std::array<std::uint64_t, 8> counts{};
  std::uint64_t n = 0;

  OutcomeCounts& operator+=(const OutcomeCounts& other);
  JointDistribution frequencies() const;
};

/// Tallies outcomes of samples [first_block*B, ...) for block_count blocks,
/// truncated at n. Exposed so callers can partition a run.
OutcomeCounts tally_blocks(const CircleMeasure& m, std::uint64_t seed, std::uint64_t n,
                           std::uint64_t first_block, std::uint64_t block_count);

struct SimulationResult {
  SettingTriple settings;
  ModelConfig config;
  std::uint64_t seed = 0;
  OutcomeCounts counts;
  JointDistribution exact;
  JointDistribution empirical;
};

/// build_measure + sampling + tallying. threads = 0 picks hardware concurrency;
/// the result does not depend on it.
SimulationResult simulate_run(const SettingTriple& s, const ModelConfig& cfg, std::uint64_t n,
                              std::uint64_t seed, unsigned threads = 1);

}  // namespace ghzmd
