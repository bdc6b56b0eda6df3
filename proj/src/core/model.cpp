#include "ghzmd/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <thread>

#include "ghzmd/error.hpp"

namespace ghzmd {

double CircleMeasure::continuous_mass() const {
  double m = 0.0;
  for (const DensityPiece& p : pieces) m += p.density * p.arc.length;
  return m;
}

double CircleMeasure::atom_mass() const {
  double m = 0.0;
  for (const Atom& a : atoms) m += a.weight;
  return m;
}

double CircleMeasure::density_at(double lambda) const {
  for (const DensityPiece& p : pieces) {
    if (p.arc.contains(lambda)) return p.density;
  }
  return 0.0;
}

double target_pattern_weight(SignPattern pat, double total_phase, ModelVariant variant) {
  const double denom = variant == ModelVariant::kFullStatistics ? 8.0 : 6.0;
  return (1.0 + pat.product() * std::cos(total_phase)) / denom;
}

namespace {

std::array<double, 4> pair_lengths(const ArcPartition& partition) {
  std::array<double, 4> lengths{};
  for (int i = 0; i < 4; ++i) {
    lengths[static_cast<std::size_t>(i)] = pattern_length(partition, kPairRepresentatives[static_cast<std::size_t>(i)]);
  }
  return lengths;
}

CircleMeasure build_corrected(const SettingTriple& s, const ModelConfig& cfg) {
  const ArcPartition partition = partition_circle(s);
  const std::array<double, 4> lengths = pair_lengths(partition);
  const double phase = s.total();

  int carrying = 0;
  for (double l : lengths) carrying += l > 0.0 ? 1 : 0;

  // ExpectationOnly spreads (1 + abc cosΦ) over the 2k patterns that carry
  // arcs; with three pairs this is the /6 weight.
  auto weight = [&](SignPattern p) {
    if (cfg.variant == ModelVariant::kFullStatistics) {
      return target_pattern_weight(p, phase, cfg.variant);
    }
    return (1.0 + p.product() * std::cos(phase)) / (2.0 * carrying);
  };

  CircleMeasure m;
  for (const PatternArc& pa : partition.arcs) {
    m.pieces.push_back({pa.arc, weight(pa.pattern) / pattern_length(partition, pa.pattern), pa.pattern});
  }
  if (cfg.variant == ModelVariant::kFullStatistics) {
    for (int i = 0; i < 4; ++i) {
      if (lengths[static_cast<std::size_t>(i)] > 0.0) continue;
      const SignPattern rep = kPairRepresentatives[static_cast<std::size_t>(i)];
      m.atoms.push_back({cfg.lambda0, weight(rep), rep});
      m.atoms.push_back({cfg.lambda0.antipode(), weight(-rep), -rep});
    }
  }
  return m;
}

// Printed case table. For each pair (by index into kPairRepresentatives) either
// a fixed arc denominator or, for exactly one pair, atoms at ±λ0.
struct LiteralCase {
  std::array<double, 4> denominator{};
  int atom_pair = -1;
};

LiteralCase literal_case(const SettingTriple& s, ModelVariant variant) {
  const double ab = pair_angle(s.a(), s.b());
  const double ac = pair_angle(s.a(), s.c());
  LiteralCase lc;
  // Θ(φ_AB - φ_AC) wins ties.
  if (ab >= ac) {
    lc.denominator = {kPi - ab, ab, ab - ac, 0.0};
    if (variant == ModelVariant::kFullStatistics) lc.atom_pair = 3;
  } else {
    lc.denominator = {kPi - ac, ac, 0.0, ac - ab};
    if (variant == ModelVariant::kFullStatistics) lc.atom_pair = 2;
  }
  return lc;
}

CircleMeasure build_literal(const SettingTriple& s, const ModelConfig& cfg) {
  const LiteralCase lc = literal_case(s, cfg.variant);
  const bool primed = pair_angle(s.a(), s.b()) >= pair_angle(s.a(), s.c());
  const int unused_pair = primed ? 3 : 2;
  for (int i = 0; i < 4; ++i) {
    if (i == unused_pair) continue;
    if (lc.denominator[static_cast<std::size_t>(i)] <= 0.0) {
      throw Error(ErrorCode::kZeroLengthDivision,
                  "literal construction divides by a zero arc length for region R" +
                      std::to_string(i + 1));
    }
  }

  const double phase = s.total();
  CircleMeasure m;
  for (const PatternArc& pa : partition_circle(s).arcs) {
    const int idx = pair_index(pa.pattern);
    const double denom = lc.denominator[static_cast<std::size_t>(idx)];
    const double density =
        idx == unused_pair ? 0.0 : target_pattern_weight(pa.pattern, phase, cfg.variant) / denom;
    m.pieces.push_back({pa.arc, density, pa.pattern});
  }
  if (lc.atom_pair >= 0) {
    const SignPattern rep = kPairRepresentatives[static_cast<std::size_t>(lc.atom_pair)];
    m.atoms.push_back({cfg.lambda0, target_pattern_weight(rep, phase, cfg.variant), rep});
    m.atoms.push_back({cfg.lambda0.antipode(), target_pattern_weight(-rep, phase, cfg.variant), -rep});
  }
  return m;
}

double unit_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Flattened pieces and atoms with cumulative mass, for inverse-CDF selection.
class MeasureSampler {
 public:
  explicit MeasureSampler(const CircleMeasure& m) : measure_(m) {
    double acc = 0.0;
    for (const DensityPiece& p : m.pieces) {
      acc += p.density * p.arc.length;
      cumulative_.push_back(acc);
    }
    for (const Atom& a : m.atoms) {
      acc += a.weight;
      cumulative_.push_back(acc);
    }
    if (!(acc > 0.0)) throw Error(ErrorCode::kInvalidArgument, "cannot sample a measure with zero mass");
  }

  Sample draw(std::mt19937_64& gen) const {
    const double u = unit_uniform(gen) * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cumulative_.begin());
    if (idx >= cumulative_.size()) {
      // u rounded up to the total: take the last entry with positive mass.
      idx = cumulative_.size() - 1;
      while (idx > 0 && cumulative_[idx] == cumulative_[idx - 1]) --idx;
    }
    const double v = unit_uniform(gen);
    if (idx < measure_.pieces.size()) {
      const DensityPiece& p = measure_.pieces[idx];
      return {HiddenVariable(p.arc.start + v * p.arc.length), p.pattern};
    }
    const Atom& a = measure_.atoms[idx - measure_.pieces.size()];
    return {a.location, a.pattern};
  }

 private:
  const CircleMeasure& measure_;
  std::vector<double> cumulative_;
};

std::mt19937_64 block_generator(std::uint64_t seed, std::uint64_t block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  return std::mt19937_64(seq);
}

std::uint64_t block_count_for(std::uint64_t n) { return (n + kSampleBlockSize - 1) / kSampleBlockSize; }

}  // namespace

CircleMeasure build_measure(const SettingTriple& s, const ModelConfig& cfg) {
  return cfg.mode == ConstructionMode::kCorrected ? build_corrected(s, cfg) : build_literal(s, cfg);
}

JointDistribution joint_from_measure(const CircleMeasure& m) {
  JointDistribution d;
  for (const DensityPiece& p : m.pieces) d[p.pattern] += p.density * p.arc.length;
  for (const Atom& a : m.atoms) d[a.pattern] += a.weight;
  return d;
}

std::vector<Sample> sample(const CircleMeasure& m, std::uint64_t seed, std::uint64_t n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "sample count must be at least 1");
  const MeasureSampler sampler(m);
  std::vector<Sample> out;
  out.reserve(n);
  for (std::uint64_t block = 0; block < block_count_for(n); ++block) {
    std::mt19937_64 gen = block_generator(seed, block);
    const std::uint64_t end = std::min(n, (block + 1) * kSampleBlockSize);
    for (std::uint64_t i = block * kSampleBlockSize; i < end; ++i) out.push_back(sampler.draw(gen));
  }
  return out;
}

OutcomeCounts& OutcomeCounts::operator+=(const OutcomeCounts& other) {
  for (std::size_t i = 0; i < 8; ++i) counts[i] += other.counts[i];
  n += other.n;
  return *this;
}

JointDistribution OutcomeCounts::frequencies() const {
  JointDistribution d;
  if (n == 0) return d;
  for (std::size_t i = 0; i < 8; ++i) d.p[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
  return d;
}

OutcomeCounts tally_blocks(const CircleMeasure& m, std::uint64_t seed, std::uint64_t n,
                           std::uint64_t first_block, std::uint64_t block_count) {
  const MeasureSampler sampler(m);
  OutcomeCounts tally;
  for (std::uint64_t block = first_block; block < first_block + block_count; ++block) {
    std::mt19937_64 gen = block_generator(seed, block);
    const std::uint64_t begin = block * kSampleBlockSize;
    const std::uint64_t end = std::min(n, begin + kSampleBlockSize);
    for (std::uint64_t i = begin; i < end; ++i) {
      ++tally.counts[static_cast<std::size_t>(sampler.draw(gen).outcome.index())];
      ++tally.n;
    }
  }
  return tally;
}

SimulationResult simulate_run(const SettingTriple& s, const ModelConfig& cfg, std::uint64_t n,
                              std::uint64_t seed, unsigned threads) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "sample count must be at least 1");
  const CircleMeasure m = build_measure(s, cfg);

  const std::uint64_t blocks = block_count_for(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t workers = std::min<std::uint64_t>(threads, blocks);

  std::vector<OutcomeCounts> partial(workers);
  std::vector<std::thread> pool;
  const std::uint64_t per = blocks / workers, extra = blocks % workers;
  std::uint64_t next = 0;
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t count = per + (w < extra ? 1 : 0);
    pool.emplace_back([&, w, first = next, count] { partial[w] = tally_blocks(m, seed, n, first, count); });
    next += count;
  }
  for (std::thread& t : pool) t.join();

  SimulationResult r;
  r.settings = s;
  r.config = cfg;
  r.seed = seed;
  for (const OutcomeCounts& c : partial) r.counts += c;
  r.exact = joint_from_measure(m);
  r.empirical = r.counts.frequencies();
  return r;
}

}  // namespace ghzmd
