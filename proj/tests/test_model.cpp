#include <cmath>
#include <random>

#include "doctest.h"
#include "ghzmd/error.hpp"
#include "ghzmd/model.hpp"

using namespace ghzmd;

namespace {

SettingTriple random_setting(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  return {u(rng), u(rng), u(rng)};
}

ModelConfig config(ModelVariant v, double lambda0 = 0.0) {
  ModelConfig c;
  c.variant = v;
  c.lambda0 = HiddenVariable(lambda0);
  return c;
}

// 4-sigma binomial band for every outcome.
void check_frequencies(const SimulationResult& r, std::uint64_t n) {
  for (SignPattern o : kAllPatterns) {
    const double p = r.exact[o];
    const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(n));
    CHECK(std::abs(r.empirical[o] - p) <= 4 * sigma + 1e-12);
  }
}

}  // namespace

TEST_CASE("target weights") {
  const double phi = kPi / 3;
  CHECK(target_pattern_weight(SignPattern(1, 1, 1), phi, ModelVariant::kFullStatistics) ==
        doctest::Approx((1 + 0.5) / 8));
  CHECK(target_pattern_weight(SignPattern(1, 1, -1), phi, ModelVariant::kFullStatistics) ==
        doctest::Approx((1 - 0.5) / 8));
  CHECK(target_pattern_weight(SignPattern(1, 1, 1), phi, ModelVariant::kExpectationOnly) ==
        doctest::Approx((1 + 0.5) / 6));
}

TEST_CASE("measures are normalized and reproduce the joint") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 1000; ++t) {
    const SettingTriple s = random_setting(rng);
    const double l0 = std::uniform_real_distribution<double>(0, kTwoPi)(rng);

    const CircleMeasure full = build_measure(s, config(ModelVariant::kFullStatistics, l0));
    CHECK(std::abs(full.total_mass() - 1.0) < 1e-12);
    for (const DensityPiece& p : full.pieces) CHECK(p.density >= 0.0);
    for (const Atom& a : full.atoms) CHECK(a.weight >= 0.0);
    CHECK(joint_from_measure(full).max_abs_difference(equatorial_joint(s)) < 1e-9);

    const CircleMeasure exp = build_measure(s, config(ModelVariant::kExpectationOnly, l0));
    CHECK(std::abs(exp.total_mass() - 1.0) < 1e-12);
    CHECK(exp.atoms.empty());
    CHECK(std::abs(expectation(joint_from_measure(exp)) - std::cos(s.total())) < 1e-9);
  }
}

TEST_CASE("full-statistics atoms sit at plus and minus lambda0") {
  const CircleMeasure m = build_measure(SettingTriple(0, kPi / 3, kPi / 6), config(ModelVariant::kFullStatistics, 1.0));
  REQUIRE(m.atoms.size() == 2);
  CHECK(m.atoms[0].location.lambda() == doctest::Approx(1.0));
  CHECK(m.atoms[1].location.lambda() == doctest::Approx(1.0 + kPi));
  CHECK(m.atoms[0].pattern == -m.atoms[1].pattern);
  CHECK(m.atoms[0].pattern.product() == 1);
}

TEST_CASE("expectation-only model misses the full joint") {
  const SettingTriple s(0, kPi / 9, 2 * kPi / 9);
  const JointDistribution j = joint_from_measure(build_measure(s, config(ModelVariant::kExpectationOnly)));
  CHECK(expectation(j) == doctest::Approx(0.5));
  CHECK(j.max_abs_difference(equatorial_joint(s)) > 0.05);
  const Marginals m = marginals(j);
  CHECK(m.a == doctest::Approx(0.5 / 3));
  CHECK(m.b == doctest::Approx(-0.5 / 3));
  CHECK(m.c == doctest::Approx(0.5 / 3));
}

TEST_CASE("literal mode divides by zero for coincident settings") {
  ModelConfig c = config(ModelVariant::kFullStatistics);
  c.mode = ConstructionMode::kLiteral;
  try {
    build_measure(SettingTriple(0.5, 0.5, 0.5), c);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kZeroLengthDivision);
  }
  CHECK_NOTHROW(build_measure(SettingTriple(0, kPi / 3, kPi / 6), c));
}

TEST_CASE("sampling is deterministic in the seed") {
  const CircleMeasure m = build_measure(SettingTriple(0.2, 1.1, 2.5), config(ModelVariant::kFullStatistics));
  const auto a = sample(m, 42, 1000);
  const auto b = sample(m, 42, 1000);
  const auto c = sample(m, 43, 1000);
  REQUIRE(a.size() == 1000);
  bool same = true, differ = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    same = same && a[i].lambda.lambda() == b[i].lambda.lambda() && a[i].outcome == b[i].outcome;
    differ = differ || a[i].lambda.lambda() != c[i].lambda.lambda();
  }
  CHECK(same);
  CHECK(differ);
}

TEST_CASE("samples from a single arc stay in that arc") {
  CircleMeasure m;
  m.pieces.push_back({Arc{1.0, 0.5}, 2.0, SignPattern(1, -1, 1)});
  for (const Sample& s : sample(m, 1, 5000)) {
    CHECK(s.lambda.lambda() >= 1.0);
    CHECK(s.lambda.lambda() < 1.5);
    CHECK(s.outcome == SignPattern(1, -1, 1));
  }
}

TEST_CASE("sampled outcomes follow the sign rule") {
  const SettingTriple s(0.3, 2.0, 4.4);
  const CircleMeasure m = build_measure(s, config(ModelVariant::kExpectationOnly));
  for (const Sample& x : sample(m, 5, 2000)) CHECK(x.outcome == response_pattern(s, x.lambda));
}

TEST_CASE("Monte Carlo frequencies within 4 sigma") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 5; ++t) {
    const SettingTriple s = random_setting(rng);
    check_frequencies(simulate_run(s, config(ModelVariant::kFullStatistics), 10000, 100 + t), 10000);
    check_frequencies(simulate_run(s, config(ModelVariant::kFullStatistics), 1000000, 200 + t, 0), 1000000);
  }
}

TEST_CASE("aligned settings never give abc = -1") {
  const SimulationResult r = simulate_run(SettingTriple(0, 0, 0), config(ModelVariant::kFullStatistics), 20000, 3);
  for (SignPattern o : kAllPatterns) {
    if (o.product() < 0) CHECK(r.counts.counts[static_cast<std::size_t>(o.index())] == 0);
  }
}

TEST_CASE("tallies do not depend on thread count") {
  const SettingTriple s(0.7, 1.9, 5.0);
  const ModelConfig c = config(ModelVariant::kFullStatistics);
  const std::uint64_t n = 3 * kSampleBlockSize + 123;
  const SimulationResult one = simulate_run(s, c, n, 77, 1);
  const SimulationResult four = simulate_run(s, c, n, 77, 4);
  CHECK(one.counts.counts == four.counts.counts);

  OutcomeCounts split = tally_blocks(build_measure(s, c), 77, n, 0, 2);
  split += tally_blocks(build_measure(s, c), 77, n, 2, 2);
  CHECK(split.counts == one.counts.counts);
  CHECK(split.n == n);
}
