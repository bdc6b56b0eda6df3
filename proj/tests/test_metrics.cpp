#include <cmath>
#include <random>

#include "doctest.h"
#include "ghzmd/error.hpp"
#include "ghzmd/metrics.hpp"

using namespace ghzmd;

namespace {

SettingTriple random_setting(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  return {u(rng), u(rng), u(rng)};
}

CircleMeasure uniform() {
  CircleMeasure m;
  m.pieces.push_back({Arc{0.0, kTwoPi}, 1.0 / kTwoPi, SignPattern()});
  return m;
}

// Midpoint-rule distance of the continuous parts plus atom mismatch.
double midpoint_distance(const CircleMeasure& a, const CircleMeasure& b, int cells) {
  const double h = kTwoPi / cells;
  double d = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double x = (i + 0.5) * h;
    d += std::abs(a.density_at(x) - b.density_at(x)) * h;
  }
  std::vector<std::pair<double, double>> atoms;
  for (const Atom& t : a.atoms) atoms.emplace_back(t.location.lambda(), t.weight);
  for (const Atom& t : b.atoms) atoms.emplace_back(t.location.lambda(), -t.weight);
  std::vector<bool> used(atoms.size(), false);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (used[i]) continue;
    double w = atoms[i].second;
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      if (!used[j] && std::abs(atoms[i].first - atoms[j].first) < 1e-9) {
        w += atoms[j].second;
        used[j] = true;
      }
    }
    d += std::abs(w);
  }
  return d;
}

ModelConfig full() { return ModelConfig{}; }

ModelConfig expectation_only() {
  ModelConfig c;
  c.variant = ModelVariant::kExpectationOnly;
  return c;
}

SearchConfig small_search() {
  SearchConfig s;
  s.grid = 12;
  s.multistarts = 2;
  s.max_iterations = 60;
  s.threads = 2;
  return s;
}

}  // namespace

TEST_CASE("distance examples") {
  const CircleMeasure u = uniform();
  CHECK(variational_distance(u, u) == 0.0);

  CircleMeasure left, right;
  left.pieces.push_back({Arc{0.0, kPi}, 1.0 / kPi, SignPattern()});
  right.pieces.push_back({Arc{kPi, kPi}, 1.0 / kPi, SignPattern()});
  CHECK(variational_distance(left, right) == doctest::Approx(2.0));

  CircleMeasure atom_a, atom_b;
  atom_a.atoms.push_back({HiddenVariable(1.0), 1.0, SignPattern()});
  atom_b.atoms.push_back({HiddenVariable(2.0), 1.0, SignPattern()});
  CHECK(variational_distance(atom_a, atom_b) == doctest::Approx(2.0));
  CHECK(variational_distance(atom_a, atom_a) == 0.0);
  CHECK(variational_distance(atom_a, u) == doctest::Approx(2.0));

  CircleMeasure half = uniform();
  half.pieces[0].density *= 0.5;
  CHECK_THROWS_AS(variational_distance(half, u), Error);
}

TEST_CASE("distance agrees with a midpoint-rule oracle") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    const CircleMeasure a = build_measure(random_setting(rng), full());
    const CircleMeasure b = build_measure(random_setting(rng), t % 2 ? full() : expectation_only());
    const double exact = variational_distance(a, b);
    // the midpoint rule errs by at most the density jump on cells straddling a breakpoint
    double bound = 0.0;
    for (const auto* m : {&a, &b})
      for (const DensityPiece& p : m->pieces) bound += 2 * p.density * kTwoPi / 400000;
    CHECK(std::abs(exact - midpoint_distance(a, b, 400000)) <= bound + 1e-9);
  }
}

TEST_CASE("metric properties") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 100; ++t) {
    const CircleMeasure a = build_measure(random_setting(rng), full());
    const CircleMeasure b = build_measure(random_setting(rng), full());
    const CircleMeasure c = build_measure(random_setting(rng), expectation_only());
    const double ab = variational_distance(a, b);
    CHECK(ab >= 0.0);
    CHECK(ab <= 2.0);
    CHECK(std::abs(ab - variational_distance(b, a)) < 1e-12);
    CHECK(variational_distance(a, c) <= ab + variational_distance(b, c) + 1e-12);
    CHECK(variational_distance(a, a) == 0.0);
  }
}

TEST_CASE("distance is invariant under rotation by 2pi/3") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 50; ++t) {
    const SettingTriple s1 = random_setting(rng), s2 = random_setting(rng);
    const double l0 = std::uniform_real_distribution<double>(0, kTwoPi)(rng);
    ModelConfig c = full();
    c.lambda0 = HiddenVariable(l0);
    const double base = variational_distance(build_measure(s1, c), build_measure(s2, c));
    for (double alpha : {2 * kPi / 3, 4 * kPi / 3}) {
      ModelConfig r = c;
      r.lambda0 = HiddenVariable(l0 + alpha);
      const double rot = variational_distance(build_measure(s1.rotated(alpha), r), build_measure(s2.rotated(alpha), r));
      CHECK(std::abs(rot - base) < 1e-9);
    }
  }
}

TEST_CASE("degenerate settings reach the maximal distance") {
  const CircleMeasure a = build_measure(SettingTriple(0, 0, 0), full());
  const CircleMeasure b = build_measure(SettingTriple(0, kPi / 2, kPi / 2), full());
  CHECK(variational_distance(a, b) == doctest::Approx(2.0));

  // nearby generic settings stay close to it
  const double eps = 1e-6;
  const CircleMeasure c = build_measure(SettingTriple(0, eps, 2 * eps), full());
  const CircleMeasure d = build_measure(SettingTriple(0, kPi / 2, kPi / 2 + eps), full());
  CHECK(variational_distance(c, d) > 1.99);
}

TEST_CASE("independence check") {
  CHECK(independence_check([](const SettingTriple&) { return uniform(); }, 50));
  CHECK_FALSE(independence_check(full(), 50));
  CHECK_FALSE(independence_check(expectation_only(), 50));
}

TEST_CASE("search budget") {
  SearchConfig s = small_search();
  s.grid = 11;
  try {
    measurement_dependence(full(), s);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBudgetTooSmall);
  }
}

TEST_CASE("free-will report") {
  const FreeWillReport r = measurement_dependence(full(), small_search());
  CHECK(r.M >= 0.0);
  CHECK(r.M <= 2.0);
  CHECK(r.F == doctest::Approx(1.0 - r.M / 2.0));
  CHECK(r.M > 1.4);
  REQUIRE_FALSE(r.search_trace.empty());

  double best = 0.0;
  for (const TraceEntry& e : r.search_trace) best = std::max(best, e.distance);
  CHECK(best == r.M);
  CHECK(variational_distance(build_measure(r.argmax.first, full()), build_measure(r.argmax.second, full())) ==
        doctest::Approx(r.M).epsilon(1e-12));

  // best vertex per multistart never decreases
  for (int start = 0; start < r.search.multistarts; ++start) {
    double last = -1.0;
    for (const TraceEntry& e : r.search_trace) {
      if (e.stage != "refine" || e.start != start) continue;
      CHECK(e.distance >= last);
      last = e.distance;
    }
  }

  const FreeWillReport again = measurement_dependence(full(), small_search());
  CHECK(again.M == r.M);
  CHECK(again.search_trace.size() == r.search_trace.size());
}

TEST_CASE("structure report") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 20; ++t) {
    const SettingPair pair{random_setting(rng), random_setting(rng)};
    const StructureReport s = argmax_structure_report(pair, full());
    CHECK(s.total_overlap == doctest::Approx(kTwoPi).epsilon(1e-12));
    double sum = 0.0;
    for (const RegionOverlap& o : s.overlaps) sum += o.length;
    CHECK(sum == doctest::Approx(kTwoPi).epsilon(1e-12));
    CHECK(s.distance == doctest::Approx(variational_distance(build_measure(pair.first, full()),
                                                             build_measure(pair.second, full()))));
  }
  CHECK(region_label(SignPattern(1, 1, 1)) == "R1+");
  CHECK(region_label(SignPattern(-1, -1, -1)) == "R1-");
  CHECK(region_label(SignPattern(-1, 1, 1)) == "R2-");
}
