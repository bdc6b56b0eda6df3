#include <cmath>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "ghzmd/circle.hpp"

using namespace ghzmd;

namespace {

// Pattern lengths by scanning the response on a fine grid.
std::map<int, double> scan_lengths(const SettingTriple& s, int n) {
  std::map<int, double> out;
  const double h = kTwoPi / n;
  for (int i = 0; i < n; ++i) {
    const SignPattern p = response_pattern(s, HiddenVariable((i + 0.5) * h));
    out[p.index()] += h;
  }
  return out;
}

}  // namespace

TEST_CASE("response sign rule") {
  CHECK(response(0.0, HiddenVariable(0.0)) == 1);
  CHECK(response(0.0, HiddenVariable(kPi)) == -1);
  CHECK(response(0.0, HiddenVariable(kPi / 2)) == 1);  // sign(0) = +1
  CHECK(response(kPi / 4, HiddenVariable(kPi)) == -1);
  for (double l : {0.3, 1.7, 4.0}) CHECK(response(1.0, HiddenVariable(l)) == -response(1.0, HiddenVariable(l + kPi)));
}

TEST_CASE("pair angle") {
  CHECK(pair_angle(0.0, kPi / 3) == doctest::Approx(kPi / 3));
  CHECK(pair_angle(0.1, kTwoPi - 0.1) == doctest::Approx(0.2));
  CHECK(pair_angle(0.0, kPi) == doctest::Approx(kPi));
  CHECK(pair_angle(1.0, 1.0) == 0.0);
}

TEST_CASE("partition example") {
  const SettingTriple s(0, kPi / 3, kPi / 6);
  const ArcPartition part = partition_circle(s);
  CHECK(pattern_length(part, SignPattern(1, 1, 1)) == doctest::Approx(2 * kPi / 3));
  CHECK(pattern_length(part, SignPattern(-1, -1, -1)) == doctest::Approx(2 * kPi / 3));
  const auto scan = scan_lengths(s, 1000000);
  for (SignPattern p : kAllPatterns) {
    const double expected = scan.count(p.index()) ? scan.at(p.index()) : 0.0;
    CHECK(std::abs(pattern_length(part, p) - expected) < 1e-5);
  }
  double six = 0.0;
  for (SignPattern p : kAllPatterns) {
    if (pattern_length(part, p) > 0) six += 1;
  }
  CHECK(six == 6);
}

TEST_CASE("coincident settings") {
  const ArcPartition part = partition_circle(SettingTriple(0.4, 0.4, 0.4));
  CHECK(part.arcs.size() == 2);
  CHECK(pattern_length(part, SignPattern(1, 1, 1)) == doctest::Approx(kPi));
  CHECK(pattern_length(part, SignPattern(-1, -1, -1)) == doctest::Approx(kPi));
}

TEST_CASE("partition invariants on random settings") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (int t = 0; t < 1000; ++t) {
    const SettingTriple s(u(rng), u(rng), u(rng));
    const ArcPartition part = partition_circle(s);

    double total = 0.0;
    for (const PatternArc& pa : part.arcs) {
      total += pa.arc.length;
      CHECK(pa.arc.length > 0.0);
    }
    CHECK(std::abs(total - kTwoPi) < 1e-12);

    // antipodal symmetry and exactly one missing pair for generic settings
    int missing = 0;
    for (SignPattern rep : kPairRepresentatives) {
      const double l = pattern_length(part, rep);
      CHECK(l == doctest::Approx(pattern_length(part, -rep)).epsilon(1e-12));
      if (l == 0.0) ++missing;
    }
    CHECK(missing == 1);

    // labels agree with the sign rule away from boundaries
    for (const PatternArc& pa : part.arcs) {
      CHECK(response_pattern(s, HiddenVariable(pa.arc.midpoint())) == pa.pattern);
    }

    const double probe = u(rng);
    CHECK(part.arc_containing(probe).arc.contains(normalize_angle(probe)));
  }
}

TEST_CASE("arc containment wraps") {
  const Arc a{kTwoPi - 0.5, 1.0};
  CHECK(a.contains(0.2));
  CHECK(a.contains(kTwoPi - 0.25));
  CHECK_FALSE(a.contains(0.6));
  CHECK(a.midpoint() == doctest::Approx(0.0).epsilon(1e-12));
}
