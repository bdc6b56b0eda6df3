#include <cmath>
#include <random>

#include "ghzmd/acceptance.hpp"
#include "ghzmd/quantum.hpp"

namespace ghzmd {

nlohmann::json verify_oracle(std::uint64_t seed, int triples, bool& passed) {
  std::mt19937_64 gen(seed);
  auto u = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };

  double born = 0.0, equator = 0.0, norm = 0.0, negativity = 0.0, expect = 0.0, marg = 0.0;
  for (int t = 0; t < triples; ++t) {
    const DirectionTriple dirs{MeasurementDirection(std::acos(1.0 - 2.0 * u()), u() * kTwoPi),
                               MeasurementDirection(std::acos(1.0 - 2.0 * u()), u() * kTwoPi),
                               MeasurementDirection(std::acos(1.0 - 2.0 * u()), u() * kTwoPi)};
    const JointDistribution closed = ghz_joint_closed_form(dirs);
    born = std::max(born, born_rule_joint(dirs).max_abs_difference(closed));
    norm = std::max(norm, std::abs(closed.total() - 1.0));
    for (double p : closed.p) negativity = std::max(negativity, -p);

    const SettingTriple s(u() * kTwoPi, u() * kTwoPi, u() * kTwoPi);
    const JointDistribution eq = equatorial_joint(s);
    equator = std::max(equator, eq.max_abs_difference(ghz_joint_closed_form(s.directions())));
    expect = std::max(expect, std::abs(expectation(eq) - std::cos(s.total())));
    for (double v : marginals(eq).as_array()) marg = std::max(marg, std::abs(v));
  }

  nlohmann::json checks = nlohmann::json::array();
  passed = true;
  auto check = [&](const char* name, double value, double limit) {
    const bool ok = value <= limit;
    passed = passed && ok;
    checks.push_back({{"check", name}, {"value", value}, {"limit", limit}, {"passed", ok}});
  };
  check("born_vs_closed_form", born, 1e-10);
  check("equatorial_vs_closed_form", equator, 1e-12);
  check("normalization", norm, 1e-12);
  check("negativity", negativity, 1e-12);
  check("expectation_is_cos_phi", expect, 1e-12);
  check("marginals_vanish", marg, 1e-12);
  return {{"seed", seed}, {"triples", triples}, {"passed", passed}, {"checks", checks}};
}

}  // namespace ghzmd
