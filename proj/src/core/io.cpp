#include "ghzmd/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ghzmd/error.hpp"

namespace ghzmd {

namespace {

// Shortest round-trip representation, locale independent.
std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json angles(const SettingPair& p) {
  return {{"first", to_json(p.first)}, {"second", to_json(p.second)}};
}

}  // namespace

const char* variant_name(ModelVariant v) {
  return v == ModelVariant::kFullStatistics ? "full" : "expectation";
}

const char* mode_name(ConstructionMode m) { return m == ConstructionMode::kCorrected ? "corrected" : "literal"; }

json to_json(const JointDistribution& d) {
  json j = json::object();
  for (SignPattern o : kAllPatterns) j[o.key()] = d[o];
  return j;
}

JointDistribution joint_from_json(const json& j) {
  JointDistribution d;
  for (SignPattern o : kAllPatterns) {
    if (!j.is_object() || !j.contains(o.key()) || !j[o.key()].is_number()) {
      throw Error(ErrorCode::kInvalidArgument, "joint distribution is missing outcome " + o.key());
    }
    d[o] = j[o.key()].get<double>();
  }
  return d;
}

json to_json(const Marginals& m) {
  return {{"A", m.a}, {"B", m.b}, {"C", m.c}, {"AB", m.ab}, {"BC", m.bc}, {"CA", m.ca}};
}

json to_json(const SettingTriple& s) { return {{"phiA", s.a()}, {"phiB", s.b()}, {"phiC", s.c()}}; }

json to_json(const ModelConfig& cfg) {
  return {{"variant", variant_name(cfg.variant)}, {"mode", mode_name(cfg.mode)}, {"lambda0", cfg.lambda0.lambda()}};
}

json to_json(const SimulationResult& r) {
  json counts = json::object();
  for (SignPattern o : kAllPatterns) counts[o.key()] = r.counts.counts[static_cast<std::size_t>(o.index())];
  return {{"settings", to_json(r.settings)},
          {"model", to_json(r.config)},
          {"seed", r.seed},
          {"n", r.counts.n},
          {"exact_joint", to_json(r.exact)},
          {"empirical_joint", to_json(r.empirical)},
          {"counts", counts},
          {"exact_marginals", to_json(marginals(r.exact))},
          {"empirical_marginals", to_json(marginals(r.empirical))},
          {"exact_expectation", expectation(r.exact)},
          {"empirical_expectation", expectation(r.empirical)}};
}

json to_json(const SearchConfig& c) {
  return {{"grid", c.grid},
          {"multistarts", c.multistarts},
          {"max_iterations", c.max_iterations},
          {"initial_step", c.initial_step},
          {"tolerance", c.tolerance},
          {"random_starts", c.random_starts},
          {"seed", c.seed}};
}

json to_json(const FreeWillReport& r) {
  return {{"M", r.M},
          {"F", r.F},
          {"argmax", angles(r.argmax)},
          {"trace_length", r.search_trace.size()},
          {"grid_evaluations", r.grid_evaluations},
          {"search", to_json(r.search)}};
}

json to_json(const StructureReport& r) {
  json overlaps = json::array();
  for (const RegionOverlap& o : r.overlaps) {
    overlaps.push_back({{"primed", o.primed}, {"unprimed", o.unprimed}, {"length", o.length}});
  }
  json atoms = json::array();
  for (const AtomPlacement& a : r.atoms) {
    atoms.push_back({{"atom", a.atom}, {"weight", a.weight}, {"inside", a.unprimed_region}});
  }
  return {{"overlaps", overlaps},
          {"atoms", atoms},
          {"total_overlap", r.total_overlap},
          {"distance", r.distance},
          {"D'-_in_R1+", r.d_minus_in_r1_plus},
          {"R'3-_in_R1+", r.r3_minus_in_r1_plus},
          {"R'2-_partially_in_R1+", r.r2_minus_partial_r1_plus}};
}

json to_json(const MixtureSolution& s) {
  json w = json::array();
  for (const MixtureWeight& m : s.weights) w.push_back({{"multiplier", m.multiplier}, {"weight", m.weight}});
  double sum = 0.0;
  for (const MixtureWeight& m : s.weights) sum += m.weight;
  return {{"weights", w}, {"weight_sum", sum}, {"residual_sup", s.residual}, {"residual_sq", s.least_squares}};
}

json to_json(const DominanceResult& d) {
  return {{"holds", d.holds},
          {"min_slack", d.min_slack},
          {"min_slack_phi", d.min_slack_phi},
          {"endpoints_exact", d.endpoints_exact}};
}

std::string simulation_csv(const SimulationResult& r) {
  std::ostringstream out;
  out << "outcome,exact,empirical,count\n";
  for (SignPattern o : kAllPatterns) {
    out << o.key() << ',' << num(r.exact[o]) << ',' << num(r.empirical[o]) << ','
        << r.counts.counts[static_cast<std::size_t>(o.index())] << '\n';
  }
  return out.str();
}

std::string trace_csv(const FreeWillReport& r) {
  std::ostringstream out;
  out << "stage,start,iteration,phiA,phiB,phiC,phiA2,phiB2,phiC2,distance\n";
  for (const TraceEntry& e : r.search_trace) {
    out << e.stage << ',' << e.start << ',' << e.iteration;
    for (double a : e.settings.first.angles()) out << ',' << num(a);
    for (double a : e.settings.second.angles()) out << ',' << num(a);
    out << ',' << num(e.distance) << '\n';
  }
  return out.str();
}

std::string e1_curve_csv(int points) {
  if (points < 2) throw Error(ErrorCode::kInvalidArgument, "curve needs at least 2 points");
  std::ostringstream out;
  out << "phi,e1,cos\n";
  for (int i = 0; i < points; ++i) {
    const double phi = kPi * i / (points - 1);
    out << num(phi) << ',' << num(e1(phi)) << ',' << num(std::cos(phi)) << '\n';
  }
  return out.str();
}

}  // namespace ghzmd
