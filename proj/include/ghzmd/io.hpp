#pragma once

#include <string>

#include "json.hpp"

#include "ghzmd/baseline.hpp"
#include "ghzmd/metrics.hpp"
#include "ghzmd/model.hpp"
#include "ghzmd/quantum.hpp"

namespace ghzmd {

using nlohmann::json;

/// {"+++": p, "++-": p, ..., "---": p}
json to_json(const JointDistribution& d);
/// Throws Error(kInvalidArgument) on missing keys.
JointDistribution joint_from_json(const json& j);

json to_json(const Marginals& m);
json to_json(const SettingTriple& s);
json to_json(const ModelConfig& cfg);
json to_json(const SimulationResult& r);
json to_json(const SearchConfig& c);
json to_json(const FreeWillReport& r);
json to_json(const StructureReport& r);
json to_json(const MixtureSolution& s);
json to_json(const DominanceResult& d);

const char* variant_name(ModelVariant v);
const char* mode_name(ConstructionMode m);

/// outcome,exact,empirical,count
std::string simulation_csv(const SimulationResult& r);
/// stage,start,iteration,phiA,phiB,phiC,phiA2,phiB2,phiC2,distance
std::string trace_csv(const FreeWillReport& r);
/// phi,e1,cos
std::string e1_curve_csv(int points);

}  // namespace ghzmd
