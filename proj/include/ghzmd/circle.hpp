#pragma once

#include <vector>

#include "ghzmd/angles.hpp"
#include "ghzmd/quantum.hpp"
#include "ghzmd/sign_pattern.hpp"

namespace ghzmd {

/// Shared variable λ on the unit circle, i.e. the vector (cos λ, sin λ).
class HiddenVariable {
 public:
  HiddenVariable() = default;
  explicit HiddenVariable(double lambda) : lambda_(normalize_angle(lambda)) {}

  double lambda() const { return lambda_; }
  HiddenVariable antipode() const { return HiddenVariable(lambda_ + kPi); }

 private:
  double lambda_ = 0.0;
};

/// Half-open arc [start, start + length). start ∈ [0, 2π); the arc may wrap past 2π.
struct Arc {
  double start = 0.0;
  double length = 0.0;

  double end() const { return start + length; }
  double midpoint() const { return normalize_angle(start + 0.5 * length); }
  bool contains(double lambda) const;
};

struct PatternArc {
  Arc arc;
  SignPattern pattern;
};

/// The circle cut by the three measurement-boundary diameters.
struct ArcPartition {
  std::vector<PatternArc> arcs;  // ordered by start, disjoint, covering [0, 2π)

  const PatternArc& arc_containing(double lambda) const;
};

/// Boundaries closer than this are treated as a single boundary.
inline constexpr double kBoundaryMergeTolerance = 1e-12;

/// sign(m̂·λ) for an equatorial direction at azimuth phi, with sign(0) = +1.
int response(double phi, HiddenVariable hv);

SignPattern response_pattern(const SettingTriple& s, HiddenVariable hv);

/// Unsigned angle in [0, π] between the directions at azimuths x and y.
double pair_angle(double x, double y);

ArcPartition partition_circle(const SettingTriple& s);

/// Total length of the arcs labelled pat (0 if absent).
double pattern_length(const ArcPartition& partition, SignPattern pat);

}  // namespace ghzmd
