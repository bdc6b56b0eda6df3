#include "ghzmd/circle.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace ghzmd {

bool Arc::contains(double lambda) const {
  return normalize_angle(lambda - start) < length;
}

const PatternArc& ArcPartition::arc_containing(double lambda) const {
  for (const PatternArc& pa : arcs) {
    if (pa.arc.contains(lambda)) return pa;
  }
  // Only reachable through rounding at the seam; the seam belongs to the last arc.
  return arcs.back();
}

int response(double phi, HiddenVariable hv) {
  return std::cos(hv.lambda() - phi) >= 0.0 ? 1 : -1;
}

SignPattern response_pattern(const SettingTriple& s, HiddenVariable hv) {
  return {response(s.a(), hv), response(s.b(), hv), response(s.c(), hv)};
}

double pair_angle(double x, double y) {
  return std::abs(std::remainder(x - y, kTwoPi));
}

ArcPartition partition_circle(const SettingTriple& s) {
  // Each direction contributes one boundary diameter; work with its angle in
  // [0, π) so the two ends of every diameter are merged identically.
  std::array<double, 3> diameters{};
  for (int x = 0; x < 3; ++x) {
    double d = std::fmod(normalize_angle(s[x] + kPi / 2.0), kPi);
    if (d >= kPi) d = 0.0;
    diameters[static_cast<std::size_t>(x)] = d;
  }
  std::sort(diameters.begin(), diameters.end());

  std::vector<double> half;
  for (double d : diameters) {
    if (half.empty() || d - half.back() > kBoundaryMergeTolerance) half.push_back(d);
  }
  // Merge across the seam at 0 / π.
  while (half.size() > 1 && half.front() + kPi - half.back() <= kBoundaryMergeTolerance) half.pop_back();

  // Antipodal arcs share one length value so paired patterns have equal measure.
  ArcPartition partition;
  std::vector<PatternArc> opposite;
  for (std::size_t i = 0; i < half.size(); ++i) {
    const double end = (i + 1 < half.size()) ? half[i + 1] : half.front() + kPi;
    const Arc arc{half[i], end - half[i]};
    const SignPattern pattern = response_pattern(s, HiddenVariable(arc.midpoint()));
    partition.arcs.push_back({arc, pattern});
    opposite.push_back({Arc{half[i] + kPi, arc.length}, -pattern});
  }
  partition.arcs.insert(partition.arcs.end(), opposite.begin(), opposite.end());
  return partition;
}

double pattern_length(const ArcPartition& partition, SignPattern pat) {
  double total = 0.0;
  for (const PatternArc& pa : partition.arcs) {
    if (pa.pattern == pat) total += pa.arc.length;
  }
  return total;
}

}  // namespace ghzmd
