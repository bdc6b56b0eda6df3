#pragma once

#include <functional>
#include <vector>

namespace ghzmd {

/// E1(φ) = 1 - (2φ̃ - sin 2φ̃)/π with φ̃ = π - |π - (φ mod 2π)|.
double e1(double phi);

struct DominanceResult {
  bool holds = false;
  double min_slack = 0.0;      // min over the grid of |e1| - |cos|
  double min_slack_phi = 0.0;
  bool endpoints_exact = false;  // e1(0) == 1 and e1(π) == -1
};

/// |e1(φ)| ≥ |cos φ| - 1e-12 on grid uniform points over [0, π] (grid ≥ 100).
DominanceResult dominance_check(int grid);

struct MixtureWeight {
  int multiplier = 1;  // 2m + 1
  double weight = 0.0;
};

struct MixtureSolution {
  std::vector<MixtureWeight> weights;
  double residual = 0.0;       // sup-norm on the grid
  double least_squares = 0.0;  // Σ squared residuals on the grid
};

/// Probability weights p_1, p_3, ..., p_{2 m_max + 1} minimizing
/// Σ (target(φ) - Σ p e1((2m+1)φ))² over grid uniform points on [0, π].
/// Requires m_max ≥ 1 and grid ≥ 10 m_max.
MixtureSolution mixture_decompose(int m_max, int grid,
                                  const std::function<double(double)>& target = nullptr);

}  // namespace ghzmd
