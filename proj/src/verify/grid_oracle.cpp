#include <algorithm>
#include <cmath>
#include <vector>

#include "ghzmd/acceptance.hpp"
#include "ghzmd/error.hpp"

namespace ghzmd {

namespace {

std::vector<double> binned_masses(const CircleMeasure& m, std::uint64_t cells) {
  const double h = kTwoPi / static_cast<double>(cells);
  std::vector<double> mass(cells, 0.0);
  // Spread each piece's mass over the cells it covers, partial cells pro rata.
  auto deposit = [&](double from, double to, double density) {
    auto first = static_cast<std::uint64_t>(from / h);
    while (from < to) {
      if (first >= cells) first = cells - 1;
      const double cell_end = std::min(to, (static_cast<double>(first) + 1.0) * h);
      mass[first] += density * std::max(0.0, cell_end - from);
      from = cell_end;
      ++first;
      if (first >= cells) break;
    }
  };
  for (const DensityPiece& p : m.pieces) {
    const double start = p.arc.start, end = p.arc.end();
    if (end <= kTwoPi) {
      deposit(start, end, p.density);
    } else {
      deposit(start, kTwoPi, p.density);
      deposit(0.0, end - kTwoPi, p.density);
    }
  }
  for (const Atom& a : m.atoms) {
    auto cell = static_cast<std::uint64_t>(a.location.lambda() / h);
    if (cell >= cells) cell = cells - 1;
    mass[cell] += a.weight;
  }
  return mass;
}

}  // namespace

double grid_variational_distance(const CircleMeasure& m1, const CircleMeasure& m2, std::uint64_t cells) {
  if (cells < 1) throw Error(ErrorCode::kInvalidArgument, "grid needs at least one cell");
  const std::vector<double> a = binned_masses(m1, cells);
  const std::vector<double> b = binned_masses(m2, cells);
  double total = 0.0;
  for (std::uint64_t i = 0; i < cells; ++i) total += std::abs(a[i] - b[i]);
  return total;
}

}  // namespace ghzmd
