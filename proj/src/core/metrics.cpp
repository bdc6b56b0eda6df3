#include "ghzmd/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <thread>
#include <tuple>

#include "ghzmd/error.hpp"

namespace ghzmd {

namespace {

constexpr double kMassTolerance = 1e-9;

struct PointMass {
  double location;
  double weight;
};

double circular_gap(double x, double y) { return std::abs(std::remainder(x - y, kTwoPi)); }

// Atoms of one measure merged by location.
std::vector<PointMass> aggregate_atoms(const CircleMeasure& m) {
  std::vector<PointMass> out;
  for (const Atom& a : m.atoms) {
    auto it = std::find_if(out.begin(), out.end(), [&](const PointMass& p) {
      return circular_gap(p.location, a.location.lambda()) <= kAtomColocationTolerance;
    });
    if (it == out.end()) {
      out.push_back({a.location.lambda(), a.weight});
    } else {
      it->weight += a.weight;
    }
  }
  return out;
}

std::vector<double> breakpoints(const CircleMeasure& m1, const CircleMeasure& m2) {
  std::vector<double> b;
  for (const CircleMeasure* m : {&m1, &m2}) {
    for (const DensityPiece& p : m->pieces) {
      b.push_back(normalize_angle(p.arc.start));
      b.push_back(normalize_angle(p.arc.end()));
    }
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

}  // namespace

double variational_distance(const CircleMeasure& m1, const CircleMeasure& m2) {
  for (const CircleMeasure* m : {&m1, &m2}) {
    const double mass = m->total_mass();
    if (!(std::abs(mass - 1.0) <= kMassTolerance)) {
      throw Error(ErrorCode::kUnnormalizedInput,
                  "variational distance needs normalized measures, got mass " + std::to_string(mass));
    }
  }

  double total = 0.0;
  const std::vector<double> cuts = breakpoints(m1, m2);
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const double a = cuts[i];
    const double e = (i + 1 < cuts.size()) ? cuts[i + 1] : cuts.front() + kTwoPi;
    const double mid = normalize_angle(0.5 * (a + e));
    total += std::abs(m1.density_at(mid) - m2.density_at(mid)) * (e - a);
  }

  const std::vector<PointMass> atoms1 = aggregate_atoms(m1);
  std::vector<PointMass> atoms2 = aggregate_atoms(m2);
  std::vector<bool> matched(atoms2.size(), false);
  for (const PointMass& p : atoms1) {
    double other = 0.0;
    for (std::size_t j = 0; j < atoms2.size(); ++j) {
      if (!matched[j] && circular_gap(p.location, atoms2[j].location) <= kAtomColocationTolerance) {
        other = atoms2[j].weight;
        matched[j] = true;
        break;
      }
    }
    total += std::abs(p.weight - other);
  }
  for (std::size_t j = 0; j < atoms2.size(); ++j) {
    if (!matched[j]) total += atoms2[j].weight;
  }
  return std::clamp(total, 0.0, 2.0);
}

bool independence_check(const MeasureFactory& factory, std::uint64_t trials, std::uint64_t seed) {
  if (trials < 2) throw Error(ErrorCode::kInvalidArgument, "independence check needs at least 2 trials");
  std::mt19937_64 gen(seed);
  auto angle = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53 * kTwoPi; };
  for (std::uint64_t t = 0; t < trials; ++t) {
    const SettingTriple s1(angle(), angle(), angle());
    const SettingTriple s2(angle(), angle(), angle());
    if (variational_distance(factory(s1), factory(s2)) > 1e-12) return false;
  }
  return true;
}

bool independence_check(const ModelConfig& cfg, std::uint64_t trials, std::uint64_t seed) {
  return independence_check([&cfg](const SettingTriple& s) { return build_measure(s, cfg); }, trials, seed);
}

namespace {

using Point = std::array<double, 6>;

SettingPair to_pair(const Point& x) {
  return {SettingTriple(x[0], x[1], x[2]), SettingTriple(x[3], x[4], x[5])};
}

struct GridHit {
  double value;
  std::uint32_t i;
  std::uint32_t j;
};

// Larger value first, then scan order.
bool hit_before(const GridHit& x, const GridHit& y) {
  if (x.value != y.value) return x.value > y.value;
  return std::tie(x.i, x.j) < std::tie(y.i, y.j);
}

void keep_top(std::vector<GridHit>& top, const GridHit& h, std::size_t k) {
  if (top.size() == k && !hit_before(h, top.back())) return;
  top.insert(std::upper_bound(top.begin(), top.end(), h, hit_before), h);
  if (top.size() > k) top.pop_back();
}

class NelderMead {
 public:
  NelderMead(std::function<double(const Point&)> objective, int max_iterations, double tolerance)
      : f_(std::move(objective)), max_iterations_(max_iterations), tolerance_(tolerance) {}

  // Maximizes from start; on_iteration sees the best vertex after each step.
  template <typename Callback>
  void run(const Point& start, double step, Callback&& on_iteration) const {
    std::array<Point, 7> vertex;
    std::array<double, 7> value{};
    vertex[0] = start;
    for (std::size_t d = 0; d < 6; ++d) {
      vertex[d + 1] = start;
      vertex[d + 1][d] += step;
    }
    for (std::size_t v = 0; v < 7; ++v) value[v] = f_(vertex[v]);

    std::array<std::size_t, 7> order{};
    for (int it = 1; it <= max_iterations_; ++it) {
      for (std::size_t v = 0; v < 7; ++v) order[v] = v;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return value[x] > value[y]; });
      const std::size_t best = order[0], worst = order[6], second_worst = order[5];

      Point centroid{};
      for (std::size_t v = 0; v < 6; ++v) {
        for (std::size_t d = 0; d < 6; ++d) centroid[d] += vertex[order[v]][d] / 6.0;
      }
      auto along = [&](double t) {
        Point p;
        for (std::size_t d = 0; d < 6; ++d) p[d] = centroid[d] + t * (vertex[worst][d] - centroid[d]);
        return p;
      };

      const Point reflected = along(-1.0);
      const double fr = f_(reflected);
      if (fr > value[best]) {
        const Point expanded = along(-2.0);
        const double fe = f_(expanded);
        if (fe > fr) {
          vertex[worst] = expanded, value[worst] = fe;
        } else {
          vertex[worst] = reflected, value[worst] = fr;
        }
      } else if (fr > value[second_worst]) {
        vertex[worst] = reflected, value[worst] = fr;
      } else {
        const Point contracted = fr > value[worst] ? along(-0.5) : along(0.5);
        const double fc = f_(contracted);
        if (fc > std::max(fr, value[worst])) {
          vertex[worst] = contracted, value[worst] = fc;
        } else {
          for (std::size_t v = 1; v < 7; ++v) {
            Point& p = vertex[order[v]];
            for (std::size_t d = 0; d < 6; ++d) p[d] = vertex[best][d] + 0.5 * (p[d] - vertex[best][d]);
            value[order[v]] = f_(p);
          }
        }
      }

      std::size_t top = 0;
      double lo = value[0];
      for (std::size_t v = 1; v < 7; ++v) {
        if (value[v] > value[top]) top = v;
        lo = std::min(lo, value[v]);
      }
      on_iteration(it, vertex[top], value[top]);
      if (value[top] - lo <= tolerance_) break;
    }
  }

 private:
  std::function<double(const Point&)> f_;
  int max_iterations_;
  double tolerance_;
};

}  // namespace

FreeWillReport measurement_dependence(const ModelConfig& cfg, const SearchConfig& search) {
  if (search.grid < 12) {
    throw Error(ErrorCode::kBudgetTooSmall,
                "coarse grid needs at least 12 points per angle, got " + std::to_string(search.grid));
  }
  if (search.multistarts < 1 || search.max_iterations < 1 || search.random_starts < 0) {
    throw Error(ErrorCode::kBudgetTooSmall, "search needs at least one multistart and one iteration");
  }

  const int g = search.grid;
  const double spacing = kTwoPi / g;
  const std::uint32_t triples = static_cast<std::uint32_t>(g * g * g);
  auto triple_at = [&](std::uint32_t idx) {
    const int ia = static_cast<int>(idx) / (g * g), ib = (static_cast<int>(idx) / g) % g, ic = static_cast<int>(idx) % g;
    return SettingTriple(ia * spacing, ib * spacing, ic * spacing);
  };

  std::vector<CircleMeasure> measures;
  measures.reserve(triples);
  for (std::uint32_t t = 0; t < triples; ++t) measures.push_back(build_measure(triple_at(t), cfg));

  unsigned threads = search.threads ? search.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, triples);
  const std::size_t k = static_cast<std::size_t>(search.multistarts);
  std::vector<std::vector<GridHit>> partial(threads);
  {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint32_t i = w; i < triples; i += threads) {
          for (std::uint32_t j = i + 1; j < triples; ++j) {
            keep_top(partial[w], {variational_distance(measures[i], measures[j]), i, j}, k);
          }
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }
  std::vector<GridHit> top;
  for (const auto& p : partial) {
    for (const GridHit& h : p) keep_top(top, h, k);
  }

  FreeWillReport report;
  report.search = search;
  report.grid_evaluations = static_cast<std::uint64_t>(triples) * (triples - 1) / 2;

  std::vector<Point> starts;
  for (const GridHit& h : top) {
    const SettingTriple a = triple_at(h.i), b = triple_at(h.j);
    report.search_trace.push_back({{a, b}, h.value, "grid", -1, 0});
    starts.push_back({a.a(), a.b(), a.c(), b.a(), b.b(), b.c()});
  }
  std::mt19937_64 gen(search.seed);
  for (int r = 0; r < search.random_starts; ++r) {
    Point p;
    for (double& x : p) x = static_cast<double>(gen() >> 11) * 0x1.0p-53 * kTwoPi;
    starts.push_back(p);
  }

  const NelderMead optimizer(
      [&cfg](const Point& x) {
        const SettingPair pair = to_pair(x);
        return variational_distance(build_measure(pair.first, cfg), build_measure(pair.second, cfg));
      },
      search.max_iterations, search.tolerance);
  const double step = search.initial_step > 0.0 ? search.initial_step : 0.5 * spacing;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    optimizer.run(starts[s], step, [&](int it, const Point& best, double value) {
      report.search_trace.push_back({to_pair(best), value, "refine", static_cast<int>(s), it});
    });
  }

  report.M = -1.0;
  for (const TraceEntry& e : report.search_trace) {
    if (e.distance > report.M) {
      report.M = e.distance;
      report.argmax = e.settings;
    }
  }
  report.M = std::clamp(report.M, 0.0, 2.0);
  report.F = 1.0 - report.M / 2.0;
  return report;
}

std::string region_label(SignPattern p) {
  const int idx = pair_index(p);
  return "R" + std::to_string(idx + 1) + (p.product() > 0 ? "+" : "-");
}

StructureReport argmax_structure_report(const SettingPair& pair, const ModelConfig& cfg) {
  const ArcPartition unprimed = partition_circle(pair.first);
  const ArcPartition primed = partition_circle(pair.second);

  std::vector<double> cuts;
  for (const ArcPartition* p : {&unprimed, &primed}) {
    for (const PatternArc& pa : p->arcs) cuts.push_back(pa.arc.start);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::map<std::pair<std::string, std::string>, double> overlap;
  std::map<std::string, double> primed_length;
  StructureReport report;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const double a = cuts[i];
    const double e = (i + 1 < cuts.size()) ? cuts[i + 1] : cuts.front() + kTwoPi;
    const double mid = normalize_angle(0.5 * (a + e));
    const std::string p = region_label(primed.arc_containing(mid).pattern);
    const std::string u = region_label(unprimed.arc_containing(mid).pattern);
    overlap[{p, u}] += e - a;
    primed_length[p] += e - a;
    report.total_overlap += e - a;
  }
  for (const auto& [key, len] : overlap) report.overlaps.push_back({key.first, key.second, len});

  const CircleMeasure primed_measure = build_measure(pair.second, cfg);
  for (const Atom& a : primed_measure.atoms) {
    const std::string name = a.pattern.product() > 0 ? "D'+" : "D'-";
    const std::string host = region_label(unprimed.arc_containing(a.location.lambda()).pattern);
    report.atoms.push_back({name, a.weight, host});
    if (name == "D'-" && host == "R1+") report.d_minus_in_r1_plus = true;
  }

  auto overlap_of = [&](const std::string& p, const std::string& u) {
    auto it = overlap.find({p, u});
    return it == overlap.end() ? 0.0 : it->second;
  };
  const double r3 = primed_length["R3-"];
  report.r3_minus_in_r1_plus = r3 > 0.0 && overlap_of("R3-", "R1+") >= r3 - 1e-12;
  const double r2 = primed_length["R2-"];
  const double r2_in = overlap_of("R2-", "R1+");
  report.r2_minus_partial_r1_plus = r2_in > 1e-12 && r2_in < r2 - 1e-12;
  report.distance = variational_distance(build_measure(pair.first, cfg), primed_measure);
  return report;
}

}  // namespace ghzmd
