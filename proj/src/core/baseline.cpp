#include "ghzmd/baseline.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ghzmd/angles.hpp"
#include "ghzmd/error.hpp"

namespace ghzmd {

double e1(double phi) {
  const double folded = kPi - std::abs(kPi - normalize_angle(phi));
  return 1.0 - (2.0 * folded - std::sin(2.0 * folded)) / kPi;
}

DominanceResult dominance_check(int grid) {
  if (grid < 100) throw Error(ErrorCode::kInvalidArgument, "dominance grid needs at least 100 points");
  DominanceResult r;
  r.min_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double phi = kPi * i / (grid - 1);
    const double slack = std::abs(e1(phi)) - std::abs(std::cos(phi));
    if (slack < r.min_slack) {
      r.min_slack = slack;
      r.min_slack_phi = phi;
    }
  }
  r.endpoints_exact = e1(0.0) == 1.0 && e1(kPi) == -1.0;
  r.holds = r.min_slack >= -1e-12 && r.endpoints_exact;
  return r;
}

namespace {

// min ½ pᵀQp - cᵀp  subject to  Σp = 1, p ≥ 0, by a primal active-set method.
Eigen::VectorXd simplex_qp(const Eigen::MatrixXd& Q, const Eigen::VectorXd& c) {
  const Eigen::Index n = Q.rows();
  Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
  p(0) = 1.0;
  std::vector<bool> free(static_cast<std::size_t>(n), false);
  free[0] = true;

  constexpr double kDualTol = 1e-14;
  for (int iter = 0; iter < 50 * static_cast<int>(n) + 50; ++iter) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (free[static_cast<std::size_t>(i)]) idx.push_back(i);
    }
    const Eigen::Index k = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
    Eigen::VectorXd rhs(k + 1);
    for (Eigen::Index r = 0; r < k; ++r) {
      for (Eigen::Index s = 0; s < k; ++s) kkt(r, s) = Q(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(s)]);
      kkt(r, k) = 1.0;
      kkt(k, r) = 1.0;
      rhs(r) = c(idx[static_cast<std::size_t>(r)]);
    }
    rhs(k) = 1.0;
    const Eigen::VectorXd sol = kkt.colPivHouseholderQr().solve(rhs);
    if (!sol.allFinite()) break;

    bool interior = true;
    for (Eigen::Index r = 0; r < k; ++r) interior = interior && sol(r) > 0.0;

    if (interior) {
      p.setZero();
      for (Eigen::Index r = 0; r < k; ++r) p(idx[static_cast<std::size_t>(r)]) = sol(r);
      const double nu = sol(k);
      const Eigen::VectorXd gradient = Q * p - c;
      Eigen::Index entering = -1;
      double most_negative = -kDualTol;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (free[static_cast<std::size_t>(i)]) continue;
        const double dual = gradient(i) + nu;
        if (dual < most_negative) {
          most_negative = dual;
          entering = i;
        }
      }
      if (entering < 0) return p;
      free[static_cast<std::size_t>(entering)] = true;
      continue;
    }

    // Step toward the subspace optimum until the first free weight hits zero.
    double alpha = 1.0;
    for (Eigen::Index r = 0; r < k; ++r) {
      const Eigen::Index i = idx[static_cast<std::size_t>(r)];
      if (sol(r) <= 0.0) alpha = std::min(alpha, p(i) / (p(i) - sol(r)));
    }
    for (Eigen::Index r = 0; r < k; ++r) {
      const Eigen::Index i = idx[static_cast<std::size_t>(r)];
      p(i) += alpha * (sol(r) - p(i));
      if (p(i) <= 1e-15) {
        p(i) = 0.0;
        free[static_cast<std::size_t>(i)] = false;
      }
    }
  }
  throw Error(ErrorCode::kInfeasibleConstraints, "simplex-constrained least squares did not converge");
}

}  // namespace

MixtureSolution mixture_decompose(int m_max, int grid, const std::function<double(double)>& target) {
  if (m_max < 1) throw Error(ErrorCode::kInvalidArgument, "m_max must be at least 1");
  if (grid < 10 * m_max) {
    throw Error(ErrorCode::kInvalidArgument, "grid must hold at least 10 points per mixture term");
  }
  const auto goal = target ? target : [](double phi) { return std::cos(phi); };

  const Eigen::Index terms = m_max + 1;
  Eigen::MatrixXd A(grid, terms);
  Eigen::VectorXd b(grid);
  for (int i = 0; i < grid; ++i) {
    const double phi = kPi * i / (grid - 1);
    for (Eigen::Index m = 0; m < terms; ++m) A(i, m) = e1(static_cast<double>(2 * m + 1) * phi);
    b(i) = goal(phi);
  }

  Eigen::VectorXd p = simplex_qp(A.transpose() * A, A.transpose() * b);
  const double sum = p.sum();
  if (!(sum > 0.0) || !p.allFinite()) {
    throw Error(ErrorCode::kInfeasibleConstraints, "mixture weights could not be normalized");
  }
  p /= sum;

  MixtureSolution s;
  for (Eigen::Index m = 0; m < terms; ++m) s.weights.push_back({static_cast<int>(2 * m + 1), p(m)});
  const Eigen::VectorXd r = A * p - b;
  s.residual = r.cwiseAbs().maxCoeff();
  s.least_squares = r.squaredNorm();
  return s;
}

}  // namespace ghzmd
