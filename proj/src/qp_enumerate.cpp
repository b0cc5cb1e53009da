// Copyright 2026 The egra Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Active-set enumeration. Independent of the active-set solver: every
// subset is solved through the full KKT matrix with a pivoted LU, and
// singular subsets (dependent rows) are skipped.

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/LU>

#include "egra/error.hpp"
#include "egra/qp.hpp"

namespace egra {

QpSolution qp_enumerate(const QpProblem& problem) {
  const Eigen::Index m = problem.H.rows();
  const auto& A = problem.constraints.A;
  const auto& b = problem.constraints.b;
  const Eigen::Index l = A.rows();
  if (m > 6 || l > 12) {
    throw ArgumentError("qp_enumerate requires m <= 6 and l <= 12");
  }
  if (problem.H.cols() != m || problem.c.size() != m || A.cols() != m ||
      b.size() != l) {
    throw ArgumentError("qp_enumerate: inconsistent dimensions");
  }

  constexpr double kFeasTol = 1e-9;
  double best_value = std::numeric_limits<double>::infinity();
  QpSolution best;

  const unsigned long subsets = 1UL << l;
  for (unsigned long mask = 0; mask < subsets; ++mask) {
    std::vector<Eigen::Index> rows;
    for (Eigen::Index i = 0; i < l; ++i) {
      if (mask & (1UL << i)) rows.push_back(i);
    }
    const auto k = static_cast<Eigen::Index>(rows.size());
    if (k > m) continue;

    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(m + k, m + k);
    Eigen::VectorXd rhs(m + k);
    kkt.topLeftCorner(m, m) = problem.H;
    rhs.head(m) = -problem.c;
    for (Eigen::Index j = 0; j < k; ++j) {
      kkt.block(m + j, 0, 1, m) = A.row(rows[j]);
      kkt.block(0, m + j, m, 1) = A.row(rows[j]).transpose();
      rhs(m + j) = b(rows[j]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
    if (lu.rank() < m + k) continue;
    const Eigen::VectorXd sol = lu.solve(rhs);
    const Eigen::VectorXd y = sol.head(m);
    const Eigen::VectorXd mult = sol.tail(k);

    if (l > 0 && (A * y - b).maxCoeff() > kFeasTol) continue;
    if (k > 0 && mult.minCoeff() < -kFeasTol) continue;

    const double value = 0.5 * y.dot(problem.H * y) + problem.c.dot(y);
    if (value < best_value) {
      best_value = value;
      best.point = y;
      best.duals = Eigen::VectorXd::Zero(l);
      best.active_set.clear();
      for (Eigen::Index j = 0; j < k; ++j) {
        best.duals(rows[j]) = std::max(0.0, mult(j));
        best.active_set.push_back(static_cast<int>(rows[j]));
      }
    }
  }
  if (!std::isfinite(best_value)) {
    throw QpInfeasibleError("qp_enumerate: no feasible KKT candidate");
  }
  const KktResiduals r = kkt_residuals(problem, best.point, best.duals);
  best.kkt_stationarity = r.stationarity;
  best.kkt_feasibility = r.feasibility;
  best.kkt_complementarity = r.complementarity;
  best.iterations = static_cast<int>(subsets);
  return best;
}

}  // namespace egra
