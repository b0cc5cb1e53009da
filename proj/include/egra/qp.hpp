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

// Strictly convex quadratic programs
//
//   minimize 1/2 y^T H y + c^T y   subject to   A y <= b
//
// solved by a primal active-set method with KKT-residual certification, plus
// the proximal and projection operators built on top of it.

#ifndef EGRA_QP_HPP_
#define EGRA_QP_HPP_

#include <map>
#include <memory>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "egra/problem.hpp"

namespace egra {

inline constexpr double kDefaultQpTol = 1e-10;

using HessianFactor = Eigen::LLT<Eigen::MatrixXd>;

struct QpProblem {
  Eigen::MatrixXd H;
  Eigen::VectorXd c;
  Polyhedron constraints;
  // Optional Cholesky factor of H, reused across calls with the same H.
  std::shared_ptr<const HessianFactor> factor;
};

struct QpSolution {
  Eigen::VectorXd point;
  Eigen::VectorXd duals;
  double kkt_stationarity = 0.0;
  double kkt_feasibility = 0.0;
  double kkt_complementarity = 0.0;
  int iterations = 0;
  // Constraints in the final working set, ascending.
  std::vector<int> active_set;
};

// Optional starting data. The point is used when it is feasible within tol;
// otherwise the polyhedron's interior point, and failing that a phase-1
// solve. Rows of active_set that are tight at the start seed the working set.
struct QpWarmStart {
  Eigen::VectorXd point;
  std::vector<int> active_set;
};

// Unique minimizer with all three KKT residuals <= tol.
// Throws QpNonConvergenceError (iteration cap 50 (m + l)) or
// QpInfeasibleError. tol must lie in (0, 1e-2].
QpSolution qp_solve(const QpProblem& problem, double tol = kDefaultQpTol,
                    const QpWarmStart* warm = nullptr);

// Brute-force oracle: enumerates every constraint subset. Requires m <= 6
// and l <= 12.
QpSolution qp_enumerate(const QpProblem& problem);

// Residuals of a candidate primal-dual pair.
struct KktResiduals {
  double stationarity = 0.0;
  double feasibility = 0.0;
  double complementarity = 0.0;
};
KktResiduals kkt_residuals(const QpProblem& problem, const Eigen::VectorXd& y,
                           const Eigen::VectorXd& duals);

// Euclidean projection onto set.
Eigen::VectorXd project(const Polyhedron& set, const Eigen::VectorXd& z,
                        double tol = kDefaultQpTol);

// prox of lambda f(x, .) at z over inst.feasible.
Eigen::VectorXd prox_step(const EquilibriumInstance& inst,
                          const Eigen::VectorXd& x, const Eigen::VectorXd& z,
                          double lambda, double tol = kDefaultQpTol);

// Prox evaluator owned by one solver run. Caches Hessian factorizations by
// stepsize and warm-starts each QP from the previous solution.
class ProxOperator {
 public:
  ProxOperator(const EquilibriumInstance& inst, double tol);

  Eigen::VectorXd operator()(const Eigen::VectorXd& x,
                             const Eigen::VectorXd& z, double lambda);

  long calls() const { return calls_; }
  double tol() const { return tol_; }

 private:
  std::shared_ptr<const HessianFactor> factor_for(double lambda);

  const EquilibriumInstance& inst_;
  double tol_;
  long calls_ = 0;
  std::map<double, std::shared_ptr<const HessianFactor>> factors_;
  std::vector<double> factor_order_;
  QpWarmStart warm_;
  bool has_warm_ = false;
};

// Projection evaluator with the same caching behaviour.
class Projector {
 public:
  Projector(const Polyhedron& set, double tol);

  Eigen::VectorXd operator()(const Eigen::VectorXd& z);

  long calls() const { return calls_; }

 private:
  const Polyhedron& set_;
  double tol_;
  long calls_ = 0;
  std::shared_ptr<const HessianFactor> identity_factor_;
  QpWarmStart warm_;
  bool has_warm_ = false;
};

}  // namespace egra

#endif  // EGRA_QP_HPP_
