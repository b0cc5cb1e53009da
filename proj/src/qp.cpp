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

// Primal active-set method for strictly convex QPs (range-space variant).
//
// Each iteration solves the equality-constrained subproblem on the working
// set W,
//
//   [ H    A_W^T ] [ p      ]   [ -g ]
//   [ A_W  0     ] [ lambda ] = [  0 ],     g = H y + c,
//
// through the Schur complement S = A_W H^{-1} A_W^T, using a Cholesky factor
// of H that callers may cache across solves. Blocking constraints enter W in
// ascending row order on ties; at a stationary point the constraint with the
// most negative multiplier (lowest row on ties) leaves W.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <Eigen/LU>
#include <Eigen/QR>

#include "egra/error.hpp"
#include "egra/qp.hpp"

namespace egra {
namespace {

constexpr int kMaxFactorCacheEntries = 4;

void check_shapes(const QpProblem& p) {
  const Eigen::Index m = p.H.rows();
  if (m < 1 || p.H.cols() != m) throw ArgumentError("H must be square");
  if (p.c.size() != m) throw ArgumentError("c has wrong dimension");
  if (p.constraints.A.cols() != m) {
    throw ArgumentError("constraint matrix has wrong number of columns");
  }
  if (p.constraints.b.size() != p.constraints.A.rows()) {
    throw ArgumentError("constraint vector has wrong dimension");
  }
}

std::shared_ptr<const HessianFactor> factorize(const Eigen::MatrixXd& H) {
  auto factor = std::make_shared<HessianFactor>(H);
  if (factor->info() != Eigen::Success) {
    throw ArgumentError("QP Hessian is not positive definite");
  }
  return factor;
}

Eigen::MatrixXd gather_rows(const Eigen::MatrixXd& A,
                            const std::vector<int>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), A.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out.row(static_cast<Eigen::Index>(k)) = A.row(rows[k]);
  }
  return out;
}

Eigen::VectorXd gather(const Eigen::VectorXd& v, const std::vector<int>& idx) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    out(static_cast<Eigen::Index>(k)) = v(idx[k]);
  }
  return out;
}

// Solves S x = r for the small Schur complement; falls back to a
// minimum-norm least-squares solve when S is singular or indefinite.
Eigen::VectorXd solve_schur(const Eigen::MatrixXd& S, const Eigen::VectorXd& r) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(S);
  if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
    const Eigen::VectorXd x = ldlt.solve(r);
    const double res = (S * x - r).lpNorm<Eigen::Infinity>();
    if (x.allFinite() && res <= 1e-9 * (1.0 + r.lpNorm<Eigen::Infinity>())) {
      return x;
    }
  }
  return Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(S).solve(r);
}

struct EqpStep {
  Eigen::VectorXd step;
  Eigen::VectorXd multipliers;
};

// Step p and multipliers on working set W from point y.
EqpStep solve_eqp(const QpProblem& p, const HessianFactor& factor,
                  const Eigen::VectorXd& y, const std::vector<int>& working) {
  const Eigen::VectorXd g = p.H * y + p.c;
  const Eigen::VectorXd h_inv_g = factor.solve(g);
  EqpStep out;
  if (working.empty()) {
    out.step = -h_inv_g;
    out.multipliers.resize(0);
    return out;
  }
  const Eigen::MatrixXd aw = gather_rows(p.constraints.A, working);
  const Eigen::MatrixXd h_inv_awt = factor.solve(aw.transpose());
  const Eigen::MatrixXd schur = aw * h_inv_awt;
  out.multipliers = solve_schur(schur, -(aw * h_inv_g));
  out.step = -(h_inv_g + h_inv_awt * out.multipliers);
  return out;
}

// Minimizer of the objective on {A_W y = b_W}, solved from scratch. Used to
// polish the final iterate so the working constraints hold to roundoff.
EqpStep solve_eqp_absolute(const QpProblem& p, const HessianFactor& factor,
                           const std::vector<int>& working) {
  const Eigen::VectorXd h_inv_c = factor.solve(p.c);
  EqpStep out;
  if (working.empty()) {
    out.step = -h_inv_c;
    out.multipliers.resize(0);
    return out;
  }
  const Eigen::MatrixXd aw = gather_rows(p.constraints.A, working);
  const Eigen::VectorXd bw = gather(p.constraints.b, working);
  const Eigen::MatrixXd h_inv_awt = factor.solve(aw.transpose());
  const Eigen::MatrixXd schur = aw * h_inv_awt;
  out.multipliers = solve_schur(schur, -(bw + aw * h_inv_c));
  out.step = -(h_inv_c + h_inv_awt * out.multipliers);
  return out;
}

Eigen::VectorXd full_duals(Eigen::Index l, const std::vector<int>& working,
                           const Eigen::VectorXd& multipliers) {
  Eigen::VectorXd duals = Eigen::VectorXd::Zero(l);
  for (std::size_t k = 0; k < working.size(); ++k) {
    duals(working[k]) =
        std::max(0.0, multipliers(static_cast<Eigen::Index>(k)));
  }
  return duals;
}

double worst(const KktResiduals& r) {
  return std::max({r.stationarity, r.feasibility, r.complementarity});
}

// Adds rows from candidates that are tight at y and keep A_W full row rank.
std::vector<int> seed_working_set(const Polyhedron& set,
                                  const Eigen::VectorXd& y,
                                  std::vector<int> candidates, double tol) {
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  std::vector<int> working;
  for (int row : candidates) {
    if (row < 0 || row >= set.rows()) continue;
    const double slack = set.b(row) - set.A.row(row).dot(y);
    if (std::abs(slack) > tol) continue;
    working.push_back(row);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(gather_rows(set.A, working));
    if (lu.rank() < static_cast<Eigen::Index>(working.size())) {
      working.pop_back();
    }
  }
  return working;
}

// Phase 1: minimize t + delta/2 (|y - center|^2 + t^2) over
// {A y - t <= b, t >= -1}, re-centering until t <= tol or t stops improving.
Eigen::VectorXd find_feasible_point(const Polyhedron& set,
                                    Eigen::VectorXd center, double tol) {
  const Eigen::Index m = set.dim();
  const Eigen::Index l = set.rows();
  constexpr double kDelta = 1e-6;
  constexpr int kRounds = 30;

  Polyhedron lifted;
  lifted.A = Eigen::MatrixXd::Zero(l + 1, m + 1);
  lifted.A.topLeftCorner(l, m) = set.A;
  lifted.A.col(m).head(l).setConstant(-1.0);
  lifted.A(l, m) = -1.0;
  lifted.b.resize(l + 1);
  lifted.b.head(l) = set.b;
  lifted.b(l) = 1.0;

  QpProblem phase1;
  phase1.H = kDelta * Eigen::MatrixXd::Identity(m + 1, m + 1);
  phase1.factor = factorize(phase1.H);

  double previous = std::numeric_limits<double>::infinity();
  for (int round = 0; round < kRounds; ++round) {
    const double start_t =
        std::max(0.0, (set.A * center - set.b).maxCoeff()) + 1.0;
    lifted.interior_point.resize(m + 1);
    lifted.interior_point.head(m) = center;
    lifted.interior_point(m) = start_t;
    phase1.constraints = lifted;
    phase1.c = Eigen::VectorXd::Zero(m + 1);
    phase1.c.head(m) = -kDelta * center;
    phase1.c(m) = 1.0;

    const QpSolution sol = qp_solve(phase1, std::max(tol, 1e-12));
    const double t = sol.point(m);
    center = sol.point.head(m);
    if (set.max_violation(center) <= tol) return center;
    if (t >= previous - 1e-12 * (1.0 + std::abs(previous))) break;
    previous = t;
  }
  std::ostringstream msg;
  msg << "constraint system is infeasible (phase 1 residual "
      << set.max_violation(center) << ")";
  throw QpInfeasibleError(msg.str());
}

}  // namespace

KktResiduals kkt_residuals(const QpProblem& problem, const Eigen::VectorXd& y,
                           const Eigen::VectorXd& duals) {
  KktResiduals r;
  const auto& set = problem.constraints;
  Eigen::VectorXd grad = problem.H * y + problem.c;
  if (set.rows() > 0) grad += set.A.transpose() * duals;
  r.stationarity = grad.lpNorm<Eigen::Infinity>();
  if (set.rows() > 0) {
    const Eigen::VectorXd residual = set.A * y - set.b;
    r.feasibility = std::max(0.0, residual.maxCoeff());
    r.complementarity = duals.cwiseProduct(residual).cwiseAbs().maxCoeff();
  }
  return r;
}

QpSolution qp_solve(const QpProblem& problem, double tol,
                    const QpWarmStart* warm) {
  check_shapes(problem);
  if (!(tol > 0.0 && tol <= 1e-2)) {
    throw ArgumentError("QP tolerance must lie in (0, 1e-2]");
  }
  const auto& set = problem.constraints;
  const Eigen::Index m = problem.H.rows();
  const Eigen::Index l = set.rows();
  const auto factor = problem.factor ? problem.factor : factorize(problem.H);

  // Feasible start.
  Eigen::VectorXd y;
  std::vector<int> working;
  if (warm != nullptr && warm->point.size() == m &&
      set.max_violation(warm->point) <= tol) {
    y = warm->point;
    working = seed_working_set(set, y, warm->active_set, tol);
  } else if (set.interior_point.size() == m &&
             set.max_violation(set.interior_point) <= tol) {
    y = set.interior_point;
  } else {
    const Eigen::VectorXd center = set.interior_point.size() == m
                                       ? set.interior_point
                                       : Eigen::VectorXd::Zero(m);
    y = find_feasible_point(set, center, tol);
  }

  double row_scale = 1.0;
  if (l > 0) row_scale += set.A.cwiseAbs().rowwise().sum().maxCoeff();
  const double dual_eps = 1e-3 * tol / row_scale;
  const int cap = 50 * static_cast<int>(m + l);

  std::vector<char> in_working(static_cast<std::size_t>(l), 0);
  for (int row : working) in_working[static_cast<std::size_t>(row)] = 1;

  bool at_minimizer = false;
  bool optimal = false;
  EqpStep eqp;
  int iter = 0;
  for (; iter < cap; ++iter) {
    eqp = solve_eqp(problem, *factor, y, working);
    const double step_norm = eqp.step.lpNorm<Eigen::Infinity>();
    const double y_norm = y.lpNorm<Eigen::Infinity>();
    if (at_minimizer || step_norm <= 1e-13 * (1.0 + y_norm)) {
      if (working.empty()) {
        optimal = true;
        break;
      }
      Eigen::Index leave = -1;
      double most_negative = -dual_eps;
      for (Eigen::Index k = 0; k < eqp.multipliers.size(); ++k) {
        const double lam = eqp.multipliers(k);
        if (lam < most_negative ||
            (leave >= 0 && lam == most_negative &&
             working[static_cast<std::size_t>(k)] <
                 working[static_cast<std::size_t>(leave)])) {
          most_negative = lam;
          leave = k;
        }
      }
      if (leave < 0) {
        optimal = true;
        break;
      }
      in_working[static_cast<std::size_t>(working[leave])] = 0;
      working.erase(working.begin() + leave);
      at_minimizer = false;
      continue;
    }

    double alpha = 1.0;
    int blocking = -1;
    for (Eigen::Index i = 0; i < l; ++i) {
      if (in_working[static_cast<std::size_t>(i)]) continue;
      const double ap = set.A.row(i).dot(eqp.step);
      const double threshold =
          1e-14 * set.A.row(i).lpNorm<Eigen::Infinity>() * step_norm;
      if (ap <= threshold) continue;
      const double slack = std::max(0.0, set.b(i) - set.A.row(i).dot(y));
      const double ratio = slack / ap;
      if (ratio < alpha) {
        alpha = ratio;
        blocking = static_cast<int>(i);
      }
    }
    y += alpha * eqp.step;
    if (blocking >= 0) {
      working.push_back(blocking);
      in_working[static_cast<std::size_t>(blocking)] = 1;
      at_minimizer = false;
    } else {
      at_minimizer = true;
    }
  }

  if (!optimal) {
    const Eigen::VectorXd duals =
        full_duals(l, working, eqp.multipliers.size() ==
                                       static_cast<Eigen::Index>(working.size())
                                   ? eqp.multipliers
                                   : Eigen::VectorXd::Zero(working.size()));
    const KktResiduals r = kkt_residuals(problem, y, duals);
    std::ostringstream msg;
    msg << "QP iteration cap " << cap << " reached (stationarity "
        << r.stationarity << ", feasibility " << r.feasibility << ")";
    throw QpNonConvergenceError(msg.str(), y, r.stationarity, r.feasibility,
                                r.complementarity);
  }

  QpSolution sol;
  sol.point = y;
  sol.duals = full_duals(l, working, eqp.multipliers);
  KktResiduals best = kkt_residuals(problem, sol.point, sol.duals);

  const EqpStep polished = solve_eqp_absolute(problem, *factor, working);
  if (polished.step.allFinite() &&
      (polished.multipliers.size() == 0 ||
       polished.multipliers.minCoeff() >= -dual_eps)) {
    const Eigen::VectorXd duals = full_duals(l, working, polished.multipliers);
    const KktResiduals r = kkt_residuals(problem, polished.step, duals);
    if (worst(r) < worst(best)) {
      sol.point = polished.step;
      sol.duals = duals;
      best = r;
    }
  }

  sol.kkt_stationarity = best.stationarity;
  sol.kkt_feasibility = best.feasibility;
  sol.kkt_complementarity = best.complementarity;
  sol.iterations = iter;
  sol.active_set = working;
  std::sort(sol.active_set.begin(), sol.active_set.end());

  if (worst(best) > tol) {
    std::ostringstream msg;
    msg << "QP KKT residuals above tolerance " << tol << " (stationarity "
        << best.stationarity << ", feasibility " << best.feasibility
        << ", complementarity " << best.complementarity << ")";
    throw QpNonConvergenceError(msg.str(), sol.point, best.stationarity,
                                best.feasibility, best.complementarity);
  }
  return sol;
}

Eigen::VectorXd project(const Polyhedron& set, const Eigen::VectorXd& z,
                        double tol) {
  Projector projector(set, tol);
  return projector(z);
}

Eigen::VectorXd prox_step(const EquilibriumInstance& inst,
                          const Eigen::VectorXd& x, const Eigen::VectorXd& z,
                          double lambda, double tol) {
  ProxOperator prox(inst, tol);
  return prox(x, z, lambda);
}

ProxOperator::ProxOperator(const EquilibriumInstance& inst, double tol)
    : inst_(inst), tol_(tol) {}

std::shared_ptr<const HessianFactor> ProxOperator::factor_for(double lambda) {
  if (auto it = factors_.find(lambda); it != factors_.end()) return it->second;
  const Eigen::Index m = inst_.dim();
  auto factor = factorize(2.0 * lambda * inst_.Q +
                          Eigen::MatrixXd::Identity(m, m));
  if (static_cast<int>(factor_order_.size()) >= kMaxFactorCacheEntries) {
    factors_.erase(factor_order_.front());
    factor_order_.erase(factor_order_.begin());
  }
  factors_.emplace(lambda, factor);
  factor_order_.push_back(lambda);
  return factor;
}

Eigen::VectorXd ProxOperator::operator()(const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& z,
                                         double lambda) {
  if (!(lambda > 0.0)) throw ArgumentError("prox stepsize must be positive");
  if (x.size() != inst_.dim() || z.size() != inst_.dim()) {
    throw ArgumentError("prox: dimension mismatch");
  }
  const Eigen::Index m = inst_.dim();
  QpProblem qp;
  qp.H = 2.0 * lambda * inst_.Q + Eigen::MatrixXd::Identity(m, m);
  qp.c = lambda * (inst_.P * x - inst_.Q * x + inst_.q) - z;
  qp.constraints = inst_.feasible;
  qp.factor = factor_for(lambda);
  QpSolution sol = qp_solve(qp, tol_, has_warm_ ? &warm_ : nullptr);
  ++calls_;
  warm_.point = sol.point;
  warm_.active_set = std::move(sol.active_set);
  has_warm_ = true;
  return sol.point;
}

Projector::Projector(const Polyhedron& set, double tol)
    : set_(set), tol_(tol) {}

Eigen::VectorXd Projector::operator()(const Eigen::VectorXd& z) {
  if (z.size() != set_.dim()) throw ArgumentError("project: dimension mismatch");
  const Eigen::Index m = set_.dim();
  QpProblem qp;
  qp.H = Eigen::MatrixXd::Identity(m, m);
  if (!identity_factor_) identity_factor_ = factorize(qp.H);
  qp.c = -z;
  qp.constraints = set_;
  qp.factor = identity_factor_;
  QpSolution sol = qp_solve(qp, tol_, has_warm_ ? &warm_ : nullptr);
  ++calls_;
  warm_.point = sol.point;
  warm_.active_set = std::move(sol.active_set);
  has_warm_ = true;
  return sol.point;
}

}  // namespace egra
