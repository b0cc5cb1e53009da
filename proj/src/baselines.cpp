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

// Comparison methods.
//
// LEGM (fixed prox stepsize lambda, Armijo backtracking, halfspace-type
// correction by projection):
//   y_n = prox_{lambda f(x_n,.)}(x_n); stop when |y_n - x_n| <= tol
//   smallest k >= 0 with z = (1 - eta^k) x_n + eta^k y_n satisfying
//     f(z, y_n) + alpha / (2 lambda) |x_n - y_n|^2 <= 0
//   g = grad_y f(z, x_n), sigma = f(z, x_n) / |g|^2,
//   x_{n+1} = P_C(x_n - sigma g)
//
// ErgM (diminishing steps 1/n, weighted averaging):
//   x_{n+1} = P_C(x_n - g_n / n), g_n = (P + Q) x_n + q
//   z_n = sum_k x_k / k / sum_k 1 / k

#include <cmath>
#include <sstream>

#include "egra/solvers.hpp"
#include "solver_common.hpp"

namespace egra {

namespace {
constexpr int kMaxLinesearchSteps = 60;
}  // namespace

SolverTrace legm_solve(const EquilibriumInstance& inst,
                       const SolverConfig& cfg) {
  if (cfg.method != Method::kLegm) {
    throw ArgumentError("legm_solve called with a non-LEGM configuration");
  }
  cfg.validate();
  detail::RunClock clock;
  SolverTrace trace;
  trace.method = Method::kLegm;

  const double lambda = cfg.lambda0;
  ProxOperator prox(inst, cfg.qp_tol);
  Projector projector(inst.feasible, cfg.qp_tol);
  ProxOperator diagnostic(inst, cfg.qp_tol);
  Eigen::VectorXd x = detail::starting_point(inst, cfg, trace);
  long f_evals = 0;

  auto record = [&]() {
    TraceRecord r;
    r.n = static_cast<int>(trace.records.size());
    r.d_n = (x - diagnostic(x, x, cfg.d_metric_lambda)).squaredNorm();
    r.lambda_n = lambda;
    r.prox_calls = prox.calls() + projector.calls();
    r.f_evals = f_evals;
    r.diagnostic_prox_calls = diagnostic.calls();
    r.elapsed_seconds = clock.elapsed();
    trace.records.push_back(r);
    if (cfg.keep_iterates) trace.iterates.push_back(x);
  };

  int n = 0;
  try {
    record();
    while (true) {
      if (trace.records.back().d_n <= cfg.tol) {
        trace.status = TerminalStatus::kConverged;
        break;
      }
      if (static_cast<int>(trace.records.size()) >= cfg.max_iter) {
        trace.status = TerminalStatus::kMaxIter;
        break;
      }
      const Eigen::VectorXd y = prox(x, x, lambda);
      const double gap_sq = (x - y).squaredNorm();
      if (std::sqrt(gap_sq) <= cfg.tol) {
        // x is a prox fixed point up to tol, but D_n (measured with
        // d_metric_lambda) has not reached tol.
        trace.status = TerminalStatus::kStalled;
        trace.note = "prox step vanished before D_n reached tol";
        break;
      }

      const double armijo = cfg.linesearch_alpha / (2.0 * lambda) * gap_sq;
      double t = 1.0;
      bool accepted = false;
      Eigen::VectorXd z;
      for (int k = 0; k <= kMaxLinesearchSteps; ++k) {
        z = (1.0 - t) * x + t * y;
        ++f_evals;
        if (bifunction_eval(inst, z, y) + armijo <= 0.0) {
          accepted = true;
          break;
        }
        t *= cfg.linesearch_eta;
      }
      if (!accepted) {
        trace.status = TerminalStatus::kStalled;
        trace.note = "Armijo linesearch did not terminate";
        break;
      }

      const Eigen::VectorXd g = bifunction_grad_y(inst, z, x);
      ++f_evals;
      const double g_sq = g.squaredNorm();
      if (g_sq > 0.0) {
        const double sigma = bifunction_eval(inst, z, x) / g_sq;
        ++f_evals;
        x = projector(x - sigma * g);
      }
      ++n;
      record();
    }
  } catch (const Error& e) {
    trace.final_point = x;
    std::ostringstream msg;
    msg << "LEGM subproblem failed at iteration " << n << ": " << e.what();
    throw SolverError(msg.str(), n, std::move(trace));
  }
  trace.final_point = x;
  return trace;
}

SolverTrace ergm_solve(const EquilibriumInstance& inst,
                       const SolverConfig& cfg) {
  if (cfg.method != Method::kErgm) {
    throw ArgumentError("ergm_solve called with a non-ErgM configuration");
  }
  cfg.validate();
  detail::RunClock clock;
  SolverTrace trace;
  trace.method = Method::kErgm;

  Projector projector(inst.feasible, cfg.qp_tol);
  ProxOperator diagnostic(inst, cfg.qp_tol);
  Eigen::VectorXd x = detail::starting_point(inst, cfg, trace);
  Eigen::VectorXd average = x;
  double weight_sum = 1.0;
  long f_evals = 0;
  // Method index; the first iterate is x_1.
  int n = 1;

  auto record = [&]() {
    const Eigen::VectorXd& at = cfg.ergm_report_at_iterate ? x : average;
    TraceRecord r;
    r.n = static_cast<int>(trace.records.size());
    r.d_n = (at - diagnostic(at, at, cfg.d_metric_lambda)).squaredNorm();
    r.lambda_n = 1.0 / n;
    r.prox_calls = projector.calls();
    r.f_evals = f_evals;
    r.diagnostic_prox_calls = diagnostic.calls();
    r.elapsed_seconds = clock.elapsed();
    trace.records.push_back(r);
    if (cfg.keep_iterates) {
      trace.iterates.push_back(x);
      trace.averages.push_back(average);
    }
  };

  try {
    record();
    while (true) {
      if (trace.records.back().d_n <= cfg.tol) {
        trace.status = TerminalStatus::kConverged;
        break;
      }
      if (static_cast<int>(trace.records.size()) >= cfg.max_iter) {
        trace.status = TerminalStatus::kMaxIter;
        break;
      }
      const Eigen::VectorXd g = bifunction_grad_y(inst, x, x);
      ++f_evals;
      x = projector(x - g / static_cast<double>(n));
      ++n;
      const double w = 1.0 / n;
      average += (w / (weight_sum + w)) * (x - average);
      weight_sum += w;
      record();
    }
  } catch (const Error& e) {
    trace.final_point = cfg.ergm_report_at_iterate ? x : average;
    std::ostringstream msg;
    msg << "ErgM subproblem failed at iteration " << n << ": " << e.what();
    throw SolverError(msg.str(), n, std::move(trace));
  }
  trace.final_point = cfg.ergm_report_at_iterate ? x : average;
  return trace;
}

}  // namespace egra
