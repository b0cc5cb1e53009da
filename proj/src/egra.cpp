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

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <sstream>
#include <string>

#include "egra/solvers.hpp"
#include "solver_common.hpp"

namespace egra {

double golden_ratio() { return 0.5 * (1.0 + std::sqrt(5.0)); }

std::string to_string(Method method) {
  switch (method) {
    case Method::kEgra:
      return "EGRA";
    case Method::kLegm:
      return "LEGM";
    case Method::kErgm:
      return "ErgM";
  }
  return "unknown";
}

std::string to_string(TerminalStatus status) {
  switch (status) {
    case TerminalStatus::kConverged:
      return "converged";
    case TerminalStatus::kMaxIter:
      return "max_iter";
    case TerminalStatus::kStalled:
      return "stalled";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "egra") return Method::kEgra;
  if (lower == "legm") return Method::kLegm;
  if (lower == "ergm") return Method::kErgm;
  throw ArgumentError("unknown method '" + std::string(name) +
                      "' (expected EGRA, LEGM or ErgM)");
}

void SolverConfig::validate() const {
  if (!(lambda0 > 0.0)) throw ArgumentError("lambda0 must be positive");
  if (!(tol > 0.0)) throw ArgumentError("tol must be positive");
  if (max_iter < 1) throw ArgumentError("max_iter must be >= 1");
  if (!(qp_tol > 0.0 && qp_tol <= 1e-2)) {
    throw ArgumentError("qp_tol must lie in (0, 1e-2]");
  }
  if (!(d_metric_lambda > 0.0)) {
    throw ArgumentError("d_metric_lambda must be positive");
  }
  if (method == Method::kEgra && !(mu > 0.0 && mu < 0.5 * golden_ratio())) {
    throw ArgumentError("mu must lie in (0, phi/2) for EGRA");
  }
  if (method == Method::kLegm) {
    if (!(linesearch_eta > 0.0 && linesearch_eta < 1.0)) {
      throw ArgumentError("linesearch_eta must lie in (0, 1)");
    }
    if (!(linesearch_alpha > 0.0 && linesearch_alpha < 1.0)) {
      throw ArgumentError("linesearch_alpha must lie in (0, 1)");
    }
  }
}

namespace detail {

RunClock::RunClock() : start_(std::chrono::steady_clock::now()) {}

double RunClock::elapsed() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start_)
      .count();
}

Eigen::VectorXd starting_point(const EquilibriumInstance& inst,
                               const SolverConfig& cfg, SolverTrace& trace) {
  Eigen::VectorXd x0 =
      cfg.start ? *cfg.start : Eigen::VectorXd::Ones(inst.dim());
  if (x0.size() != inst.dim()) {
    throw ArgumentError("starting point has wrong dimension");
  }
  if (inst.feasible.max_violation(x0) > cfg.qp_tol) {
    std::ostringstream note;
    note << "starting point infeasible by "
         << inst.feasible.max_violation(x0) << "; projected onto C";
    x0 = project(inst.feasible, x0, cfg.qp_tol);
    trace.start_projected = true;
    trace.note = note.str();
  }
  return x0;
}

}  // namespace detail

double residual_D(const EquilibriumInstance& inst, const Eigen::VectorXd& x,
                  double lambda, double qp_tol) {
  if (!(lambda > 0.0)) throw ArgumentError("lambda must be positive");
  return (x - prox_step(inst, x, x, lambda, qp_tol)).squaredNorm();
}

double solution_certificate(const EquilibriumInstance& inst,
                            const Eigen::VectorXd& x, double tol) {
  if (x.size() != inst.dim()) throw ArgumentError("dimension mismatch");
  if (inst.feasible.max_violation(x) > tol) {
    throw ArgumentError("solution_certificate: point is infeasible");
  }
  const Eigen::Index m = inst.dim();
  // f(x, y) = y^T Q y + (P x - Q x + q)^T y - (P x + q)^T x.
  QpProblem qp;
  qp.H = 2.0 * inst.Q + 1e-10 * Eigen::MatrixXd::Identity(m, m);
  qp.c = inst.P * x - inst.Q * x + inst.q;
  qp.constraints = inst.feasible;
  QpWarmStart warm{x, {}};
  const QpSolution sol = qp_solve(qp, kDefaultQpTol, &warm);
  return bifunction_eval(inst, x, sol.point);
}

EgraState egra_init(const Eigen::VectorXd& start, double lambda0) {
  EgraState s;
  s.x_prev = start;
  s.x_curr = start;
  s.xbar_prev = start;
  s.lambda_prev = lambda0;
  s.lambda_curr = lambda0;
  s.n = 0;
  return s;
}

double stepsize_update(double lambda_n, double mu,
                       const Eigen::VectorXd& x_prev,
                       const Eigen::VectorXd& x_curr,
                       const Eigen::VectorXd& x_next, double f_xy,
                       double f_xz, double f_yz) {
  const double denom = 2.0 * std::max(0.0, f_xy - f_xz - f_yz);
  if (denom <= 0.0) return lambda_n;
  const double numer = mu * ((x_prev - x_curr).squaredNorm() +
                             (x_curr - x_next).squaredNorm());
  return std::min(lambda_n, numer / denom);
}

EgraStep egra_step(const EquilibriumInstance& inst, const SolverConfig& cfg,
                   const EgraState& s, ProxOperator& prox) {
  const double phi = golden_ratio();
  EgraStep out;
  out.xbar = ((phi - 1.0) * s.x_curr + s.xbar_prev) / phi;
  out.x_next = prox(s.x_curr, out.xbar, s.lambda_curr);
  const double f_xy = bifunction_eval(inst, s.x_prev, out.x_next);
  const double f_xz = bifunction_eval(inst, s.x_prev, s.x_curr);
  const double f_yz = bifunction_eval(inst, s.x_curr, out.x_next);
  const double lambda_next = stepsize_update(
      s.lambda_curr, cfg.mu, s.x_prev, s.x_curr, out.x_next, f_xy, f_xz, f_yz);

  out.state.x_prev = s.x_curr;
  out.state.x_curr = out.x_next;
  out.state.xbar_prev = out.xbar;
  out.state.lambda_prev = s.lambda_curr;
  out.state.lambda_curr = lambda_next;
  out.state.n = s.n + 1;
  return out;
}

EgraStep egra_step(const EquilibriumInstance& inst, const SolverConfig& cfg,
                   const EgraState& state) {
  ProxOperator prox(inst, cfg.qp_tol);
  return egra_step(inst, cfg, state, prox);
}

SolverTrace egra_solve(const EquilibriumInstance& inst,
                       const SolverConfig& cfg) {
  if (cfg.method != Method::kEgra) {
    throw ArgumentError("egra_solve called with a non-EGRA configuration");
  }
  cfg.validate();
  detail::RunClock clock;
  SolverTrace trace;
  trace.method = Method::kEgra;

  ProxOperator prox(inst, cfg.qp_tol);
  ProxOperator diagnostic(inst, cfg.qp_tol);
  EgraState state =
      egra_init(detail::starting_point(inst, cfg, trace), cfg.lambda0);
  long f_evals = 0;

  auto record = [&](const Eigen::VectorXd& x, double lambda) {
    TraceRecord r;
    r.n = static_cast<int>(trace.records.size());
    r.d_n = (x - diagnostic(x, x, cfg.d_metric_lambda)).squaredNorm();
    r.lambda_n = lambda;
    r.prox_calls = prox.calls();
    r.f_evals = f_evals;
    r.diagnostic_prox_calls = diagnostic.calls();
    r.elapsed_seconds = clock.elapsed();
    trace.records.push_back(r);
    if (cfg.keep_iterates) trace.iterates.push_back(x);
  };

  try {
    record(state.x_curr, state.lambda_curr);
    while (true) {
      if (trace.records.back().d_n <= cfg.tol) {
        trace.status = TerminalStatus::kConverged;
        break;
      }
      if (static_cast<int>(trace.records.size()) >= cfg.max_iter) {
        trace.status = TerminalStatus::kMaxIter;
        break;
      }
      EgraStep step = egra_step(inst, cfg, state, prox);
      f_evals += 3;
      if (cfg.keep_iterates) trace.averages.push_back(step.xbar);
      state = std::move(step.state);
      record(state.x_curr, state.lambda_curr);
    }
  } catch (const Error& e) {
    trace.final_point = state.x_curr;
    std::ostringstream msg;
    msg << "EGRA subproblem failed at iteration " << state.n << ": "
        << e.what();
    throw SolverError(msg.str(), state.n, std::move(trace));
  }
  trace.final_point = state.x_curr;
  return trace;
}

SolverTrace solve(const EquilibriumInstance& inst, const SolverConfig& cfg) {
  switch (cfg.method) {
    case Method::kEgra:
      return egra_solve(inst, cfg);
    case Method::kLegm:
      return legm_solve(inst, cfg);
    case Method::kErgm:
      return ergm_solve(inst, cfg);
  }
  throw ArgumentError("unknown method");
}

std::vector<double> lyapunov_sequence(const SolverTrace& trace,
                                      const Eigen::VectorXd& x_star,
                                      double mu) {
  if (trace.method != Method::kEgra || trace.iterates.empty()) {
    throw ArgumentError("lyapunov_sequence needs an EGRA trace with iterates");
  }
  const double phi = golden_ratio();
  const double weight = phi / (phi - 1.0);
  std::vector<double> a;
  // a_n needs xbar_n and lambda_{n+1}, both produced by step n.
  for (std::size_t n = 0; n < trace.averages.size(); ++n) {
    const Eigen::VectorXd& x_curr = trace.iterates[n];
    const Eigen::VectorXd& x_prev = n == 0 ? x_curr : trace.iterates[n - 1];
    const double lambda_n = trace.records[n].lambda_n;
    const double lambda_next = trace.records[n + 1].lambda_n;
    a.push_back(weight * (trace.averages[n] - x_star).squaredNorm() +
                mu * lambda_n / lambda_next * (x_prev - x_curr).squaredNorm());
  }
  return a;
}

}  // namespace egra
