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

// The explicit golden ratio algorithm (EGRA) and two baselines, the
// linesearch extragradient method (LEGM) and the ergodic method (ErgM),
// behind one configuration and trace type.
//
// EGRA iteration, given x_{n-1}, x_n, xbar_{n-1} and lambda_n:
//
//   xbar_n      = ((phi - 1) x_n + xbar_{n-1}) / phi
//   x_{n+1}     = prox_{lambda_n f(x_n, .)}(xbar_n)
//   lambda_{n+1} = min{lambda_n,
//                      mu (|x_{n-1}-x_n|^2 + |x_n-x_{n+1}|^2) /
//                      (2 [f(x_{n-1},x_{n+1}) - f(x_{n-1},x_n)
//                          - f(x_n,x_{n+1})]_+)}
//
// with 0/0 read as +infinity. No Lipschitz constant is needed.

#ifndef EGRA_SOLVERS_HPP_
#define EGRA_SOLVERS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "egra/error.hpp"
#include "egra/problem.hpp"
#include "egra/qp.hpp"

namespace egra {

enum class Method { kEgra, kLegm, kErgm };
enum class TerminalStatus { kConverged, kMaxIter, kStalled };

std::string to_string(Method method);
std::string to_string(TerminalStatus status);
// Accepts "EGRA", "LEGM", "ErgM" (case-insensitive). Throws ArgumentError.
Method parse_method(std::string_view name);

// (1 + sqrt 5) / 2.
double golden_ratio();

struct SolverConfig {
  Method method = Method::kEgra;
  double lambda0 = 1.0;
  double mu = 0.45 * 1.6180339887498949;
  double tol = 1e-6;
  // Maximum number of trace rows (iterates x_0, x_1, ...).
  int max_iter = 5000;
  double qp_tol = kDefaultQpTol;
  // Fixed stepsize of the D_n diagnostic.
  double d_metric_lambda = 1.0;
  std::uint64_t seed = 0;
  double linesearch_eta = 0.5;
  double linesearch_alpha = 0.5;
  // ErgM reports D_n at x_n instead of the ergodic average.
  bool ergm_report_at_iterate = false;
  // Defaults to (1, ..., 1).
  std::optional<Eigen::VectorXd> start;
  // Retain x_n (and xbar_n for EGRA) in the trace.
  bool keep_iterates = false;

  // Throws ArgumentError on out-of-range fields.
  void validate() const;
};

struct EgraState {
  Eigen::VectorXd x_prev;     // x_{n-1}
  Eigen::VectorXd x_curr;     // x_n
  Eigen::VectorXd xbar_prev;  // xbar_{n-1}
  double lambda_prev = 0.0;   // lambda_{n-1}
  double lambda_curr = 0.0;   // lambda_n
  int n = 0;
};

struct TraceRecord {
  int n = 0;
  double d_n = 0.0;
  double lambda_n = 0.0;
  double elapsed_seconds = 0.0;
  long prox_calls = 0;  // prox and projection subproblems, cumulative
  long f_evals = 0;     // bifunction value/gradient evaluations, cumulative
  long diagnostic_prox_calls = 0;  // D_n evaluations, cumulative
};

struct SolverTrace {
  Method method = Method::kEgra;
  std::vector<TraceRecord> records;
  TerminalStatus status = TerminalStatus::kMaxIter;
  Eigen::VectorXd final_point;
  bool start_projected = false;
  std::string note;
  // Filled when SolverConfig::keep_iterates is set. iterates[n] = x_n;
  // for EGRA averages[n] = xbar_n (one fewer than iterates).
  std::vector<Eigen::VectorXd> iterates;
  std::vector<Eigen::VectorXd> averages;
};

// A subproblem failed mid-run. Carries the trace up to the failure.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, int iteration, SolverTrace partial)
      : Error(what), iteration_(iteration), partial_(std::move(partial)) {}
  int iteration() const { return iteration_; }
  const SolverTrace& partial_trace() const { return partial_; }

 private:
  int iteration_;
  SolverTrace partial_;
};

// x_{-1} = x_0 = xbar_{-1} = start, lambda_{-1} = lambda_0.
EgraState egra_init(const Eigen::VectorXd& start, double lambda0);

// Stepsize rule; denominators <= 0 keep lambda_n.
double stepsize_update(double lambda_n, double mu,
                       const Eigen::VectorXd& x_prev,
                       const Eigen::VectorXd& x_curr,
                       const Eigen::VectorXd& x_next, double f_xy,
                       double f_xz, double f_yz);

struct EgraStep {
  EgraState state;         // advanced to n + 1
  Eigen::VectorXd x_next;  // x_{n+1}
  Eigen::VectorXd xbar;    // xbar_n
};

EgraStep egra_step(const EquilibriumInstance& inst, const SolverConfig& cfg,
                   const EgraState& state, ProxOperator& prox);
EgraStep egra_step(const EquilibriumInstance& inst, const SolverConfig& cfg,
                   const EgraState& state);

SolverTrace egra_solve(const EquilibriumInstance& inst,
                       const SolverConfig& cfg);
SolverTrace legm_solve(const EquilibriumInstance& inst,
                       const SolverConfig& cfg);
SolverTrace ergm_solve(const EquilibriumInstance& inst,
                       const SolverConfig& cfg);
// Dispatches on cfg.method.
SolverTrace solve(const EquilibriumInstance& inst, const SolverConfig& cfg);

// D(x) = |x - prox_{lambda f(x,.)}(x)|^2.
double residual_D(const EquilibriumInstance& inst, const Eigen::VectorXd& x,
                  double lambda, double qp_tol = kDefaultQpTol);

// min_{y in C} f(x, y); a value >= -tol certifies x as an approximate
// solution. x must be feasible within tol.
double solution_certificate(const EquilibriumInstance& inst,
                            const Eigen::VectorXd& x, double tol);

struct RateEstimate {
  double q_estimate = 0.0;
  double r_estimate = 0.0;
  double r_squared = 0.0;  // of the log-error line fit
  int points_used = 0;
};

// Fits the last `window` usable errors |x_n - x_ref| > 1e-12. Throws
// InsufficientDataError with fewer than 5 usable points.
RateEstimate rate_fit(const std::vector<Eigen::VectorXd>& iterates,
                      const Eigen::VectorXd& x_ref, int window = 50);

// a_n = phi/(phi-1) |xbar_n - x*|^2 + mu lambda_n / lambda_{n+1}
//       |x_{n-1} - x_n|^2 for an EGRA trace run with keep_iterates.
std::vector<double> lyapunov_sequence(const SolverTrace& trace,
                                      const Eigen::VectorXd& x_star,
                                      double mu);

}  // namespace egra

#endif  // EGRA_SOLVERS_HPP_
