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

#include <ostream>

#include "egra/cli.hpp"
#include "egra/io.hpp"

namespace egra::cli {

RateReport rate_report_from_iterates(
    const std::vector<Eigen::VectorXd>& iterates,
    const Eigen::VectorXd& x_ref) {
  RateReport report;
  report.estimate = rate_fit(iterates, x_ref);
  report.r_linear = report.estimate.r_estimate <= kRLinearThreshold;
  report.working_iterations = static_cast<int>(iterates.size());
  return report;
}

RateReport compute_rate_report(const EquilibriumInstance& inst,
                               const SolverConfig& cfg, double ref_tol,
                               double strong_gap) {
  SolverConfig ref_cfg = cfg;
  ref_cfg.method = Method::kEgra;
  ref_cfg.tol = ref_tol;
  ref_cfg.keep_iterates = false;
  const SolverTrace reference = egra_solve(inst, ref_cfg);

  SolverConfig work_cfg = cfg;
  work_cfg.method = Method::kEgra;
  work_cfg.keep_iterates = true;
  const SolverTrace working = egra_solve(inst, work_cfg);

  RateReport report = rate_report_from_iterates(working.iterates,
                                                reference.final_point);
  report.min_eigenvalue_p_minus_q = symmetric_eigen_range(inst.P - inst.Q).min;
  report.strongly_monotone = report.min_eigenvalue_p_minus_q >= strong_gap;
  report.reference_iterations = reference.records.back().n;
  report.working_iterations = working.records.back().n;
  return report;
}

void print_rate_report(const RateReport& report, std::ostream& out) {
  out << "q_estimate=" << format_double(report.estimate.q_estimate)
      << " r_estimate=" << format_double(report.estimate.r_estimate)
      << " r_squared=" << format_double(report.estimate.r_squared)
      << " points=" << report.estimate.points_used << '\n'
      << "R-linear: " << (report.r_linear ? "yes" : "no") << '\n';
}

}  // namespace egra::cli
