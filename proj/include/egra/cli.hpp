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

// Command-line front end: generate, solve, bench and rate.

#ifndef EGRA_CLI_HPP_
#define EGRA_CLI_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "egra/problem.hpp"
#include "egra/solvers.hpp"

namespace egra::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitValidation = 3,
  kExitInternal = 4,
};

// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

struct BenchPlan {
  std::vector<int> dims{100, 200, 300};
  std::vector<Method> methods{Method::kEgra, Method::kLegm, Method::kErgm};
  // Applies to EGRA and LEGM; ErgM runs once per instance.
  std::vector<double> lambda0_sweep{0.1, 1.0, 10.0};
  std::vector<std::uint64_t> seeds{1};
  double tol = 1e-6;
  int max_iter = 5000;
  int constraint_count = 10;
  bool strongly_monotone = false;
  double strong_gap = 0.1;
  double mu = 0.45 * 1.6180339887498949;
  double qp_tol = 1e-10;
  int jobs = 1;
  std::filesystem::path output_dir = "bench_out";

  // Throws ArgumentError; checks output_dir is writable (creating it).
  void validate() const;
};

struct BenchRow {
  int dim = 0;
  Method method = Method::kEgra;
  double lambda0 = 0.0;
  std::uint64_t seed = 0;
  std::string status;
  int iterations = 0;  // steps performed
  std::optional<int> iterations_to_tol;
  std::optional<double> time_to_tol;
  double final_d = 0.0;
  long prox_calls = 0;
  long diagnostic_prox_calls = 0;
  long f_evals = 0;
  std::string trace_file;
  std::string error;
};

// Runs the grid, writes per-run traces, summary.csv and the SVG plots into
// plan.output_dir. Individual failures are recorded, never thrown.
std::vector<BenchRow> run_bench(const BenchPlan& plan, std::ostream& log);

std::string summary_csv(const std::vector<BenchRow>& rows);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;  // plotted as log10(max(y, 1e-300))
};

// Self-contained SVG line chart with log-scale vertical axis; one
// <polyline> per series.
std::string render_log_plot(const std::string& title,
                            const std::string& x_label,
                            const std::vector<PlotSeries>& series);

struct RateReport {
  RateEstimate estimate;
  bool r_linear = false;  // r_estimate <= 0.999
  double min_eigenvalue_p_minus_q = 0.0;
  bool strongly_monotone = false;
  int reference_iterations = 0;
  int working_iterations = 0;
};

inline constexpr double kRLinearThreshold = 0.999;

// Reference solution by EGRA at ref_tol, then a working run at cfg.tol
// keeping iterates, then rate_fit.
RateReport compute_rate_report(const EquilibriumInstance& inst,
                               const SolverConfig& cfg, double ref_tol,
                               double strong_gap);

// Rate report for externally supplied iterates.
RateReport rate_report_from_iterates(
    const std::vector<Eigen::VectorXd>& iterates, const Eigen::VectorXd& x_ref);

void print_rate_report(const RateReport& report, std::ostream& out);

}  // namespace egra::cli

#endif  // EGRA_CLI_HPP_
