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
#include <atomic>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <thread>
#include <utility>

#include "egra/cli.hpp"
#include "egra/generator.hpp"
#include "egra/io.hpp"

namespace egra::cli {
namespace {

struct RunSpec {
  int dim;
  std::uint64_t seed;
  Method method;
  double lambda0;
  std::shared_ptr<const EquilibriumInstance> instance;
};

std::string compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string run_label(const RunSpec& r) {
  if (r.method == Method::kErgm) return to_string(r.method);
  return to_string(r.method) + " lambda0=" + compact(r.lambda0);
}

std::string trace_name(const RunSpec& r) {
  std::string name = "trace_m" + std::to_string(r.dim) + "_s" +
                     std::to_string(r.seed) + "_" + to_string(r.method);
  if (r.method != Method::kErgm) name += "_lam" + compact(r.lambda0);
  return name + ".csv";
}

BenchRow execute(const BenchPlan& plan, const RunSpec& spec,
                 SolverTrace* trace_out) {
  BenchRow row;
  row.dim = spec.dim;
  row.method = spec.method;
  row.lambda0 = spec.lambda0;
  row.seed = spec.seed;
  row.trace_file = trace_name(spec);

  SolverConfig cfg;
  cfg.method = spec.method;
  cfg.lambda0 = spec.lambda0;
  cfg.mu = plan.mu;
  cfg.tol = plan.tol;
  cfg.max_iter = plan.max_iter;
  cfg.qp_tol = plan.qp_tol;
  cfg.seed = spec.seed;

  SolverTrace trace;
  try {
    trace = solve(*spec.instance, cfg);
    row.status = to_string(trace.status);
  } catch (const SolverError& e) {
    trace = e.partial_trace();
    row.status = "failed";
    row.error = e.what();
  } catch (const std::exception& e) {
    row.status = "failed";
    row.error = e.what();
  }

  if (!trace.records.empty()) {
    const TraceRecord& last = trace.records.back();
    row.iterations = last.n;
    row.final_d = last.d_n;
    row.prox_calls = last.prox_calls;
    row.diagnostic_prox_calls = last.diagnostic_prox_calls;
    row.f_evals = last.f_evals;
    for (const auto& r : trace.records) {
      if (r.d_n <= plan.tol) {
        row.iterations_to_tol = r.n;
        row.time_to_tol = r.elapsed_seconds;
        break;
      }
    }
    try {
      write_trace_csv(plan.output_dir / row.trace_file, trace);
    } catch (const std::exception& e) {
      row.error += std::string(row.error.empty() ? "" : "; ") + e.what();
    }
  }
  if (trace_out != nullptr) *trace_out = std::move(trace);
  return row;
}

}  // namespace

void BenchPlan::validate() const {
  if (dims.empty()) throw ArgumentError("bench: dims must be nonempty");
  if (methods.empty()) throw ArgumentError("bench: methods must be nonempty");
  if (seeds.empty()) throw ArgumentError("bench: seeds must be nonempty");
  for (int d : dims) {
    if (d < 1) throw ArgumentError("bench: dims must be positive");
  }
  const bool sweeps = std::any_of(methods.begin(), methods.end(), [](Method m) {
    return m != Method::kErgm;
  });
  if (sweeps && lambda0_sweep.empty()) {
    throw ArgumentError("bench: lambda0 sweep must be nonempty");
  }
  for (double l : lambda0_sweep) {
    if (!(l > 0.0)) throw ArgumentError("bench: lambda0 values must be > 0");
  }
  if (!(tol > 0.0)) throw ArgumentError("bench: tol must be positive");
  if (max_iter < 1) throw ArgumentError("bench: max_iter must be >= 1");
  if (jobs < 1) throw ArgumentError("bench: jobs must be >= 1");

  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  const auto probe = output_dir / ".write_probe";
  try {
    write_text_file(probe, "");
  } catch (const std::exception&) {
    throw ArgumentError("bench: output directory '" + output_dir.string() +
                        "' is not writable");
  }
  std::filesystem::remove(probe, ec);
}

std::string summary_csv(const std::vector<BenchRow>& rows) {
  std::string out =
      "dim,method,lambda0,seed,status,iterations,iterations_to_tol,"
      "time_to_tol,final_D_n,prox_calls,diagnostic_prox_calls,f_evals,"
      "trace_file,error\n";
  for (const auto& r : rows) {
    std::string error = r.error;
    std::replace(error.begin(), error.end(), ',', ';');
    std::replace(error.begin(), error.end(), '\n', ' ');
    out += std::to_string(r.dim) + ',' + to_string(r.method) + ',' +
           (r.method == Method::kErgm ? std::string() : format_double(r.lambda0)) +
           ',' + std::to_string(r.seed) + ',' + r.status + ',' +
           std::to_string(r.iterations) + ',' +
           (r.iterations_to_tol ? std::to_string(*r.iterations_to_tol) : "") +
           ',' + (r.time_to_tol ? format_double(*r.time_to_tol) : "") + ',' +
           format_double(r.final_d) + ',' + std::to_string(r.prox_calls) +
           ',' + std::to_string(r.diagnostic_prox_calls) + ',' +
           std::to_string(r.f_evals) + ',' + r.trace_file + ',' + error + '\n';
  }
  return out;
}

std::vector<BenchRow> run_bench(const BenchPlan& plan, std::ostream& log) {
  plan.validate();

  std::vector<RunSpec> runs;
  for (int dim : plan.dims) {
    for (std::uint64_t seed : plan.seeds) {
      GeneratorSpec gs;
      gs.dim = dim;
      gs.constraint_count = plan.constraint_count;
      gs.seed = seed;
      gs.strongly_monotone = plan.strongly_monotone;
      gs.strong_gap = plan.strong_gap;
      auto inst = std::make_shared<const EquilibriumInstance>(generate(gs));
      for (Method method : plan.methods) {
        if (method == Method::kErgm) {
          runs.push_back({dim, seed, method, 1.0, inst});
          continue;
        }
        for (double lambda0 : plan.lambda0_sweep) {
          runs.push_back({dim, seed, method, lambda0, inst});
        }
      }
    }
  }

  std::vector<BenchRow> rows(runs.size());
  std::vector<SolverTrace> traces(runs.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&]() {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      rows[i] = execute(plan, runs[i], &traces[i]);
      std::lock_guard<std::mutex> lock(log_mutex);
      log << "m=" << rows[i].dim << " seed=" << rows[i].seed << ' '
          << run_label(runs[i]) << ": " << rows[i].status << " after "
          << rows[i].iterations << " iterations, D_n=" << rows[i].final_d
          << '\n';
    }
  };
  const int threads =
      std::min<int>(plan.jobs, static_cast<int>(std::max<std::size_t>(runs.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  write_text_file(plan.output_dir / "summary.csv", summary_csv(rows));

  // Two figures per (dim, seed).
  std::map<std::pair<int, std::uint64_t>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    groups[{runs[i].dim, runs[i].seed}].push_back(i);
  }
  for (const auto& [key, members] : groups) {
    std::vector<PlotSeries> by_iter;
    std::vector<PlotSeries> by_time;
    for (std::size_t i : members) {
      PlotSeries it{run_label(runs[i]), {}, {}};
      PlotSeries tm{run_label(runs[i]), {}, {}};
      for (const auto& r : traces[i].records) {
        it.x.push_back(r.n);
        it.y.push_back(r.d_n);
        tm.x.push_back(r.elapsed_seconds);
        tm.y.push_back(r.d_n);
      }
      by_iter.push_back(std::move(it));
      by_time.push_back(std::move(tm));
    }
    const std::string stem = "plot_m" + std::to_string(key.first) + "_s" +
                             std::to_string(key.second);
    const std::string title =
        "m = " + std::to_string(key.first) + ", seed " + std::to_string(key.second);
    write_text_file(plan.output_dir / (stem + "_iterations.svg"),
                    render_log_plot(title, "# Iterations", by_iter));
    write_text_file(plan.output_dir / (stem + "_time.svg"),
                    render_log_plot(title, "Elapsed Time [s]", by_time));
  }
  return rows;
}

}  // namespace egra::cli
