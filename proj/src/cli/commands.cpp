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

// Subcommands generate / solve / bench / rate.
//
// Settings come from three layers: command-line flags override keys of the
// JSON file given by --config, which override built-in defaults. Config keys
// are the long flag names without dashes ("max-iter", "lambda0", ...). The
// effective settings are written to run_config.json in the output directory.

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "egra/cli.hpp"
#include "egra/error.hpp"
#include "egra/generator.hpp"
#include "egra/io.hpp"

namespace egra::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Setting {
  CLI::Option* option = nullptr;
  std::function<void(const json&)> set;
  std::function<json()> get;
  bool from_config = false;

  bool given() const { return from_config || option->count() > 0; }
};
using Registry = std::map<std::string, Setting>;

template <class T>
CLI::Option* bind_option(CLI::App* app, Registry& reg, const std::string& name,
                  T& var, const std::string& desc) {
  CLI::Option* opt = app->add_option("--" + name, var, desc);
  reg[name] = Setting{opt, [&var](const json& v) { var = v.get<T>(); },
                      [&var]() { return json(var); }};
  return opt;
}

CLI::Option* bind_flag(CLI::App* app, Registry& reg, const std::string& name,
                       bool& var, const std::string& desc) {
  CLI::Option* opt = app->add_flag("--" + name, var, desc);
  reg[name] = Setting{opt, [&var](const json& v) { var = v.get<bool>(); },
                      [&var]() { return json(var); }};
  return opt;
}

struct Globals {
  std::string config;
  std::string output;
  std::uint64_t seed = 1;
  double tol = 0.0;
  int max_iter = 0;
};

struct GenerateArgs {
  int dim = 0;
  int constraints = 10;
  bool strong = false;
  double delta = 0.1;
  std::string file;
};

struct SolveArgs {
  std::string instance;
  std::string method = "EGRA";
  double lambda0 = 1.0;
  double mu = 0.45 * 1.6180339887498949;
  double qp_tol = kDefaultQpTol;
  double d_lambda = 1.0;
  double eta = 0.5;
  double alpha = 0.5;
  bool ergm_at_iterate = false;
  std::string trace;
};

struct BenchArgs {
  std::vector<int> dims{100, 200, 300};
  std::vector<std::string> methods{"EGRA", "LEGM", "ErgM"};
  std::vector<double> lambda0{0.1, 1.0, 10.0};
  std::vector<std::uint64_t> seeds{1};
  int constraints = 10;
  bool strong = false;
  double delta = 0.1;
  double mu = 0.45 * 1.6180339887498949;
  double qp_tol = kDefaultQpTol;
  int jobs = 1;
};

struct RateArgs {
  std::string instance;
  double lambda0 = 1.0;
  double mu = 0.45 * 1.6180339887498949;
  double delta = 0.1;
  double ref_tol = 1e-12;
  double qp_tol = kDefaultQpTol;
};

void apply_config(const std::string& path, Registry& globals, Registry& local,
                  std::ostream& err) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ArgumentError("cannot parse config '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw ArgumentError("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    Setting* s = nullptr;
    if (auto it = local.find(key); it != local.end()) {
      s = &it->second;
    } else if (auto g = globals.find(key); g != globals.end()) {
      s = &g->second;
    }
    if (s == nullptr) {
      err << "warning: config key '" << key << "' does not apply; ignored\n";
      continue;
    }
    if (s->option->count() > 0) continue;
    try {
      s->set(value);
    } catch (const json::exception& e) {
      throw ArgumentError("config key '" + key + "': " + e.what());
    }
    s->from_config = true;
  }
}

void write_run_config(const fs::path& dir, const std::string& command,
                      const Registry& globals, const Registry& local) {
  json settings = json::object();
  for (const auto& [name, s] : globals) {
    if (name != "config") settings[name] = s.get();
  }
  for (const auto& [name, s] : local) settings[name] = s.get();
  json doc;
  doc["command"] = command;
  doc["settings"] = settings;
  write_text_file(dir / "run_config.json", doc.dump(2) + "\n");
}

fs::path ensure_dir(const std::string& dir) {
  const fs::path p = dir.empty() ? fs::path(".") : fs::path(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw IoError("cannot create directory '" + p.string() + "'");
  return p;
}

int cmd_generate(const Globals& g, const GenerateArgs& a, std::ostream& out) {
  GeneratorSpec spec;
  spec.dim = a.dim;
  spec.constraint_count = a.constraints;
  spec.seed = g.seed;
  spec.strongly_monotone = a.strong;
  spec.strong_gap = a.delta;
  spec.validate();

  const EquilibriumInstance inst = generate(spec);
  const SpectralSummary summary = validate_instance(inst);
  const LipschitzConstants lc = lipschitz_constants(inst);
  const LipschitzCertificate cert = certify_lipschitz(inst, lc, 1000, g.seed);

  const fs::path dir = ensure_dir(g.output);
  const fs::path path =
      a.file.empty() ? dir / ("instance_m" + std::to_string(a.dim) + "_s" +
                              std::to_string(g.seed) + ".json")
                     : fs::path(a.file);
  if (path.has_parent_path()) ensure_dir(path.parent_path().string());
  save_instance(path, inst, spec);

  out << path.string() << '\n'
      << "eig(Q) in [" << format_double(summary.q_min_eigenvalue) << ", "
      << format_double(summary.q_max_eigenvalue) << "]\n"
      << "eig(Q-P) in [" << format_double(summary.q_minus_p_min_eigenvalue)
      << ", " << format_double(summary.q_minus_p_max_eigenvalue) << "]\n"
      << "c1=c2=" << format_double(lc.c1) << " (sampled certificate: "
      << (cert.passed() ? "pass" : "FAIL") << ", " << cert.triples_tested
      << " triples)\n"
      << "validators: pass\n";
  return kExitOk;
}

SolverConfig solver_config(const Globals& g, const SolveArgs& a) {
  SolverConfig cfg;
  cfg.method = parse_method(a.method);
  cfg.lambda0 = a.lambda0;
  cfg.mu = a.mu;
  cfg.tol = g.tol;
  cfg.max_iter = g.max_iter;
  cfg.qp_tol = a.qp_tol;
  cfg.d_metric_lambda = a.d_lambda;
  cfg.seed = g.seed;
  cfg.linesearch_eta = a.eta;
  cfg.linesearch_alpha = a.alpha;
  cfg.ergm_report_at_iterate = a.ergm_at_iterate;
  cfg.validate();
  return cfg;
}

void print_summary(const SolverConfig& cfg, const SolverTrace& trace,
                   std::optional<double> certificate, std::ostream& out) {
  const TraceRecord& last = trace.records.back();
  out << "method=" << to_string(cfg.method)
      << " status=" << to_string(trace.status) << " iterations=" << last.n
      << " final_D_n=" << format_double(last.d_n)
      << " elapsed_seconds=" << format_double(last.elapsed_seconds)
      << " prox_calls=" << last.prox_calls
      << " diagnostic_prox_calls=" << last.diagnostic_prox_calls
      << " f_evals=" << last.f_evals;
  if (certificate) out << " certificate=" << format_double(*certificate);
  out << '\n';
}

int cmd_solve(const Globals& g, const SolveArgs& a, std::ostream& out,
              std::ostream& err) {
  const SolverConfig cfg = solver_config(g, a);
  const EquilibriumInstance inst = load_instance(a.instance);
  validate_instance(inst);

  const fs::path dir = ensure_dir(g.output);
  const fs::path trace_path =
      a.trace.empty() ? dir / ("trace_" + to_string(cfg.method) + ".csv")
                      : fs::path(a.trace);
  SolverTrace trace;
  try {
    trace = solve(inst, cfg);
  } catch (const SolverError& e) {
    if (!e.partial_trace().records.empty()) {
      write_trace_csv(trace_path, e.partial_trace());
    }
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  if (trace.start_projected) err << "note: " << trace.note << '\n';
  write_trace_csv(trace_path, trace);
  const double certificate =
      solution_certificate(inst, trace.final_point, 1e-6);
  out << trace_path.string() << '\n';
  print_summary(cfg, trace, certificate, out);
  return kExitOk;
}

int cmd_bench(const Globals& g, const BenchArgs& a, std::ostream& out) {
  BenchPlan plan;
  plan.dims = a.dims;
  plan.methods.clear();
  for (const auto& m : a.methods) plan.methods.push_back(parse_method(m));
  plan.lambda0_sweep = a.lambda0;
  plan.seeds = a.seeds;
  plan.tol = g.tol;
  plan.max_iter = g.max_iter;
  plan.constraint_count = a.constraints;
  plan.strongly_monotone = a.strong;
  plan.strong_gap = a.delta;
  plan.mu = a.mu;
  plan.qp_tol = a.qp_tol;
  plan.jobs = a.jobs;
  plan.output_dir = g.output.empty() ? fs::path("bench_out") : fs::path(g.output);
  const auto rows = run_bench(plan, out);
  out << "wrote " << rows.size() << " runs to "
      << (plan.output_dir / "summary.csv").string() << '\n';
  return kExitOk;
}

int cmd_rate(const Globals& g, const RateArgs& a, std::ostream& out,
             std::ostream& err) {
  const EquilibriumInstance inst = load_instance(a.instance);
  validate_instance(inst);
  SolverConfig cfg;
  cfg.lambda0 = a.lambda0;
  cfg.mu = a.mu;
  cfg.tol = g.tol;
  cfg.max_iter = g.max_iter;
  cfg.qp_tol = a.qp_tol;
  cfg.seed = g.seed;
  cfg.validate();
  if (!(a.ref_tol > 0.0)) throw ArgumentError("ref-tol must be positive");

  RateReport report;
  try {
    report = compute_rate_report(inst, cfg, a.ref_tol, a.delta);
  } catch (const InsufficientDataError& e) {
    err << "insufficient data: " << e.what() << '\n';
    return kExitValidation;
  }
  if (!report.strongly_monotone) {
    err << "warning: instance is not strongly monotone with modulus "
        << format_double(a.delta) << " (smallest eigenvalue of P-Q is "
        << format_double(report.min_eigenvalue_p_minus_q) << ")\n";
  }
  out << "reference_iterations=" << report.reference_iterations
      << " working_iterations=" << report.working_iterations << '\n';
  print_rate_report(report, out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Equilibrium problem solvers: EGRA and baselines"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  Registry globals;
  app.add_option("--config", g.config, "JSON file with default settings");
  globals["config"] = Setting{app.get_option("--config"), [](const json&) {},
                              [&g]() { return json(g.config); }};
  bind_option(&app, globals, "output", g.output, "Output directory");
  bind_option(&app, globals, "seed", g.seed, "Random seed");
  bind_option(&app, globals, "tol", g.tol, "Stopping tolerance on D_n")
      ->check(CLI::PositiveNumber);
  bind_option(&app, globals, "max-iter", g.max_iter, "Maximum trace rows")
      ->check(CLI::PositiveNumber);

  std::map<std::string, Registry> locals;

  GenerateArgs gen;
  CLI::App* generate_cmd = app.add_subcommand("generate", "Generate an instance");
  {
    Registry& r = locals["generate"];
    bind_option(generate_cmd, r, "dim", gen.dim, "Dimension m")
        ->check(CLI::PositiveNumber);
    bind_option(generate_cmd, r, "constraints", gen.constraints, "Rows l of A")
        ->check(CLI::PositiveNumber);
    bind_flag(generate_cmd, r, "strong", gen.strong,
              "Strongly monotone variant");
    bind_option(generate_cmd, r, "delta", gen.delta, "Strong monotonicity gap");
    bind_option(generate_cmd, r, "file", gen.file, "Output file path");
  }

  SolveArgs sol;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one instance");
  {
    Registry& r = locals["solve"];
    bind_option(solve_cmd, r, "instance", sol.instance, "Instance JSON file");
    bind_option(solve_cmd, r, "method", sol.method, "EGRA, LEGM or ErgM");
    bind_option(solve_cmd, r, "lambda0", sol.lambda0, "Initial / fixed stepsize");
    bind_option(solve_cmd, r, "mu", sol.mu, "EGRA parameter in (0, phi/2)");
    bind_option(solve_cmd, r, "qp-tol", sol.qp_tol, "Subproblem KKT tolerance");
    bind_option(solve_cmd, r, "d-lambda", sol.d_lambda, "Stepsize of the D_n metric");
    bind_option(solve_cmd, r, "eta", sol.eta, "LEGM backtracking factor");
    bind_option(solve_cmd, r, "alpha", sol.alpha, "LEGM Armijo parameter");
    bind_flag(solve_cmd, r, "ergm-at-iterate", sol.ergm_at_iterate,
              "ErgM: report D_n at x_n instead of the average");
    bind_option(solve_cmd, r, "trace", sol.trace, "Trace CSV path");
  }

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Benchmark sweep");
  {
    Registry& r = locals["bench"];
    bind_option(bench_cmd, r, "dims", bench.dims, "Dimensions");
    bind_option(bench_cmd, r, "methods", bench.methods, "Methods");
    bind_option(bench_cmd, r, "lambda0", bench.lambda0, "lambda0 sweep");
    bind_option(bench_cmd, r, "seeds", bench.seeds, "Instance seeds");
    bind_option(bench_cmd, r, "constraints", bench.constraints, "Rows l of A");
    bind_flag(bench_cmd, r, "strong", bench.strong,
              "Strongly monotone instances");
    bind_option(bench_cmd, r, "delta", bench.delta, "Strong monotonicity gap");
    bind_option(bench_cmd, r, "mu", bench.mu, "EGRA parameter");
    bind_option(bench_cmd, r, "qp-tol", bench.qp_tol, "Subproblem KKT tolerance");
    bind_option(bench_cmd, r, "jobs", bench.jobs, "Parallel runs");
  }

  RateArgs rate;
  CLI::App* rate_cmd = app.add_subcommand("rate", "Empirical convergence rate");
  {
    Registry& r = locals["rate"];
    bind_option(rate_cmd, r, "instance", rate.instance, "Instance JSON file");
    bind_option(rate_cmd, r, "lambda0", rate.lambda0, "Initial stepsize");
    bind_option(rate_cmd, r, "mu", rate.mu, "EGRA parameter");
    bind_option(rate_cmd, r, "delta", rate.delta, "Expected modulus of P-Q");
    bind_option(rate_cmd, r, "ref-tol", rate.ref_tol, "Reference run tolerance");
    bind_option(rate_cmd, r, "qp-tol", rate.qp_tol, "Subproblem KKT tolerance");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  const std::string name = active->get_name();
  Registry& local = locals[name];

  try {
    if (!g.config.empty()) apply_config(g.config, globals, local, err);
    if (!globals["tol"].given()) g.tol = name == "rate" ? 1e-10 : 1e-6;
    if (!globals["max-iter"].given()) g.max_iter = name == "rate" ? 20000 : 5000;
    if (!(g.tol > 0.0)) throw ArgumentError("tol must be positive");
    if (g.max_iter < 1) throw ArgumentError("max-iter must be >= 1");

    if (name == "generate") {
      if (!local["dim"].given()) throw ArgumentError("generate: --dim is required");
      if (gen.dim < 1) throw ArgumentError("generate: --dim must be >= 1");
      const int rc = cmd_generate(g, gen, out);
      write_run_config(ensure_dir(g.output), name, globals, local);
      return rc;
    }
    if (name == "solve") {
      if (sol.instance.empty()) throw ArgumentError("solve: --instance is required");
      const fs::path dir = ensure_dir(g.output);
      write_run_config(dir, name, globals, local);
      return cmd_solve(g, sol, out, err);
    }
    if (name == "bench") {
      if (g.output.empty()) g.output = "bench_out";
      const fs::path dir = ensure_dir(g.output);
      write_run_config(dir, name, globals, local);
      return cmd_bench(g, bench, out);
    }
    if (rate.instance.empty()) throw ArgumentError("rate: --instance is required");
    write_run_config(ensure_dir(g.output), name, globals, local);
    return cmd_rate(g, rate, out, err);
  } catch (const ArgumentError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace egra::cli
