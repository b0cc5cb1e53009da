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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "egra/error.hpp"
#include "egra/generator.hpp"
#include "egra/io.hpp"
#include "egra/problem.hpp"
#include "egra/qp.hpp"
#include "egra/solvers.hpp"

namespace py = pybind11;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

py::dict trace_to_dict(const egra::SolverTrace& trace) {
  const std::size_t rows = trace.records.size();
  std::vector<int> n(rows);
  std::vector<double> d(rows), lambda(rows), elapsed(rows);
  std::vector<long> prox(rows), fevals(rows), diag(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& r = trace.records[i];
    n[i] = r.n;
    d[i] = r.d_n;
    lambda[i] = r.lambda_n;
    elapsed[i] = r.elapsed_seconds;
    prox[i] = r.prox_calls;
    fevals[i] = r.f_evals;
    diag[i] = r.diagnostic_prox_calls;
  }
  py::dict out;
  out["method"] = egra::to_string(trace.method);
  out["status"] = egra::to_string(trace.status);
  out["n"] = n;
  out["D_n"] = d;
  out["lambda_n"] = lambda;
  out["elapsed_seconds"] = elapsed;
  out["prox_calls"] = prox;
  out["f_evals"] = fevals;
  out["diagnostic_prox_calls"] = diag;
  out["final_point"] = trace.final_point;
  out["start_projected"] = trace.start_projected;
  out["note"] = trace.note;
  out["iterates"] = trace.iterates;
  out["averages"] = trace.averages;
  return out;
}

}  // namespace

PYBIND11_MODULE(_egra, m) {
  m.doc() = "Golden ratio and extragradient solvers for quadratic equilibrium problems.";

  auto base = py::register_exception<egra::Error>(m, "Error");
  py::register_exception<egra::ArgumentError>(m, "ArgumentError", base);
  py::register_exception<egra::ValidationError>(m, "ValidationError", base);
  py::register_exception<egra::SamplingError>(m, "SamplingError", base);
  py::register_exception<egra::ModelError>(m, "ModelError", base);
  py::register_exception<egra::IoError>(m, "IoError", base);
  py::register_exception<egra::InsufficientDataError>(
      m, "InsufficientDataError", base);
  py::register_exception<egra::QpInfeasibleError>(m, "QpInfeasibleError", base);

  py::class_<egra::Polyhedron>(m, "Polyhedron")
      .def(py::init([](MatrixXd A, VectorXd b, VectorXd interior) {
             egra::Polyhedron p{std::move(A), std::move(b), std::move(interior)};
             p.validate();
             return p;
           }),
           py::arg("A"), py::arg("b"), py::arg("interior_point"))
      .def_readwrite("A", &egra::Polyhedron::A)
      .def_readwrite("b", &egra::Polyhedron::b)
      .def_readwrite("interior_point", &egra::Polyhedron::interior_point)
      .def_property_readonly("dim", &egra::Polyhedron::dim)
      .def_property_readonly("rows", &egra::Polyhedron::rows)
      .def("max_violation", &egra::Polyhedron::max_violation);

  py::class_<egra::EquilibriumInstance>(m, "Instance")
      .def(py::init([](MatrixXd P, MatrixXd Q, VectorXd q,
                       egra::Polyhedron feasible) {
             egra::EquilibriumInstance inst{std::move(P), std::move(Q),
                                            std::move(q), std::move(feasible)};
             egra::validate_instance(inst);
             return inst;
           }),
           py::arg("P"), py::arg("Q"), py::arg("q"), py::arg("feasible"))
      .def_readwrite("P", &egra::EquilibriumInstance::P)
      .def_readwrite("Q", &egra::EquilibriumInstance::Q)
      .def_readwrite("q", &egra::EquilibriumInstance::q)
      .def_readwrite("feasible", &egra::EquilibriumInstance::feasible)
      .def_property_readonly("dim", &egra::EquilibriumInstance::dim);

  m.def(
      "validate_instance",
      [](const egra::EquilibriumInstance& inst) {
        const auto s = egra::validate_instance(inst);
        py::dict out;
        out["q_min_eigenvalue"] = s.q_min_eigenvalue;
        out["q_max_eigenvalue"] = s.q_max_eigenvalue;
        out["q_minus_p_min_eigenvalue"] = s.q_minus_p_min_eigenvalue;
        out["q_minus_p_max_eigenvalue"] = s.q_minus_p_max_eigenvalue;
        return out;
      },
      py::arg("instance"));

  m.def(
      "generate",
      [](int dim, int constraints, std::uint64_t seed, bool strongly_monotone,
         double strong_gap) {
        egra::GeneratorSpec spec;
        spec.dim = dim;
        spec.constraint_count = constraints;
        spec.seed = seed;
        spec.strongly_monotone = strongly_monotone;
        spec.strong_gap = strong_gap;
        return egra::generate(spec);
      },
      py::arg("dim"), py::arg("constraints") = 10, py::arg("seed") = 0,
      py::arg("strongly_monotone") = false, py::arg("strong_gap") = 0.1);

  m.def(
      "nash_cournot",
      [](const VectorXd& alpha, const VectorXd& beta,
         const VectorXd& cost_slope, const VectorXd& cost_intercept,
         const std::vector<std::pair<double, double>>& bounds) {
        std::vector<egra::Interval> box;
        for (const auto& [lo, hi] : bounds) box.push_back({lo, hi});
        return egra::nash_cournot_assemble(alpha, beta, cost_slope,
                                           cost_intercept, box);
      },
      py::arg("alpha"), py::arg("beta"), py::arg("cost_slope"),
      py::arg("cost_intercept"), py::arg("bounds"));

  m.def("bifunction_eval", &egra::bifunction_eval, py::arg("instance"),
        py::arg("x"), py::arg("y"));
  m.def("bifunction_grad_y", &egra::bifunction_grad_y, py::arg("instance"),
        py::arg("x"), py::arg("y"));
  m.def(
      "lipschitz_constants",
      [](const egra::EquilibriumInstance& inst) {
        const auto c = egra::lipschitz_constants(inst);
        return std::make_pair(c.c1, c.c2);
      },
      py::arg("instance"));

  m.def("project", &egra::project, py::arg("feasible"), py::arg("z"),
        py::arg("tol") = egra::kDefaultQpTol);
  m.def("prox_step", &egra::prox_step, py::arg("instance"), py::arg("x"),
        py::arg("z"), py::arg("lam"), py::arg("tol") = egra::kDefaultQpTol);
  m.def(
      "qp_solve",
      [](MatrixXd H, VectorXd c, const egra::Polyhedron& feasible,
         double tol) {
        egra::QpProblem problem{std::move(H), std::move(c), feasible, nullptr};
        const auto sol = egra::qp_solve(problem, tol);
        return std::make_pair(sol.point, sol.duals);
      },
      py::arg("H"), py::arg("c"), py::arg("feasible"),
      py::arg("tol") = egra::kDefaultQpTol,
      "Minimizes 0.5 y'Hy + c'y over the polyhedron; returns (y, duals).");

  m.def("golden_ratio", &egra::golden_ratio);

  m.def(
      "solve",
      [](const egra::EquilibriumInstance& inst, const std::string& method,
         double lambda0, std::optional<double> mu, double tol, int max_iter,
         double qp_tol, double d_metric_lambda, std::uint64_t seed,
         std::optional<VectorXd> start, bool keep_iterates) {
        egra::SolverConfig cfg;
        cfg.method = egra::parse_method(method);
        cfg.lambda0 = lambda0;
        if (mu) cfg.mu = *mu;
        cfg.tol = tol;
        cfg.max_iter = max_iter;
        cfg.qp_tol = qp_tol;
        cfg.d_metric_lambda = d_metric_lambda;
        cfg.seed = seed;
        cfg.start = std::move(start);
        cfg.keep_iterates = keep_iterates;
        egra::SolverTrace trace;
        {
          py::gil_scoped_release release;
          trace = egra::solve(inst, cfg);
        }
        return trace_to_dict(trace);
      },
      py::arg("instance"), py::arg("method") = "EGRA", py::arg("lambda0") = 1.0,
      py::arg("mu") = py::none(), py::arg("tol") = 1e-6,
      py::arg("max_iter") = 5000, py::arg("qp_tol") = egra::kDefaultQpTol,
      py::arg("d_metric_lambda") = 1.0, py::arg("seed") = 0,
      py::arg("start") = py::none(), py::arg("keep_iterates") = false);

  m.def("residual_D", &egra::residual_D, py::arg("instance"), py::arg("x"),
        py::arg("lam") = 1.0, py::arg("qp_tol") = egra::kDefaultQpTol);
  m.def("solution_certificate", &egra::solution_certificate,
        py::arg("instance"), py::arg("x"), py::arg("tol") = 1e-6);
  m.def(
      "rate_fit",
      [](const std::vector<VectorXd>& iterates, const VectorXd& x_ref,
         int window) {
        const auto r = egra::rate_fit(iterates, x_ref, window);
        py::dict out;
        out["q_estimate"] = r.q_estimate;
        out["r_estimate"] = r.r_estimate;
        out["r_squared"] = r.r_squared;
        out["points_used"] = r.points_used;
        return out;
      },
      py::arg("iterates"), py::arg("x_ref"), py::arg("window") = 50);

  m.def(
      "save_instance",
      [](const std::filesystem::path& path,
         const egra::EquilibriumInstance& inst) {
        egra::save_instance(path, inst);
      },
      py::arg("path"), py::arg("instance"));
  m.def("load_instance", &egra::load_instance, py::arg("path"));
}
