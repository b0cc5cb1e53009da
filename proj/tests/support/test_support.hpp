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

// Fixtures shared by the unit and acceptance tests.

#ifndef EGRA_TEST_SUPPORT_HPP_
#define EGRA_TEST_SUPPORT_HPP_

#include <filesystem>
#include <random>
#include <string>

#include <Eigen/Core>

#include "egra/problem.hpp"
#include "egra/qp.hpp"

namespace egra::testing {

Eigen::VectorXd randn(int n, std::mt19937_64& rng);
Eigen::MatrixXd randn(int rows, int cols, std::mt19937_64& rng);
Eigen::VectorXd uniform(int n, double lo, double hi, std::mt19937_64& rng);

// Strictly convex QP with H = B B^T + I/10 and a feasible system A y <= b
// that may or may not be active at the unconstrained minimizer.
QpProblem random_qp(int m, int l, std::mt19937_64& rng);

// Box lo <= x <= hi as 2m rows [I; -I], interior point at the midpoint.
Polyhedron box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);
Polyhedron box(int m, double lo, double hi);

// C = [0, 10], f(x, y) = (x + 1)(y - x).
EquilibriumInstance one_d_instance();

// Two symmetric Cournot firms: alpha = 10, beta = 1, no costs, box [0, 10].
EquilibriumInstance two_firm_cournot();

// Fresh empty directory below the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

std::string slurp(const std::filesystem::path& path);

}  // namespace egra::testing

#endif  // EGRA_TEST_SUPPORT_HPP_
