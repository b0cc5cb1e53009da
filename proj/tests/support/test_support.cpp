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

#include "test_support.hpp"

#include <fstream>
#include <sstream>
#include <unistd.h>

#include "egra/generator.hpp"

namespace egra::testing {

Eigen::VectorXd randn(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

Eigen::MatrixXd randn(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

Eigen::VectorXd uniform(int n, double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

QpProblem random_qp(int m, int l, std::mt19937_64& rng) {
  const Eigen::MatrixXd B = randn(m, m, rng);
  QpProblem p;
  p.H = B * B.transpose() + 0.1 * Eigen::MatrixXd::Identity(m, m);
  p.c = 3.0 * randn(m, rng);
  const Eigen::VectorXd x0 = randn(m, rng);
  p.constraints.A = randn(l, m, rng);
  p.constraints.b = p.constraints.A * x0 + randn(l, rng).cwiseAbs();
  p.constraints.interior_point = x0;
  return p;
}

Polyhedron box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  const int m = static_cast<int>(lo.size());
  Polyhedron p;
  p.A.resize(2 * m, m);
  p.A << Eigen::MatrixXd::Identity(m, m), -Eigen::MatrixXd::Identity(m, m);
  p.b.resize(2 * m);
  p.b << hi, -lo;
  p.interior_point = 0.5 * (lo + hi);
  return p;
}

Polyhedron box(int m, double lo, double hi) {
  return box(Eigen::VectorXd::Constant(m, lo), Eigen::VectorXd::Constant(m, hi));
}

EquilibriumInstance one_d_instance() {
  EquilibriumInstance inst;
  inst.P = Eigen::MatrixXd::Constant(1, 1, 1.0);
  inst.Q = Eigen::MatrixXd::Zero(1, 1);
  inst.q = Eigen::VectorXd::Constant(1, 1.0);
  inst.feasible = box(1, 0.0, 10.0);
  return inst;
}

EquilibriumInstance two_firm_cournot() {
  return nash_cournot_assemble(Eigen::Vector2d(10, 10), Eigen::Vector2d(1, 1),
                               Eigen::Vector2d(0, 0), Eigen::Vector2d(0, 0),
                               {{0.0, 10.0}, {0.0, 10.0}});
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("egra_test_" + std::to_string(::getpid()) + "_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace egra::testing
