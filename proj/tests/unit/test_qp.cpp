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

#include <random>

#include <gtest/gtest.h>

#include "egra/error.hpp"
#include "egra/generator.hpp"
#include "egra/qp.hpp"
#include "test_support.hpp"

namespace egra {
namespace {

using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::VectorXd;
using testing::box;
using testing::randn;
using testing::random_qp;

QpProblem one_d_bound() {
  QpProblem p;
  p.H = MatrixXd::Identity(1, 1);
  p.c = VectorXd::Zero(1);
  p.constraints.A = MatrixXd::Constant(1, 1, 1.0);
  p.constraints.b = VectorXd::Constant(1, -1.0);
  p.constraints.interior_point = VectorXd::Constant(1, -2.0);
  return p;
}

void expect_kkt(const QpProblem& p, const QpSolution& s, double tol) {
  EXPECT_LE(s.kkt_stationarity, tol);
  EXPECT_LE(s.kkt_feasibility, tol);
  EXPECT_LE(s.kkt_complementarity, tol);
  EXPECT_GE(s.duals.minCoeff(), 0.0);
  // Recompute independently of the solver's own bookkeeping.
  const auto r = kkt_residuals(p, s.point, s.duals);
  EXPECT_LE(r.stationarity, tol);
  EXPECT_LE(r.feasibility, tol);
  EXPECT_LE(r.complementarity, tol);
}

EquilibriumInstance generated(int dim, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.dim = dim;
  spec.seed = seed;
  return generate(spec);
}

TEST(QpSolve, InactiveConstraintsReturnUnconstrainedMinimizer) {
  QpProblem p;
  p.H = MatrixXd::Identity(2, 2);
  p.c = -Vector2d(0.3, 0.4);
  p.constraints = box(2, 0.0, 1.0);
  const auto s = qp_solve(p);
  EXPECT_LE((s.point - Vector2d(0.3, 0.4)).lpNorm<Eigen::Infinity>(), 1e-12);
  expect_kkt(p, s, 1e-10);
}

TEST(QpSolve, OneDimensionalBoundByHand) {
  const auto p = one_d_bound();
  const auto s = qp_solve(p);
  EXPECT_NEAR(s.point(0), -1.0, 1e-12);
  EXPECT_NEAR(s.duals(0), 1.0, 1e-12);
  expect_kkt(p, s, 1e-10);
}

TEST(QpSolve, StartsFromInfeasibleInteriorHint) {
  auto p = one_d_bound();
  p.constraints.interior_point = VectorXd::Constant(1, 5.0);
  const auto s = qp_solve(p);
  EXPECT_NEAR(s.point(0), -1.0, 1e-12);
}

TEST(QpSolve, MatchesEnumerationOracle) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(1, 4), rows(1, 6);
  for (int k = 0; k < 200; ++k) {
    const auto p = random_qp(dim(rng), rows(rng), rng);
    const auto s = qp_solve(p);
    const auto o = qp_enumerate(p);
    EXPECT_LE((s.point - o.point).lpNorm<Eigen::Infinity>(), 1e-6) << "k=" << k;
    expect_kkt(p, s, 1e-10);
  }
}

TEST(QpSolve, WarmStartGivesSameAnswer) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 30; ++k) {
    const auto p = random_qp(4, 6, rng);
    const auto cold = qp_solve(p);
    QpWarmStart warm{cold.point, cold.active_set};
    const auto hot = qp_solve(p, kDefaultQpTol, &warm);
    EXPECT_LE((hot.point - cold.point).lpNorm<Eigen::Infinity>(), 1e-9);
    EXPECT_LE(hot.iterations, cold.iterations);
  }
}

TEST(QpSolve, InfeasibleSystemThrows) {
  QpProblem p;
  p.H = MatrixXd::Identity(1, 1);
  p.c = VectorXd::Zero(1);
  p.constraints.A.resize(2, 1);
  p.constraints.A << 1, -1;
  p.constraints.b = Vector2d(-1, -1);  // x <= -1 and x >= 1
  p.constraints.interior_point = VectorXd::Zero(1);
  EXPECT_THROW(qp_solve(p), QpInfeasibleError);
  EXPECT_THROW(qp_enumerate(p), QpInfeasibleError);
}

TEST(QpSolve, RejectsOutOfRangeTolerance) {
  EXPECT_THROW(qp_solve(one_d_bound(), 0.0), ArgumentError);
  EXPECT_THROW(qp_solve(one_d_bound(), 0.1), ArgumentError);
}

TEST(QpSolve, LargerProblemSatisfiesKkt) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 5; ++k) {
    const auto p = random_qp(60, 40, rng);
    expect_kkt(p, qp_solve(p), 1e-10);
  }
}

TEST(QpEnumerate, UnconstrainedOptimum) {
  QpProblem p;
  p.H = Vector2d(2, 4).asDiagonal();
  p.c = Vector2d(-2, -4);
  p.constraints = box(2, -10.0, 10.0);
  const auto o = qp_enumerate(p);
  EXPECT_LE((o.point - Vector2d(1, 1)).norm(), 1e-12);
  EXPECT_EQ(o.duals.lpNorm<Eigen::Infinity>(), 0.0);
}

TEST(QpEnumerate, OneDimensionalBoundByHand) {
  EXPECT_NEAR(qp_enumerate(one_d_bound()).point(0), -1.0, 1e-12);
}

TEST(QpEnumerate, DuplicateRowsAgreeWithActiveSet) {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 50; ++k) {
    auto p = random_qp(3, 4, rng);
    // Duplicate every row so that all pairs of identical constraints appear.
    MatrixXd A(8, 3);
    A << p.constraints.A, p.constraints.A;
    VectorXd b(8);
    b << p.constraints.b, p.constraints.b;
    p.constraints.A = A;
    p.constraints.b = b;
    const auto s = qp_solve(p);
    const auto o = qp_enumerate(p);
    EXPECT_LE((s.point - o.point).lpNorm<Eigen::Infinity>(), 1e-6) << "k=" << k;
    expect_kkt(p, s, 1e-10);
  }
}

TEST(QpEnumerate, RejectsLargeProblems) {
  std::mt19937_64 rng(1);
  EXPECT_THROW(qp_enumerate(random_qp(7, 3, rng)), ArgumentError);
  EXPECT_THROW(qp_enumerate(random_qp(3, 13, rng)), ArgumentError);
}

TEST(Project, FeasiblePointIsFixed) {
  const auto set = box(3, 0.0, 1.0);
  const VectorXd z = Eigen::Vector3d(0.2, 0.5, 0.9);
  EXPECT_LE((project(set, z) - z).lpNorm<Eigen::Infinity>(), 1e-10);
}

TEST(Project, BoxIsComponentwiseClipping) {
  const auto set = box(2, 0.0, 1.0);
  EXPECT_LE((project(set, Vector2d(2, 0.5)) - Vector2d(1, 0.5)).norm(), 1e-12);
  std::mt19937_64 rng(4);
  for (int k = 0; k < 100; ++k) {
    const VectorXd z = 2.0 * randn(2, rng);
    const VectorXd clipped = z.cwiseMax(0.0).cwiseMin(1.0);
    EXPECT_LE((project(set, z) - clipped).lpNorm<Eigen::Infinity>(), 1e-10);
  }
}

TEST(Project, IdempotentAndNonexpansive) {
  const auto inst = generated(12, 6);
  std::mt19937_64 rng(12);
  for (int k = 0; k < 100; ++k) {
    const VectorXd z1 = 4.0 * randn(12, rng);
    const VectorXd z2 = 4.0 * randn(12, rng);
    const VectorXd p1 = project(inst.feasible, z1);
    const VectorXd p2 = project(inst.feasible, z2);
    EXPECT_LE((project(inst.feasible, p1) - p1).lpNorm<Eigen::Infinity>(),
              2e-10);
    EXPECT_LE((p1 - p2).norm(), (z1 - z2).norm() + 1e-8);
  }
}

TEST(Prox, GradientStepWhenQVanishes) {
  EquilibriumInstance inst;
  inst.P = MatrixXd::Identity(2, 2);
  inst.Q = MatrixXd::Zero(2, 2);
  inst.q = VectorXd::Zero(2);
  inst.feasible = box(2, -1e6, 1e6);
  const VectorXd y = prox_step(inst, Vector2d(1, 0), Vector2d(0, 0), 1.0);
  EXPECT_LE((y - Vector2d(-1, 0)).norm(), 1e-10);

  std::mt19937_64 rng(3);
  inst.P << 2, 1, 0.5, 3;
  inst.P = 0.5 * (inst.P + inst.P.transpose()).eval();
  inst.q = Vector2d(0.3, -0.7);
  for (int k = 0; k < 20; ++k) {
    const VectorXd x = randn(2, rng), z = randn(2, rng);
    const double lambda = 0.1 + 0.2 * k;
    const VectorXd expected = z - lambda * (inst.P * x + inst.q);
    EXPECT_LE((prox_step(inst, x, z, lambda) - expected).norm(), 1e-8);
  }
}

TEST(Prox, ZeroBifunctionReducesToProjection) {
  const auto g = generated(6, 2);
  EquilibriumInstance inst;
  inst.P = MatrixXd::Zero(6, 6);
  inst.Q = MatrixXd::Zero(6, 6);
  inst.q = VectorXd::Zero(6);
  inst.feasible = g.feasible;
  std::mt19937_64 rng(2);
  for (int k = 0; k < 20; ++k) {
    const VectorXd x = randn(6, rng), z = 3.0 * randn(6, rng);
    EXPECT_LE((prox_step(inst, x, z, 2.0) - project(inst.feasible, z))
                  .lpNorm<Eigen::Infinity>(),
              1e-9);
  }
}

TEST(Prox, OutputIsFeasible) {
  const auto inst = generated(15, 9);
  std::mt19937_64 rng(9);
  for (int k = 0; k < 50; ++k) {
    const VectorXd x = 3.0 * randn(15, rng), z = 3.0 * randn(15, rng);
    const VectorXd y = prox_step(inst, x, z, 0.5 + k * 0.1);
    EXPECT_LE(inst.feasible.max_violation(y), kDefaultQpTol);
  }
}

TEST(Prox, VariationalCharacterization) {
  std::mt19937_64 rng(77);
  for (int k = 0; k < 10; ++k) {
    const auto inst = generated(10, 300 + k);
    const auto pts = sample_feasible_points(inst.feasible, 100, k);
    const VectorXd x = pts[0];
    const VectorXd z = x + randn(10, rng);
    const double lambda = 0.2 + 0.5 * k;
    const VectorXd xbar = prox_step(inst, x, z, lambda);
    const double g_xbar = bifunction_eval(inst, x, xbar);
    for (const auto& y : pts) {
      EXPECT_GE((xbar - z).dot(y - xbar),
                lambda * (g_xbar - bifunction_eval(inst, x, y)) - 1e-6);
    }
  }
}

TEST(ProxOperator, MatchesFreeFunctionAndCountsCalls) {
  const auto inst = generated(10, 4);
  ProxOperator prox(inst, kDefaultQpTol);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    const VectorXd x = randn(10, rng), z = randn(10, rng);
    const double lambda = (k % 3 == 0) ? 1.0 : 0.5;
    EXPECT_LE((prox(x, z, lambda) - prox_step(inst, x, z, lambda))
                  .lpNorm<Eigen::Infinity>(),
              1e-8);
  }
  EXPECT_EQ(prox.calls(), 20);
}

}  // namespace
}  // namespace egra
