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
#include "egra/io.hpp"
#include "egra/solvers.hpp"
#include "test_support.hpp"

namespace egra {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

GeneratorSpec spec_for(int dim, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.dim = dim;
  spec.seed = seed;
  return spec;
}

TEST(Generate, InvariantsHoldForManySeeds) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = generate(spec_for(12, seed));
    const auto s = validate_instance(inst);
    EXPECT_GE(s.q_min_eigenvalue, -1e-8);
    EXPECT_LE(s.q_minus_p_max_eigenvalue, 1e-8);
    const VectorXd slack =
        inst.feasible.b - inst.feasible.A * VectorXd::Ones(12);
    EXPECT_GT(slack.minCoeff(), 0.0);
    EXPECT_EQ(inst.feasible.interior_point, VectorXd::Ones(12));
    EXPECT_GE(inst.q.minCoeff(), -2.0);
    EXPECT_LE(inst.q.maxCoeff(), 2.0);
    EXPECT_EQ(inst.feasible.rows(), 10);
  }
}

TEST(Generate, SpectraWithinRequestedIntervals) {
  auto spec = spec_for(30, 3);
  spec.spectrum_pos = {0.5, 1.5};
  spec.spectrum_neg = {-3.0, -1.0};
  const auto inst = generate(spec);
  const auto q = symmetric_eigen_range(inst.Q);
  const auto t = symmetric_eigen_range(inst.Q - inst.P);
  EXPECT_GE(q.min, 0.5 - 1e-10);
  EXPECT_LE(q.max, 1.5 + 1e-10);
  EXPECT_GE(t.min, -3.0 - 1e-10);
  EXPECT_LE(t.max, -1.0 + 1e-10);
}

TEST(Generate, ZeroNegativeSpectrumGivesPEqualsQ) {
  auto spec = spec_for(6, 1);
  spec.spectrum_neg = {0.0, 0.0};
  const auto inst = generate(spec);
  EXPECT_LE((inst.P - inst.Q).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Generate, StrongVariantHasModulus) {
  for (double gap : {0.1, 0.5, 1.0}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto spec = spec_for(15, seed);
      spec.strongly_monotone = true;
      spec.strong_gap = gap;
      const auto inst = generate(spec);
      EXPECT_GE(symmetric_eigen_range(inst.P - inst.Q).min, gap - 1e-8);
    }
  }
}

TEST(Generate, DeterministicBytes) {
  const auto a = generate(spec_for(25, 9));
  const auto b = generate(spec_for(25, 9));
  EXPECT_EQ(instance_to_json(a).dump(), instance_to_json(b).dump());
  const auto c = generate(spec_for(25, 10));
  EXPECT_NE(instance_to_json(a).dump(), instance_to_json(c).dump());
}

TEST(Generate, RejectsBadSpecs) {
  EXPECT_THROW(generate(spec_for(0, 1)), ArgumentError);
  auto spec = spec_for(3, 1);
  spec.constraint_count = 0;
  EXPECT_THROW(generate(spec), ArgumentError);
  spec = spec_for(3, 1);
  spec.spectrum_neg = {-1.0, 0.5};
  EXPECT_THROW(generate(spec), ArgumentError);
  spec = spec_for(3, 1);
  spec.spectrum_pos = {-0.1, 1.0};
  EXPECT_THROW(generate(spec), ArgumentError);
  spec = spec_for(3, 1);
  spec.strongly_monotone = true;
  spec.strong_gap = 0.0;
  EXPECT_THROW(generate(spec), ArgumentError);
}

TEST(RandomOrthogonal, IsOrthogonal) {
  std::mt19937_64 rng(4);
  const MatrixXd u = random_orthogonal(40, rng);
  EXPECT_LE((u.transpose() * u - MatrixXd::Identity(40, 40)).norm(), 1e-12);
}

TEST(Cournot, OneFirmMonopoly) {
  const auto inst = nash_cournot_assemble(
      VectorXd::Constant(1, 10.0), VectorXd::Constant(1, 1.0),
      VectorXd::Constant(1, 2.0), VectorXd::Zero(1), {{0.0, 10.0}});
  validate_instance(inst);
  SolverConfig cfg;
  cfg.tol = 1e-14;
  const auto trace = egra_solve(inst, cfg);
  EXPECT_NEAR(trace.final_point(0), 4.0, 1e-5);
  EXPECT_GE(solution_certificate(inst, VectorXd::Constant(1, 4.0), 1e-8), -1e-6);
}

TEST(Cournot, TwoSymmetricFirms) {
  const auto inst = testing::two_firm_cournot();
  validate_instance(inst);
  const VectorXd closed = VectorXd::Constant(2, 10.0 / 3.0);
  EXPECT_GE(solution_certificate(inst, closed, 1e-8), -1e-6);
  SolverConfig cfg;
  cfg.tol = 1e-14;
  const auto trace = egra_solve(inst, cfg);
  EXPECT_LE((trace.final_point - closed).lpNorm<Eigen::Infinity>(), 1e-5);
}

TEST(Cournot, AsymmetricFirmsMatchClosedForm) {
  // Interior equilibrium: x_j = (a - (n+1) c_j + sum c) / ((n+1) b).
  const VectorXd cost = Eigen::Vector3d(1.0, 2.0, 3.0);
  const auto inst = nash_cournot_assemble(
      VectorXd::Constant(3, 20.0), VectorXd::Constant(3, 2.0), cost,
      VectorXd::Zero(3), {{0.0, 20.0}, {0.0, 20.0}, {0.0, 20.0}});
  VectorXd closed(3);
  for (int j = 0; j < 3; ++j) {
    closed(j) = (20.0 - 4.0 * cost(j) + cost.sum()) / (4.0 * 2.0);
  }
  EXPECT_GE(solution_certificate(inst, closed, 1e-8), -1e-6);
  SolverConfig cfg;
  cfg.tol = 1e-14;
  EXPECT_LE((egra_solve(inst, cfg).final_point - closed).lpNorm<Eigen::Infinity>(),
            1e-5);
}

TEST(Cournot, RejectsNonpositiveSlope) {
  EXPECT_THROW(nash_cournot_assemble(VectorXd::Constant(1, 10.0),
                                     VectorXd::Constant(1, 0.0),
                                     VectorXd::Zero(1), VectorXd::Zero(1),
                                     {{0.0, 10.0}}),
               ModelError);
  EXPECT_THROW(nash_cournot_assemble(VectorXd::Constant(1, 10.0),
                                     VectorXd::Constant(1, 1.0),
                                     VectorXd::Zero(1), VectorXd::Zero(1),
                                     {{5.0, 1.0}}),
               ModelError);
}

}  // namespace
}  // namespace egra
