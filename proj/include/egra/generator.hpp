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

// Random Nash-Cournot style instances and exact Cournot oligopoly models.

#ifndef EGRA_GENERATOR_HPP_
#define EGRA_GENERATOR_HPP_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "egra/problem.hpp"

namespace egra {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Q = U2 diag(spectrum_pos) U2^T, T = U1 diag(spectrum_neg) U1^T with Haar
// orthogonal U1, U2, and P = Q - T. The feasible set is {A x <= b} with
// A standard normal and b = A 1 + |s|, so x0 = (1, ..., 1) is strictly
// inside.
struct GeneratorSpec {
  int dim = 0;
  int constraint_count = 10;
  std::uint64_t seed = 0;
  Interval q_range{-2.0, 2.0};
  Interval spectrum_neg{-2.0, 0.0};
  Interval spectrum_pos{0.0, 2.0};
  // Shifts spectrum_neg to [lo, min(hi, -strong_gap)], making P - Q
  // positive definite with modulus >= strong_gap.
  bool strongly_monotone = false;
  double strong_gap = 0.1;

  // Throws ArgumentError.
  void validate() const;
  // spectrum_neg after the strong-monotonicity shift.
  Interval effective_spectrum_neg() const;
};

EquilibriumInstance generate(const GeneratorSpec& spec);

// Haar-distributed orthogonal matrix: QR of a standard normal matrix with
// the diagonal of R made positive.
Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng);

// Cournot oligopoly with price p_j(s) = alpha_j - beta_j s (s = sum x) and
// cost c_j(x_j) = cost_slope_j x_j + cost_intercept_j over the box
// prod_j [bounds_j.lo, bounds_j.hi]. The firm-j profit gradient is scaled by
// 1 / beta_j, which leaves the equilibrium set unchanged and yields
//   P = 1 1^T + I/2,  Q = I/2,  q_j = (cost_slope_j - alpha_j) / beta_j.
// Throws ModelError when some beta_j <= 0 or a bound interval is empty.
EquilibriumInstance nash_cournot_assemble(const Eigen::VectorXd& alpha,
                                          const Eigen::VectorXd& beta,
                                          const Eigen::VectorXd& cost_slope,
                                          const Eigen::VectorXd& cost_intercept,
                                          const std::vector<Interval>& bounds);

}  // namespace egra

#endif  // EGRA_GENERATOR_HPP_
