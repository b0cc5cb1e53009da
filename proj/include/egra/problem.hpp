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

// Equilibrium problems EP(f, C) with the quadratic-affine bifunction
//
//   f(x, y) = <P x + Q y + q, y - x>
//
// over a polyhedron C = {x : A x <= b}. A point x* in C solves the problem
// when f(x*, y) >= 0 for every y in C.

#ifndef EGRA_PROBLEM_HPP_
#define EGRA_PROBLEM_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

namespace egra {

// Tolerances used by the structural validators.
inline constexpr double kSymmetryRelTol = 1e-12;
inline constexpr double kEigenvalueTol = 1e-8;

struct Polyhedron {
  Eigen::MatrixXd A;               // l x m
  Eigen::VectorXd b;               // l
  Eigen::VectorXd interior_point;  // m, satisfies A * interior_point <= b

  int dim() const { return static_cast<int>(A.cols()); }
  int rows() const { return static_cast<int>(A.rows()); }

  // max(0, max_i (A x - b)_i).
  double max_violation(const Eigen::VectorXd& x) const;

  // Throws ValidationError when an invariant fails.
  void validate() const;
};

struct EquilibriumInstance {
  Eigen::MatrixXd P;
  Eigen::MatrixXd Q;
  Eigen::VectorXd q;
  Polyhedron feasible;

  int dim() const { return static_cast<int>(q.size()); }
};

// Spectral summary gathered while validating an instance.
struct SpectralSummary {
  double q_min_eigenvalue = 0.0;
  double q_max_eigenvalue = 0.0;
  // Extremes of the symmetric part of Q - P.
  double q_minus_p_min_eigenvalue = 0.0;
  double q_minus_p_max_eigenvalue = 0.0;
};

// Checks Q symmetric PSD, Q - P symmetric NSD, dimension agreement and the
// polyhedron invariants. Throws ValidationError naming the first violated
// invariant (and the offending eigenvalue for spectral failures).
SpectralSummary validate_instance(const EquilibriumInstance& inst);

// (P x + Q y + q)^T (y - x). No feasibility requirement.
double bifunction_eval(const EquilibriumInstance& inst,
                       const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// Gradient of y -> f(x, y): 2 Q y + P x - Q x + q.
Eigen::VectorXd bifunction_grad_y(const EquilibriumInstance& inst,
                                  const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& y);

struct LipschitzConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  double max() const { return c1 > c2 ? c1 : c2; }
};

// Closed form c1 = c2 = ||P - Q||_2 / 2 for the quadratic-affine family.
LipschitzConstants lipschitz_constants(const EquilibriumInstance& inst);

struct LipschitzCertificate {
  int triples_tested = 0;
  int violations = 0;
  // Largest observed f(x,z) - f(x,y) - f(y,z) - c1|x-y|^2 - c2|y-z|^2.
  double worst_slack = 0.0;
  bool passed() const { return violations == 0; }
};

// Samples feasible triples and checks
//   f(x,y) + f(y,z) >= f(x,z) - c1 |x-y|^2 - c2 |y-z|^2 - slack.
LipschitzCertificate certify_lipschitz(const EquilibriumInstance& inst,
                                       const LipschitzConstants& constants,
                                       int triples, std::uint64_t seed,
                                       double slack = 1e-8);

struct MonotonicityReport {
  int samples_tested = 0;
  std::optional<double> strongly_monotone_gamma;
  int monotone_violations = 0;
  int pseudomonotone_violations = 0;
  double lipschitz_c1 = 0.0;
  double lipschitz_c2 = 0.0;
  int lipschitz_violations = 0;
};

MonotonicityReport check_monotonicity(const EquilibriumInstance& inst,
                                      int samples, std::uint64_t seed);

// Draws points uniformly from the box interior_point +/- half_width and
// projects them onto the polyhedron. Deterministic in seed.
std::vector<Eigen::VectorXd> sample_feasible_points(const Polyhedron& set,
                                                    int count,
                                                    std::uint64_t seed,
                                                    double half_width = 10.0);

// Extreme eigenvalues of the symmetric part of a square matrix.
struct EigenRange {
  double min = 0.0;
  double max = 0.0;
};
EigenRange symmetric_eigen_range(const Eigen::MatrixXd& m);

// Largest singular value.
double spectral_norm(const Eigen::MatrixXd& m);

}  // namespace egra

#endif  // EGRA_PROBLEM_HPP_
