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

#include "egra/generator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/QR>

#include "egra/error.hpp"

namespace egra {

void GeneratorSpec::validate() const {
  if (dim < 1) throw ArgumentError("generator: dim must be >= 1");
  if (constraint_count < 1) {
    throw ArgumentError("generator: constraint_count must be >= 1");
  }
  auto check = [](const Interval& i, const char* name) {
    if (!(std::isfinite(i.lo) && std::isfinite(i.hi)) || i.lo > i.hi) {
      throw ArgumentError(std::string("generator: invalid interval ") + name);
    }
  };
  check(q_range, "q_range");
  check(spectrum_neg, "spectrum_neg");
  check(spectrum_pos, "spectrum_pos");
  if (spectrum_neg.hi > 0.0) {
    throw ArgumentError("generator: spectrum_neg must lie in (-inf, 0]");
  }
  if (spectrum_pos.lo < 0.0) {
    throw ArgumentError("generator: spectrum_pos must lie in [0, inf)");
  }
  if (strongly_monotone) {
    if (!(strong_gap > 0.0)) {
      throw ArgumentError("generator: strong_gap must be positive");
    }
    if (spectrum_neg.lo > -strong_gap) {
      throw ArgumentError(
          "generator: spectrum_neg cannot be shifted below -strong_gap");
    }
  }
}

Interval GeneratorSpec::effective_spectrum_neg() const {
  if (!strongly_monotone) return spectrum_neg;
  return {spectrum_neg.lo, std::min(spectrum_neg.hi, -strong_gap)};
}

Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) == 0.0) throw Error("random_orthogonal: singular sample");
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

EquilibriumInstance generate(const GeneratorSpec& spec) {
  spec.validate();
  const int m = spec.dim;
  const int l = spec.constraint_count;
  std::mt19937_64 rng(spec.seed);

  const Interval neg = spec.effective_spectrum_neg();
  std::uniform_real_distribution<double> neg_dist(neg.lo, neg.hi);
  std::uniform_real_distribution<double> pos_dist(spec.spectrum_pos.lo,
                                                  spec.spectrum_pos.hi);
  Eigen::VectorXd lambda_neg(m);
  Eigen::VectorXd lambda_pos(m);
  for (int k = 0; k < m; ++k) {
    lambda_neg(k) = neg.lo == neg.hi ? neg.lo : neg_dist(rng);
    lambda_pos(k) = spec.spectrum_pos.lo == spec.spectrum_pos.hi
                        ? spec.spectrum_pos.lo
                        : pos_dist(rng);
  }
  const Eigen::MatrixXd u1 = random_orthogonal(m, rng);
  const Eigen::MatrixXd u2 = random_orthogonal(m, rng);

  Eigen::MatrixXd Q = u2 * lambda_pos.asDiagonal() * u2.transpose();
  Eigen::MatrixXd T = u1 * lambda_neg.asDiagonal() * u1.transpose();
  Q = 0.5 * (Q + Q.transpose()).eval();
  T = 0.5 * (T + T.transpose()).eval();

  EquilibriumInstance inst;
  inst.Q = Q;
  inst.P = Q - T;
  inst.q.resize(m);
  std::uniform_real_distribution<double> q_dist(spec.q_range.lo,
                                                spec.q_range.hi);
  for (int j = 0; j < m; ++j) {
    inst.q(j) = spec.q_range.lo == spec.q_range.hi ? spec.q_range.lo
                                                   : q_dist(rng);
  }

  std::normal_distribution<double> normal(0.0, 1.0);
  Polyhedron& c = inst.feasible;
  c.A.resize(l, m);
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < m; ++j) c.A(i, j) = normal(rng);
  }
  c.interior_point = Eigen::VectorXd::Ones(m);
  c.b = c.A * c.interior_point;
  for (int i = 0; i < l; ++i) c.b(i) += std::abs(normal(rng));
  return inst;
}

EquilibriumInstance nash_cournot_assemble(const Eigen::VectorXd& alpha,
                                          const Eigen::VectorXd& beta,
                                          const Eigen::VectorXd& cost_slope,
                                          const Eigen::VectorXd& cost_intercept,
                                          const std::vector<Interval>& bounds) {
  const Eigen::Index m = alpha.size();
  if (m < 1) throw ModelError("Cournot model needs at least one firm");
  if (beta.size() != m || cost_slope.size() != m ||
      cost_intercept.size() != m || static_cast<Eigen::Index>(bounds.size()) != m) {
    throw ModelError("Cournot model: inconsistent number of firms");
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    if (!(beta(j) > 0.0)) {
      throw ModelError("Cournot model: beta_" + std::to_string(j) +
                       " must be positive");
    }
    if (!(bounds[j].lo <= bounds[j].hi)) {
      throw ModelError("Cournot model: empty strategy interval for firm " +
                       std::to_string(j));
    }
  }

  EquilibriumInstance inst;
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(m, m);
  inst.Q = 0.5 * eye;
  inst.P = Eigen::MatrixXd::Ones(m, m) + 0.5 * eye;
  inst.q = (cost_slope - alpha).cwiseQuotient(beta);

  Polyhedron& box = inst.feasible;
  box.A.resize(2 * m, m);
  box.A << eye, -eye;
  box.b.resize(2 * m);
  box.interior_point.resize(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    box.b(j) = bounds[j].hi;
    box.b(m + j) = -bounds[j].lo;
    box.interior_point(j) = 0.5 * (bounds[j].lo + bounds[j].hi);
  }
  return inst;
}

}  // namespace egra
