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

#include "egra/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "egra/error.hpp"
#include "egra/qp.hpp"

namespace egra {
namespace {

void require_dim(const EquilibriumInstance& inst, const Eigen::VectorXd& v,
                 const char* name) {
  if (v.size() != inst.dim()) {
    std::ostringstream msg;
    msg << "dimension mismatch: " << name << " has " << v.size()
        << " entries, instance dimension is " << inst.dim();
    throw ArgumentError(msg.str());
  }
}

bool symmetric_within(const Eigen::MatrixXd& m) {
  const double scale = 1.0 + m.cwiseAbs().maxCoeff();
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= kSymmetryRelTol * scale;
}

}  // namespace

double Polyhedron::max_violation(const Eigen::VectorXd& x) const {
  if (rows() == 0) return 0.0;
  return std::max(0.0, (A * x - b).maxCoeff());
}

void Polyhedron::validate() const {
  if (A.rows() < 1) throw ValidationError("polyhedron needs at least one row");
  if (A.cols() < 1) throw ValidationError("polyhedron dimension must be >= 1");
  if (b.size() != A.rows()) {
    throw ValidationError("polyhedron: b has " + std::to_string(b.size()) +
                          " entries but A has " + std::to_string(A.rows()) +
                          " rows");
  }
  if (interior_point.size() != A.cols()) {
    throw ValidationError("polyhedron: interior_point has wrong dimension");
  }
  if (!A.allFinite() || !b.allFinite() || !interior_point.allFinite()) {
    throw ValidationError("polyhedron: non-finite entries");
  }
  const Eigen::VectorXd slack = b - A * interior_point;
  Eigen::Index worst = 0;
  if (slack.minCoeff(&worst) < 0.0) {
    std::ostringstream msg;
    msg << "polyhedron: interior_point violates row " << worst << " by "
        << -slack(worst);
    throw ValidationError(msg.str());
  }
}

EigenRange symmetric_eigen_range(const Eigen::MatrixXd& m) {
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym,
                                                     Eigen::EigenvaluesOnly);
  const auto& values = eig.eigenvalues();
  return {values.minCoeff(), values.maxCoeff()};
}

double spectral_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == m.cols() && (m - m.transpose()).cwiseAbs().maxCoeff() == 0.0) {
    const EigenRange r = symmetric_eigen_range(m);
    return std::max(std::abs(r.min), std::abs(r.max));
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

SpectralSummary validate_instance(const EquilibriumInstance& inst) {
  const int m = inst.dim();
  if (m < 1) throw ValidationError("instance dimension must be >= 1");
  if (inst.P.rows() != m || inst.P.cols() != m) {
    throw ValidationError("P must be " + std::to_string(m) + "x" +
                          std::to_string(m));
  }
  if (inst.Q.rows() != m || inst.Q.cols() != m) {
    throw ValidationError("Q must be " + std::to_string(m) + "x" +
                          std::to_string(m));
  }
  if (!inst.P.allFinite() || !inst.Q.allFinite() || !inst.q.allFinite()) {
    throw ValidationError("instance has non-finite entries");
  }
  if (inst.feasible.dim() != m) {
    throw ValidationError("feasible set dimension " +
                          std::to_string(inst.feasible.dim()) +
                          " differs from instance dimension " +
                          std::to_string(m));
  }
  inst.feasible.validate();

  if (!symmetric_within(inst.Q)) throw ValidationError("Q is not symmetric");
  const Eigen::MatrixXd q_minus_p = inst.Q - inst.P;
  if (!symmetric_within(q_minus_p)) {
    throw ValidationError("Q - P is not symmetric");
  }

  SpectralSummary summary;
  const EigenRange q_range = symmetric_eigen_range(inst.Q);
  const EigenRange d_range = symmetric_eigen_range(q_minus_p);
  summary.q_min_eigenvalue = q_range.min;
  summary.q_max_eigenvalue = q_range.max;
  summary.q_minus_p_min_eigenvalue = d_range.min;
  summary.q_minus_p_max_eigenvalue = d_range.max;

  if (q_range.min < -kEigenvalueTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "Q is not positive semidefinite: smallest eigenvalue "
        << q_range.min;
    throw ValidationError(msg.str());
  }
  if (d_range.max > kEigenvalueTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "Q - P is not negative semidefinite: largest eigenvalue "
        << d_range.max;
    throw ValidationError(msg.str());
  }
  return summary;
}

double bifunction_eval(const EquilibriumInstance& inst,
                       const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  require_dim(inst, x, "x");
  require_dim(inst, y, "y");
  return (inst.P * x + inst.Q * y + inst.q).dot(y - x);
}

Eigen::VectorXd bifunction_grad_y(const EquilibriumInstance& inst,
                                  const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& y) {
  require_dim(inst, x, "x");
  require_dim(inst, y, "y");
  return 2.0 * (inst.Q * y) + inst.P * x - inst.Q * x + inst.q;
}

LipschitzConstants lipschitz_constants(const EquilibriumInstance& inst) {
  const double half_norm = 0.5 * spectral_norm(inst.P - inst.Q);
  return {half_norm, half_norm};
}

std::vector<Eigen::VectorXd> sample_feasible_points(const Polyhedron& set,
                                                    int count,
                                                    std::uint64_t seed,
                                                    double half_width) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-half_width, half_width);
  std::vector<Eigen::VectorXd> points;
  points.reserve(static_cast<std::size_t>(std::max(count, 0)));
  Projector projector(set, kDefaultQpTol);
  for (int k = 0; k < count; ++k) {
    Eigen::VectorXd z(set.dim());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      z(i) = set.interior_point(i) + unit(rng);
    }
    try {
      points.push_back(projector(z));
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "cannot sample feasible points from polyhedron (" << set.rows()
          << " rows, dimension " << set.dim() << "): " << e.what();
      throw SamplingError(msg.str());
    }
  }
  return points;
}

LipschitzCertificate certify_lipschitz(const EquilibriumInstance& inst,
                                       const LipschitzConstants& constants,
                                       int triples, std::uint64_t seed,
                                       double slack) {
  LipschitzCertificate cert;
  if (triples <= 0) return cert;
  const auto points = sample_feasible_points(inst.feasible, 3 * triples, seed);
  cert.worst_slack = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < triples; ++t) {
    const auto& x = points[3 * t];
    const auto& y = points[3 * t + 1];
    const auto& z = points[3 * t + 2];
    const double gap = bifunction_eval(inst, x, z) -
                       bifunction_eval(inst, x, y) -
                       bifunction_eval(inst, y, z) -
                       constants.c1 * (x - y).squaredNorm() -
                       constants.c2 * (y - z).squaredNorm();
    cert.worst_slack = std::max(cert.worst_slack, gap);
    if (gap > slack) ++cert.violations;
    ++cert.triples_tested;
  }
  return cert;
}

MonotonicityReport check_monotonicity(const EquilibriumInstance& inst,
                                      int samples, std::uint64_t seed) {
  if (samples < 1) throw ArgumentError("samples must be >= 1");
  MonotonicityReport report;
  const auto points = sample_feasible_points(inst.feasible, 2 * samples, seed);
  for (int s = 0; s < samples; ++s) {
    const auto& x = points[2 * s];
    const auto& y = points[2 * s + 1];
    const double fxy = bifunction_eval(inst, x, y);
    const double fyx = bifunction_eval(inst, y, x);
    const double scale = 1e-9 * (1.0 + std::abs(fxy) + std::abs(fyx));
    if (fxy + fyx > scale) ++report.monotone_violations;
    if (fxy >= 0.0 && fyx > scale) ++report.pseudomonotone_violations;
    ++report.samples_tested;
  }

  // f(x,y) + f(y,x) = -(y-x)^T (P-Q) (y-x), so the modulus is the smallest
  // eigenvalue of the symmetric part of P - Q.
  const EigenRange pq = symmetric_eigen_range(inst.P - inst.Q);
  if (pq.min > 1e-10) report.strongly_monotone_gamma = pq.min;

  const LipschitzConstants lc = lipschitz_constants(inst);
  report.lipschitz_c1 = lc.c1;
  report.lipschitz_c2 = lc.c2;
  report.lipschitz_violations =
      certify_lipschitz(inst, lc, samples, seed ^ 0x9e3779b97f4a7c15ULL)
          .violations;
  return report;
}

}  // namespace egra
