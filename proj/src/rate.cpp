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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "egra/solvers.hpp"

namespace egra {

RateEstimate rate_fit(const std::vector<Eigen::VectorXd>& iterates,
                      const Eigen::VectorXd& x_ref, int window) {
  constexpr double kFloor = 1e-12;
  constexpr int kMinPoints = 5;

  struct Point {
    double n;
    double err;
  };
  std::vector<Point> usable;
  for (std::size_t n = 0; n < iterates.size(); ++n) {
    if (iterates[n].size() != x_ref.size()) {
      throw ArgumentError("rate_fit: iterate dimension mismatch");
    }
    const double err = (iterates[n] - x_ref).norm();
    if (err > kFloor) usable.push_back({static_cast<double>(n), err});
  }
  if (static_cast<int>(usable.size()) > window) {
    usable.erase(usable.begin(), usable.end() - window);
  }
  if (static_cast<int>(usable.size()) < kMinPoints) {
    throw InsufficientDataError(
        "rate_fit needs at least 5 iterates with |x_n - x_ref| > 1e-12, got " +
        std::to_string(usable.size()));
  }

  RateEstimate est;
  est.points_used = static_cast<int>(usable.size());

  est.q_estimate = 0.0;
  for (std::size_t k = 1; k < usable.size(); ++k) {
    if (usable[k].n == usable[k - 1].n + 1.0) {
      est.q_estimate =
          std::max(est.q_estimate, usable[k].err / usable[k - 1].err);
    }
  }

  // Least-squares line through (n, log err).
  const double count = static_cast<double>(usable.size());
  double mean_n = 0.0;
  double mean_log = 0.0;
  for (const auto& p : usable) {
    mean_n += p.n;
    mean_log += std::log(p.err);
  }
  mean_n /= count;
  mean_log /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& p : usable) {
    const double dn = p.n - mean_n;
    const double dl = std::log(p.err) - mean_log;
    sxx += dn * dn;
    sxy += dn * dl;
    syy += dl * dl;
  }
  const double slope = sxy / sxx;
  est.r_estimate = std::exp(slope);
  est.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return est;
}

}  // namespace egra
