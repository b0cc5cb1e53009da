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

#ifndef EGRA_SRC_SOLVER_COMMON_HPP_
#define EGRA_SRC_SOLVER_COMMON_HPP_

#include <chrono>

#include <Eigen/Core>

#include "egra/solvers.hpp"

namespace egra::detail {

// Monotonic wall clock started at construction.
class RunClock {
 public:
  RunClock();
  double elapsed() const;

 private:
  std::chrono::steady_clock::time_point start_;
};

// cfg.start or (1, ..., 1), projected onto C (and noted in the trace) when
// infeasible.
Eigen::VectorXd starting_point(const EquilibriumInstance& inst,
                               const SolverConfig& cfg, SolverTrace& trace);

}  // namespace egra::detail

#endif  // EGRA_SRC_SOLVER_COMMON_HPP_
