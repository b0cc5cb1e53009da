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

#ifndef EGRA_ERROR_HPP_
#define EGRA_ERROR_HPP_

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace egra {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: wrong dimensions, out-of-range parameters.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// An instance or polyhedron violates one of its structural invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Feasible points could not be drawn from a polyhedron.
class SamplingError : public Error {
 public:
  using Error::Error;
};

// The Cournot model data is inadmissible (e.g. nonpositive price slope).
class ModelError : public Error {
 public:
  using Error::Error;
};

// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Too few usable points for a rate estimate.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// The constraint system Ay <= b has no solution.
class QpInfeasibleError : public Error {
 public:
  using Error::Error;
};

// The QP iteration cap was hit (or the final KKT residuals exceed the
// requested tolerance). Carries the best iterate found.
class QpNonConvergenceError : public Error {
 public:
  QpNonConvergenceError(const std::string& what, Eigen::VectorXd best_point,
                        double stationarity, double feasibility,
                        double complementarity)
      : Error(what),
        best_point_(std::move(best_point)),
        stationarity_(stationarity),
        feasibility_(feasibility),
        complementarity_(complementarity) {}

  const Eigen::VectorXd& best_point() const { return best_point_; }
  double stationarity() const { return stationarity_; }
  double feasibility() const { return feasibility_; }
  double complementarity() const { return complementarity_; }

 private:
  Eigen::VectorXd best_point_;
  double stationarity_;
  double feasibility_;
  double complementarity_;
};

}  // namespace egra

#endif  // EGRA_ERROR_HPP_
