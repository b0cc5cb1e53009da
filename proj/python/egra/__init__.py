# Copyright 2026 The egra Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Golden ratio and extragradient solvers for quadratic equilibrium problems."""

from ._egra import (
    ArgumentError,
    Error,
    InsufficientDataError,
    Instance,
    IoError,
    ModelError,
    Polyhedron,
    QpInfeasibleError,
    SamplingError,
    ValidationError,
    bifunction_eval,
    bifunction_grad_y,
    generate,
    golden_ratio,
    lipschitz_constants,
    load_instance,
    nash_cournot,
    project,
    prox_step,
    qp_solve,
    rate_fit,
    residual_D,
    save_instance,
    solution_certificate,
    solve,
    validate_instance,
)

__version__ = "0.1.0"
