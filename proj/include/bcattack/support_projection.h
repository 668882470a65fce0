// Copyright 2026 The bcattack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BCATTACK_SUPPORT_PROJECTION_H
#define BCATTACK_SUPPORT_PROJECTION_H

#include <array>
#include <cstddef>
#include <vector>

#include "bcattack/general_density.h"

namespace bcattack {

/// Decomposition of a d = 3 density operator with an announcement per element.
struct GeneralDecomposition {
    std::vector<double> weights;
    std::vector<ComplexMatrixX> states;
    std::vector<std::size_t> announce;
};

struct SupportProjectionInput {
    GeneralDensity rho_star;
    /// Orthonormal basis (3 x 2) of the plane G holding the honest states.
    ComplexMatrixX plane;
    std::array<std::vector<ComplexVectorX>, 2> states;
    std::array<GeneralDecomposition, 2> decomps;
};

struct SupportProjectionReport {
    double trace_g = 0.0;
    double p_u_star = 0.0;
    /// P_U of the projected strategy, evaluated in C^3.
    double p_u_projected = 0.0;
    /// The same value evaluated on the qubit the plane carries.
    double p_u_qubit = 0.0;
    /// |p_u_projected - p_u_star / trace_g|.
    double residual = 0.0;
    /// Ratio p_u_projected / p_u_star.
    double ratio = 0.0;
};

/// Projects a d = 3 strategy onto the plane of the honest states and checks
/// that P_U scales by exactly 1 / Tr(rho* G). Throws SpanViolation if a state
/// leaves the plane and ParentMismatch if a decomposition does not sum to
/// rho*.
SupportProjectionReport support_projection_check(const SupportProjectionInput &input);

/// q_k sigma_k = sqrt(rho) E_k sqrt(rho) for a POVM on C^3; announces k.
GeneralDecomposition decomposition_from_povm(const GeneralDensity &rho, const std::vector<ComplexMatrixX> &povm);

}  // namespace bcattack

#endif
