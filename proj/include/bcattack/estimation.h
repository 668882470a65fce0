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

#ifndef BCATTACK_ESTIMATION_H
#define BCATTACK_ESTIMATION_H

#include <span>
#include <vector>

#include "bcattack/decomp.h"
#include "bcattack/qubit_algebra.h"

namespace bcattack {

/// Optimal probability of guessing b from one copy of rho_b, equal priors.
double helstrom_pe(const DensityOperator &rho0, const DensityOperator &rho1);

/// Success probability of reading outcome k of a two-element POVM as "b = k".
double discrimination_success(const DensityOperator &rho0, const DensityOperator &rho1, const Povm &povm);

struct HelstromMeasurement {
    Povm povm;
    /// rho0 == rho1: the POVM is {I, 0} and any measurement is optimal.
    bool degenerate = false;
    /// Success probability of `povm`, evaluated directly.
    double success = 0.5;
};

/// Projectors onto the positive and non-positive eigenspaces of rho0 - rho1.
/// Throws InternalMismatch if the measurement misses helstrom_pe by > 1e-10.
HelstromMeasurement helstrom_povm(const DensityOperator &rho0, const DensityOperator &rho1);

struct EstimationProblem {
    std::vector<double> priors;
    std::vector<QubitState> states;
};

struct DualityImage {
    EstimationProblem problem;
    /// C = sum_k <psi_k|rho|psi_k>.
    double scale = 0.0;
};

/// chi_k proportional to sqrt(rho)|psi_k>, w_k = <psi_k|rho|psi_k> / C.
DualityImage duality_map(const DensityOperator &rho, std::span<const QubitState> states);

/// C sum_k w_k <chi_k|E_k|chi_k>. Requires povm.size() == number of states.
double duality_success(const DualityImage &image, const Povm &povm);

}  // namespace bcattack

#endif
