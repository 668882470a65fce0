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

#ifndef BCATTACK_ORACLE_H
#define BCATTACK_ORACLE_H

#include <span>
#include <vector>

#include "bcattack/attack.h"
#include "bcattack/qubit_algebra.h"

namespace bcattack {

struct OracleConfig {
    /// Approximate number of sample points in the ball.
    int rho_grid = 400000;
    /// Number of chord directions for the fixed-rho search.
    int direction_grid = 512;
    /// Local refinement passes around the incumbent.
    int refine_rounds = 3;
    /// Fraction of ball samples whose analytic inner value is re-checked by
    /// the directional search (the incumbent is always re-checked).
    double recheck_fraction = 0.001;

    /// Throws InvalidArgument unless every count is >= 1 (refine_rounds >= 0).
    void validate() const;
};

/// n points spread evenly over the unit sphere.
std::vector<Vec3> fibonacci_sphere(int n);

/// Best unveiling probability at fixed rho, found by searching chord
/// directions through r separately for each announcement pairing, then
/// refining each pairing's best direction along tangent lines.
double oracle_p_ub_fixed_rho(const DensityOperator &rho, std::span<const QubitState> states, const OracleConfig &cfg);

struct OracleResult {
    double value = 0.0;
    BlochVector argmax;
    /// Largest |directional - analytic| seen on re-checked samples.
    double recheck_gap = 0.0;
    int rechecked = 0;
    long evaluated = 0;
};

/// Grid search for the best P_U over the Bloch ball. Parallel over
/// BCATTACK_THREADS (default: hardware concurrency); the result does not
/// depend on the thread count.
OracleResult oracle_p_u_max(const ProtocolSpec &protocol, const OracleConfig &cfg);

/// Thread count from BCATTACK_THREADS, or the hardware concurrency.
int worker_threads();

}  // namespace bcattack

#endif
