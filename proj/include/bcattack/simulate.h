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

#ifndef BCATTACK_SIMULATE_H
#define BCATTACK_SIMULATE_H

#include <array>
#include <cstdint>
#include <vector>

#include "bcattack/attack.h"

namespace bcattack {

/// SplitMix64 (Steele, Lea, Flood). Trial t of a run seeded with s draws
/// from SplitMix64(trial_seed(s, t)).
class SplitMix64 {
   public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {
    }
    std::uint64_t next();
    /// Uniform in [0, 1) from the top 53 bits.
    double uniform();

   private:
    std::uint64_t state_;
};

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

struct SimResult {
    std::uint64_t trials = 0;
    /// Passed tests (attack) or correct guesses (pe), split by bit.
    std::array<std::uint64_t, 2> successes{0, 0};
    double p_u_hat = 0.0;
    double std_err = 0.0;
    std::uint64_t seed = 0;
    /// Per outcome (decomposition element, or Bob's guess in pe mode).
    std::vector<std::uint64_t> outcome_counts;
    std::vector<std::uint64_t> outcome_passes;
    /// Exact outcome and conditional pass probabilities the trials sample.
    std::vector<double> outcome_probs;
    std::vector<double> outcome_pass_probs;
};

/// Runs the full coherent attack through a purification of rho: Alice
/// measures the transposed generating POVM on her half, announces, and Bob
/// tests for the announced state.
SimResult hjw_simulate(const CheatStrategy &strategy, const ProtocolSpec &protocol, int target_bit,
                       std::uint64_t trials, std::uint64_t seed);

/// Honest Alice against Bob's Helstrom measurement.
SimResult simulate_pe(const ProtocolSpec &protocol, std::uint64_t trials, std::uint64_t seed);

/// (p_hat - expected) / std_err, with the exact-binomial error of `expected`
/// used when the sample error vanishes.
double z_score(const SimResult &result, double expected);

}  // namespace bcattack

#endif
