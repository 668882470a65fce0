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

#include "bcattack/simulate.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bcattack/error.h"
#include "bcattack/estimation.h"
#include "bcattack/general_density.h"

namespace bcattack {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr double kSnap = 1e-12;

double snap_probability(double p) {
    p = std::clamp(p, 0.0, 1.0);
    if (p < kSnap) return 0.0;
    if (p > 1.0 - kSnap) return 1.0;
    return p;
}

std::size_t sample_index(double u, const std::vector<double> &probs) {
    double total = 0.0;
    for (double p : probs) total += p;
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        if (probs[k] <= 0.0) continue;
        last = k;
        acc += probs[k] / total;
        if (u < acc) return k;
    }
    return last;
}

// A (x) I_2.
ComplexMatrixX kron_identity(const ComplexMatrix2 &a) {
    ComplexMatrixX out = ComplexMatrixX::Zero(4, 4);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block(2 * i, 2 * j, 2, 2) = a(i, j) * ComplexMatrixX::Identity(2, 2);
        }
    }
    return out;
}

void finish(SimResult &r) {
    const std::uint64_t total = r.successes[0] + r.successes[1];
    r.p_u_hat = r.trials ? static_cast<double>(total) / static_cast<double>(r.trials) : 0.0;
    r.std_err = r.trials ? std::sqrt(r.p_u_hat * (1.0 - r.p_u_hat) / static_cast<double>(r.trials)) : 0.0;
}

}  // namespace

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += kGolden);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
    SplitMix64 mix(seed + trial * kGolden);
    return mix.next();
}

SimResult hjw_simulate(const CheatStrategy &strategy, const ProtocolSpec &protocol, int target_bit,
                       std::uint64_t trials, std::uint64_t seed) {
    if (target_bit != 0 && target_bit != 1) {
        throw Error(ErrorCode::kInvalidArgument, "target bit must be 0 or 1");
    }
    if (trials < 1) {
        throw Error(ErrorCode::kInvalidArgument, "need at least one trial");
    }
    const UnveilStrategy &plan = strategy.unveil[target_bit];
    const auto states = protocol.states(target_bit);
    if (plan.announce.size() != plan.decomposition.size()) {
        throw Error(ErrorCode::kInvalidArgument, "announcement map does not cover every element");
    }

    // Schmidt form sum_j sqrt(l_j) |j>_A |e_j>_B over the support of rho.
    const JacobiEigen eig = jacobi_eigen(strategy.rho.matrix());
    ComplexVectorX psi = ComplexVectorX::Zero(4);
    std::vector<int> support;
    for (int j = 0; j < 2; ++j) {
        if (eig.values(j) > kIdentityTol) {
            support.push_back(j);
            psi.segment(2 * j, 2) = std::sqrt(eig.values(j)) * eig.vectors.col(j);
        }
    }
    const GeneralDensity joint = GeneralDensity::pure(psi);
    const ComplexMatrixX reduced = partial_trace_first(joint.matrix(), 2, 2);
    if ((reduced - strategy.rho.matrix()).cwiseAbs().maxCoeff() > 1e-12) {
        throw Error(ErrorCode::kInternalMismatch, "purification does not reduce to rho");
    }

    // Alice measures E_k^T, transposed in the eigenbasis of rho.
    const Povm generating = decomposition_to_povm(plan.decomposition);
    SimResult result;
    result.trials = trials;
    result.seed = seed;
    const std::size_t n = generating.size();
    result.outcome_counts.assign(n, 0);
    result.outcome_passes.assign(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        ComplexMatrix2 a = ComplexMatrix2::Zero();
        for (int i : support) {
            for (int j : support) {
                const Complex eji =
                    eig.vectors.col(j).dot(ComplexMatrix2(generating.elements()[k]) * eig.vectors.col(i));
                a(i, j) = eji;
            }
        }
        const double p = psi.dot(kron_identity(a) * psi).real();
        double pass = 0.0;
        if (p > kSnap) {
            const ComplexMatrixX root = psd_sqrt(ComplexMatrixX(a));
            ComplexMatrix2 root2 = root;
            const ComplexVectorX after = kron_identity(root2) * psi;
            const ComplexMatrixX bob = partial_trace_first(after * after.adjoint(), 2, 2) / after.squaredNorm();
            const Ket2 target = states.at(plan.announce[k]).ket();
            pass = target.dot(ComplexMatrix2(bob) * target).real();
        }
        result.outcome_probs.push_back(snap_probability(p));
        result.outcome_pass_probs.push_back(snap_probability(pass));
    }

    for (std::uint64_t t = 0; t < trials; ++t) {
        SplitMix64 rng(trial_seed(seed, t));
        const std::size_t k = sample_index(rng.uniform(), result.outcome_probs);
        ++result.outcome_counts[k];
        if (rng.uniform() < result.outcome_pass_probs[k]) {
            ++result.outcome_passes[k];
            ++result.successes[target_bit];
        }
    }
    finish(result);
    return result;
}

SimResult simulate_pe(const ProtocolSpec &protocol, std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) {
        throw Error(ErrorCode::kInvalidArgument, "need at least one trial");
    }
    const std::array<DensityOperator, 2> rho{protocol.honest_density(0), protocol.honest_density(1)};
    const HelstromMeasurement m = helstrom_povm(rho[0], rho[1]);
    const ComplexMatrix2 &e0 = m.povm.elements()[0];

    SimResult result;
    result.trials = trials;
    result.seed = seed;
    result.outcome_counts.assign(2, 0);
    result.outcome_passes.assign(2, 0);
    for (int g = 0; g < 2; ++g) {
        const ComplexMatrix2 &e = m.povm.elements()[g];
        const double pg = 0.5 * (trace_product(e, rho[0].matrix()) + trace_product(e, rho[1].matrix()));
        result.outcome_probs.push_back(snap_probability(pg));
        result.outcome_pass_probs.push_back(pg > kSnap ? snap_probability(0.5 * trace_product(e, rho[g].matrix()) / pg)
                                                       : 0.0);
    }

    std::array<std::vector<double>, 2> priors;
    for (int b = 0; b < 2; ++b) {
        for (const auto &h : protocol.bit(b)) {
            priors[b].push_back(h.p);
        }
    }
    for (std::uint64_t t = 0; t < trials; ++t) {
        SplitMix64 rng(trial_seed(seed, t));
        const int b = rng.uniform() < 0.5 ? 0 : 1;
        const std::size_t k = sample_index(rng.uniform(), priors[b]);
        const Ket2 psi = protocol.bit(b)[k].state.ket();
        const double p0 = snap_probability(psi.dot(e0 * psi).real());
        const int guess = rng.uniform() < p0 ? 0 : 1;
        ++result.outcome_counts[guess];
        if (guess == b) {
            ++result.outcome_passes[guess];
            ++result.successes[b];
        }
    }
    finish(result);
    return result;
}

double z_score(const SimResult &result, double expected) {
    double se = result.std_err;
    if (se == 0.0 && result.trials > 0) {
        se = std::sqrt(expected * (1.0 - expected) / static_cast<double>(result.trials));
    }
    const double diff = result.p_u_hat - expected;
    if (se == 0.0) {
        return std::abs(diff) <= 1e-12 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
    }
    return diff / se;
}

}  // namespace bcattack
