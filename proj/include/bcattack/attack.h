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

#ifndef BCATTACK_ATTACK_H
#define BCATTACK_ATTACK_H

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bcattack/decomp.h"
#include "bcattack/qubit_algebra.h"

namespace bcattack {

/// Threshold on |d0 x d1| below which two chords count as parallel.
inline constexpr double kParallelTol = 1e-9;

struct HonestState {
    double p = 1.0;
    QubitState state;
    /// Position of this state in the set as it was loaded.
    std::size_t source_index = 0;
};

/// Two honest state sets of size 1 or 2. make() validates them and applies
/// the overlap convention: the closest cross-set pair of Bloch points becomes
/// index 0 in both sets, and an anti-parallel second chord is flipped.
class ProtocolSpec {
   public:
    using Entry = std::pair<double, QubitState>;

    static ProtocolSpec make(std::string name, const std::vector<Entry> &bit0, const std::vector<Entry> &bit1);

    const std::string &name() const {
        return name_;
    }
    const std::vector<HonestState> &bit(int b) const {
        return bits_.at(b);
    }
    std::size_t n(int b) const {
        return bits_.at(b).size();
    }
    std::vector<QubitState> states(int b) const;
    std::vector<Vec3> bloch_points(int b) const;
    DensityOperator honest_density(int b) const;
    /// The same protocol with the bit labels exchanged.
    ProtocolSpec swapped() const;

   private:
    std::string name_;
    std::array<std::vector<HonestState>, 2> bits_;
};

/// Alice's plan for unveiling one bit: a decomposition of rho and, for every
/// element, the index of the honest state she announces.
struct UnveilStrategy {
    ConvexDecomposition decomposition;
    std::vector<std::size_t> announce;
};

struct CheatStrategy {
    DensityOperator rho;
    std::array<UnveilStrategy, 2> unveil;
};

/// sum_k q_k <psi_a(k)|sigma_k|psi_a(k)>.
double p_ub(const DensityOperator &rho, const ConvexDecomposition &decomp, std::span<const std::size_t> announce,
            std::span<const QubitState> states);

/// Average of the two per-bit unveiling probabilities.
double p_u(const CheatStrategy &strategy, const ProtocolSpec &protocol);

/// Best unveiling probability for one bit at Bloch point r, from the closed
/// form (points: 1 or 2 unit vectors).
double p_ub_max_at(const Vec3 &r, std::span<const Vec3> points);

/// Average of p_ub_max_at over both bits.
double p_u_at(const Vec3 &r, const ProtocolSpec &protocol);

struct FixedRhoOptimum {
    UnveilStrategy strategy;
    double value = 0.0;
};

/// Optimal decomposition of rho for unveiling a set of one or two states.
FixedRhoOptimum optimal_decomposition_fixed_rho(const DensityOperator &rho, std::span<const QubitState> states);

enum class CaseTag {
    kCertainty,
    kParallelFamily,
    kInteriorMax,
    kSurfaceMidpoint,
    kSingleSingleOrthogonal,
    kSingleSingle,
    kSingleDoubleSymmetric,
    kSingleDoubleAsymmetric,
};

const char *case_tag_name(CaseTag tag);

struct GeometryFrame {
    Vec3 d0;
    Vec3 d1;
    bool parallel = false;
    // Defined only when the chords are not parallel.
    Vec3 n = Vec3::Zero();
    Vec3 d0_perp = Vec3::Zero();
    Vec3 d1_perp = Vec3::Zero();
    double gamma0 = 0.0;
    double gamma1 = 0.0;

    /// Requires two states in each bit.
    static GeometryFrame from_protocol(const ProtocolSpec &protocol);
};

/// r(lambda) = base + lambda * direction for lambda in [0, lambda_max].
struct OptimalFamily {
    BlochVector base;
    Vec3 direction;
    double lambda_max = 0.0;

    Vec3 at(double lambda) const {
        return base.vec() + lambda * direction;
    }
};

struct AttackReport {
    double p_u_max = 0.5;
    std::array<double, 2> p_ub{0.5, 0.5};
    BlochVector rho_opt;
    std::optional<OptimalFamily> family;
    CaseTag case_tag = CaseTag::kSingleSingle;
    CheatStrategy strategy;
};

/// Globally optimal coherent attack.
AttackReport optimal_rho(const ProtocolSpec &protocol);

double p_u_max(const ProtocolSpec &protocol);

struct TradeoffPoint {
    double pe_max = 0.5;
    double pu_max = 0.5;
};

TradeoffPoint tradeoff_point(const ProtocolSpec &protocol);

}  // namespace bcattack

#endif
