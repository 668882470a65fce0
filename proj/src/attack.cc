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

#include "bcattack/attack.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include <Eigen/LU>

#include "bcattack/error.h"
#include "bcattack/estimation.h"

namespace bcattack {

namespace {

constexpr double kTieTol = 1e-9;
constexpr double kFamilyTol = 1e-9;

double max_abs(const ComplexMatrix2 &m) {
    return m.cwiseAbs().maxCoeff();
}

std::vector<HonestState> load_set(const std::vector<ProtocolSpec::Entry> &entries, int b) {
    if (entries.empty() || entries.size() > 2) {
        throw Error(ErrorCode::kUnsupportedSetSize,
                    "bit " + std::to_string(b) + " has " + std::to_string(entries.size()) + " states, expected 1 or 2");
    }
    std::vector<HonestState> out;
    double total = 0.0;
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const double p = entries[k].first;
        if (!(p >= -kValidityTol && p <= 1.0 + kValidityTol)) {
            throw Error(ErrorCode::kInvalidArgument, "bit " + std::to_string(b) + " has a probability outside [0,1]");
        }
        total += p;
        out.push_back({p, entries[k].second, k});
    }
    if (std::abs(total - 1.0) > kValidityTol) {
        throw Error(ErrorCode::kInvalidArgument, "bit " + std::to_string(b) + " probabilities sum to " +
                                                     std::to_string(total));
    }
    if (out.size() == 2 && (out[0].state.bloch() - out[1].state.bloch()).norm() <= kValidityTol) {
        throw Error(ErrorCode::kDegenerateStates, "bit " + std::to_string(b) + " lists the same state twice");
    }
    return out;
}

// Moves the closest cross-set pair of Bloch points to index 0 of each set.
// Ties keep the earlier pair in loaded order.
void apply_overlap_convention(std::array<std::vector<HonestState>, 2> &bits) {
    std::size_t best_i = 0;
    std::size_t best_j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < bits[0].size(); ++i) {
        for (std::size_t j = 0; j < bits[1].size(); ++j) {
            const double dist = (bits[0][i].state.bloch() - bits[1][j].state.bloch()).norm();
            if (dist < best - 1e-12) {
                best = dist;
                best_i = i;
                best_j = j;
            }
        }
    }
    if (best_i != 0) {
        std::swap(bits[0][0], bits[0][best_i]);
    }
    if (best_j != 0) {
        std::swap(bits[1][0], bits[1][best_j]);
    }
}

Vec3 chord_direction(std::span<const Vec3> pts) {
    return (pts[0] - pts[1]).normalized();
}

DecompositionElement pure_element(double weight, const Vec3 &s) {
    if (weight < kZeroWeight) {
        return {std::max(weight, 0.0), std::nullopt};
    }
    return {weight, DensityOperator::pure(QubitState::from_bloch(s.normalized()))};
}

Vec3 clip_to_ball(const Vec3 &r) {
    const double n = r.norm();
    return n > 1.0 ? Vec3(r / n) : r;
}

void check_family(const ProtocolSpec &protocol, const OptimalFamily &family) {
    const double v0 = p_u_at(family.at(0.0), protocol);
    double spread = 0.0;
    for (int i = 1; i < 16; ++i) {
        const double lambda = family.lambda_max * i / 15.0;
        spread = std::max(spread, std::abs(p_u_at(clip_to_ball(family.at(lambda)), protocol) - v0));
    }
    if (spread >= kFamilyTol) {
        std::ostringstream os;
        os << "P_U varies by " << spread << " along the optimal family";
        throw Error(ErrorCode::kInternalMismatch, os.str());
    }
}

AttackReport build_report(const ProtocolSpec &protocol, const Vec3 &r, CaseTag tag, std::optional<OptimalFamily> family) {
    const Vec3 point = clip_to_ball(r);
    DensityOperator rho = bloch_to_density(BlochVector(point));
    std::array<double, 2> values{};
    std::vector<UnveilStrategy> unveil;
    for (int b = 0; b < 2; ++b) {
        const auto states = protocol.states(b);
        auto opt = optimal_decomposition_fixed_rho(rho, states);
        values[b] = opt.value;
        unveil.push_back(std::move(opt.strategy));
    }
    double pu = 0.5 * (values[0] + values[1]);
    if (tag == CaseTag::kCertainty) {
        pu = 1.0;
    } else if (tag == CaseTag::kSingleSingleOrthogonal) {
        pu = 0.5;
    }
    return AttackReport{pu,
                        values,
                        BlochVector(point),
                        std::move(family),
                        tag,
                        CheatStrategy{std::move(rho), {std::move(unveil[0]), std::move(unveil[1])}}};
}

AttackReport optimal_double_double(const ProtocolSpec &protocol) {
    const auto p0 = protocol.bloch_points(0);
    const auto p1 = protocol.bloch_points(1);
    const GeometryFrame frame = GeometryFrame::from_protocol(protocol);
    const Vec3 midpoint = (p0[0] + p1[0]).normalized();
    if (frame.parallel) {
        OptimalFamily family{BlochVector(midpoint), -frame.d0, 2.0 * midpoint.dot(frame.d0)};
        check_family(protocol, family);
        return build_report(protocol, midpoint, CaseTag::kParallelFamily, family);
    }
    const double m = (p0[0] + p1[0]).dot(frame.n);
    const double x2 = m / std::hypot(m, frame.gamma0 + frame.gamma1);
    const double c = std::sqrt(std::max(0.0, 1.0 - x2 * x2));
    const double x0 = p1[0].dot(frame.d1_perp) / frame.gamma1 * c;
    const double x1 = p0[0].dot(frame.d0_perp) / frame.gamma0 * c;
    Eigen::Matrix3d basis;
    basis.row(0) = frame.d1_perp.transpose();
    basis.row(1) = frame.d0_perp.transpose();
    basis.row(2) = frame.n.transpose();
    const Vec3 r_max = basis.fullPivLu().solve(Vec3(x0, x1, x2));
    if (r_max.norm() <= 1.0 + 1e-12) {
        return build_report(protocol, r_max, CaseTag::kInteriorMax, std::nullopt);
    }
    const bool tie = std::abs((p0[0] - p1[0]).norm() - (p0[1] - p1[1]).norm()) <= kTieTol;
    if (tie) {
        std::ostringstream os;
        os << "no unique closest pair but the stationary point has |r| = " << r_max.norm();
        throw Error(ErrorCode::kInternalMismatch, os.str());
    }
    return build_report(protocol, midpoint, CaseTag::kSurfaceMidpoint, std::nullopt);
}

AttackReport optimal_single_double(const ProtocolSpec &protocol) {
    const Vec3 a0 = protocol.bloch_points(0)[0];
    const auto p1 = protocol.bloch_points(1);
    const Vec3 midpoint = (a0 + p1[0]).normalized();
    const bool symmetric = std::abs((a0 - p1[0]).norm() - (a0 - p1[1]).norm()) <= kTieTol;
    if (!symmetric) {
        return build_report(protocol, midpoint, CaseTag::kSingleDoubleAsymmetric, std::nullopt);
    }
    const Vec3 d1 = chord_direction(p1);
    OptimalFamily family{BlochVector(midpoint), -d1, 2.0 * midpoint.dot(d1)};
    check_family(protocol, family);
    return build_report(protocol, midpoint, CaseTag::kSingleDoubleSymmetric, family);
}

AttackReport optimal_single_single(const ProtocolSpec &protocol) {
    const Vec3 a0 = protocol.bloch_points(0)[0];
    const Vec3 a1 = protocol.bloch_points(1)[0];
    if (a0.dot(a1) <= -1.0 + kValidityTol) {
        return build_report(protocol, Vec3::Zero(), CaseTag::kSingleSingleOrthogonal, std::nullopt);
    }
    return build_report(protocol, (a0 + a1).normalized(), CaseTag::kSingleSingle, std::nullopt);
}

}  // namespace

ProtocolSpec ProtocolSpec::make(std::string name, const std::vector<Entry> &bit0, const std::vector<Entry> &bit1) {
    ProtocolSpec spec;
    spec.name_ = std::move(name);
    spec.bits_ = {load_set(bit0, 0), load_set(bit1, 1)};
    apply_overlap_convention(spec.bits_);
    if (spec.n(0) == 2 && spec.n(1) == 2) {
        const auto p0 = spec.bloch_points(0);
        const auto p1 = spec.bloch_points(1);
        const Vec3 d0 = chord_direction(p0);
        const Vec3 d1 = chord_direction(p1);
        if (d0.cross(d1).norm() < kParallelTol && d0.dot(d1) < 0) {
            std::swap(spec.bits_[1][0], spec.bits_[1][1]);
            apply_overlap_convention(spec.bits_);
        }
    }
    return spec;
}

std::vector<QubitState> ProtocolSpec::states(int b) const {
    std::vector<QubitState> out;
    for (const auto &h : bit(b)) {
        out.push_back(h.state);
    }
    return out;
}

std::vector<Vec3> ProtocolSpec::bloch_points(int b) const {
    std::vector<Vec3> out;
    for (const auto &h : bit(b)) {
        out.push_back(h.state.bloch());
    }
    return out;
}

DensityOperator ProtocolSpec::honest_density(int b) const {
    ComplexMatrix2 m = ComplexMatrix2::Zero();
    for (const auto &h : bit(b)) {
        m += h.p * h.state.projector();
    }
    return DensityOperator(m / m.trace().real());
}

ProtocolSpec ProtocolSpec::swapped() const {
    ProtocolSpec out = *this;
    std::swap(out.bits_[0], out.bits_[1]);
    return out;
}

double p_ub(const DensityOperator &rho, const ConvexDecomposition &decomp, std::span<const std::size_t> announce,
            std::span<const QubitState> states) {
    if (max_abs(decomp.parent().matrix() - rho.matrix()) > kValidityTol) {
        throw Error(ErrorCode::kParentMismatch, "decomposition is not a decomposition of rho");
    }
    if (announce.size() != decomp.size()) {
        throw Error(ErrorCode::kInvalidArgument, "announcement map does not cover every element");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < decomp.size(); ++k) {
        const auto &el = decomp.elements()[k];
        if (!el.state) {
            continue;
        }
        if (announce[k] >= states.size()) {
            throw Error(ErrorCode::kInvalidArgument, "announced state index out of range");
        }
        total += el.weight * el.state->expectation(states[announce[k]]);
    }
    return total;
}

double p_u(const CheatStrategy &strategy, const ProtocolSpec &protocol) {
    double total = 0.0;
    for (int b = 0; b < 2; ++b) {
        const auto &u = strategy.unveil[b];
        const auto states = protocol.states(b);
        total += 0.5 * p_ub(strategy.rho, u.decomposition, u.announce, states);
    }
    return total;
}

double p_ub_max_at(const Vec3 &r, std::span<const Vec3> points) {
    if (points.size() == 1) {
        return 0.5 * (1.0 + r.dot(points[0]));
    }
    if (points.size() != 2) {
        throw Error(ErrorCode::kUnsupportedSetSize, "closed form covers sets of 1 or 2 states");
    }
    const Vec3 d = chord_direction(points);
    const double rd = r.dot(d);
    const double l_plus = -rd + std::sqrt(std::max(0.0, 1.0 - r.squaredNorm() + rd * rd));
    return 0.5 * (1.0 + points[0].dot(r) + l_plus * points[0].dot(d));
}

double p_u_at(const Vec3 &r, const ProtocolSpec &protocol) {
    const auto p0 = protocol.bloch_points(0);
    const auto p1 = protocol.bloch_points(1);
    return 0.5 * (p_ub_max_at(r, p0) + p_ub_max_at(r, p1));
}

FixedRhoOptimum optimal_decomposition_fixed_rho(const DensityOperator &rho, std::span<const QubitState> states) {
    if (states.empty() || states.size() > 2) {
        throw Error(ErrorCode::kUnsupportedSetSize, "closed form covers sets of 1 or 2 states");
    }
    if (states.size() == 1) {
        return {{ConvexDecomposition::trivial(rho), {0}}, rho.expectation(states[0])};
    }
    const Vec3 a1 = states[0].bloch();
    const Vec3 a2 = states[1].bloch();
    if ((a1 - a2).norm() <= kValidityTol) {
        throw Error(ErrorCode::kDegenerateStates, "the two states coincide");
    }
    if (rho.is_pure()) {
        const double e1 = rho.expectation(states[0]);
        const double e2 = rho.expectation(states[1]);
        const std::size_t k = e2 > e1 + kIdentityTol ? 1 : 0;
        return {{ConvexDecomposition::trivial(rho), {k}}, std::max(e1, e2)};
    }
    const Vec3 r = rho.bloch();
    const Vec3 d = (a1 - a2).normalized();
    const double rd = r.dot(d);
    const double root = std::sqrt(std::max(0.0, 1.0 - r.squaredNorm() + rd * rd));
    const double l_plus = -rd + root;
    const double l_minus = -rd - root;
    const double q1 = -l_minus / (l_plus - l_minus);
    const double q2 = l_plus / (l_plus - l_minus);
    std::vector<DecompositionElement> elements{pure_element(q1, r + l_plus * d), pure_element(q2, r + l_minus * d)};
    ConvexDecomposition decomp(rho, std::move(elements));
    const double value = 0.5 * (1.0 + a1.dot(r) + l_plus * a1.dot(d));
    return {{std::move(decomp), {0, 1}}, value};
}

const char *case_tag_name(CaseTag tag) {
    switch (tag) {
        case CaseTag::kCertainty:
            return "certainty";
        case CaseTag::kParallelFamily:
            return "parallel-family";
        case CaseTag::kInteriorMax:
            return "interior-max";
        case CaseTag::kSurfaceMidpoint:
            return "surface-midpoint";
        case CaseTag::kSingleSingleOrthogonal:
            return "single-single-orthogonal";
        case CaseTag::kSingleSingle:
            return "single-single";
        case CaseTag::kSingleDoubleSymmetric:
            return "single-double-symmetric";
        case CaseTag::kSingleDoubleAsymmetric:
            return "single-double-asymmetric";
    }
    return "unknown";
}

GeometryFrame GeometryFrame::from_protocol(const ProtocolSpec &protocol) {
    if (protocol.n(0) != 2 || protocol.n(1) != 2) {
        throw Error(ErrorCode::kUnsupportedSetSize, "geometry frame needs two states per bit");
    }
    const auto p0 = protocol.bloch_points(0);
    const auto p1 = protocol.bloch_points(1);
    GeometryFrame f;
    f.d0 = chord_direction(p0);
    f.d1 = chord_direction(p1);
    const Vec3 cross = f.d0.cross(f.d1);
    f.parallel = cross.norm() < kParallelTol;
    if (f.parallel) {
        return f;
    }
    f.n = cross.normalized();
    f.d0_perp = f.d0.cross(f.n);
    f.d1_perp = f.d1.cross(f.n);
    f.gamma0 = std::sqrt(std::max(0.0, 1.0 - std::pow(p0[0].dot(f.n), 2)));
    f.gamma1 = std::sqrt(std::max(0.0, 1.0 - std::pow(p1[0].dot(f.n), 2)));
    return f;
}

AttackReport optimal_rho(const ProtocolSpec &protocol) {
    if (protocol.n(0) == 2 && protocol.n(1) == 1) {
        AttackReport r = optimal_rho(protocol.swapped());
        std::swap(r.strategy.unveil[0], r.strategy.unveil[1]);
        std::swap(r.p_ub[0], r.p_ub[1]);
        return r;
    }
    const StatePolytope set0(protocol.bloch_points(0));
    const StatePolytope set1(protocol.bloch_points(1));
    if (const auto hit = certainty_region(set0, set1)) {
        return build_report(protocol, hit->vec(), CaseTag::kCertainty, std::nullopt);
    }
    if (protocol.n(0) == 2) {
        return optimal_double_double(protocol);
    }
    if (protocol.n(1) == 2) {
        return optimal_single_double(protocol);
    }
    return optimal_single_single(protocol);
}

double p_u_max(const ProtocolSpec &protocol) {
    return optimal_rho(protocol).p_u_max;
}

TradeoffPoint tradeoff_point(const ProtocolSpec &protocol) {
    return {helstrom_pe(protocol.honest_density(0), protocol.honest_density(1)), p_u_max(protocol)};
}

}  // namespace bcattack
