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

#include "bcattack/support_projection.h"

#include <cmath>

#include "bcattack/attack.h"
#include "bcattack/decomp.h"
#include "bcattack/error.h"

namespace bcattack {

namespace {

constexpr double kIdentityCheck = 1e-12;

double strategy_value(const GeneralDecomposition &d, const std::vector<ComplexVectorX> &states) {
    double total = 0.0;
    for (std::size_t k = 0; k < d.weights.size(); ++k) {
        const ComplexVectorX &psi = states.at(d.announce.at(k));
        total += d.weights[k] * psi.dot(d.states[k] * psi).real();
    }
    return total;
}

void check_decomposition(const GeneralDecomposition &d, const ComplexMatrixX &parent) {
    if (d.weights.size() != d.states.size() || d.weights.size() != d.announce.size()) {
        throw Error(ErrorCode::kInvalidArgument, "decomposition fields differ in length");
    }
    ComplexMatrixX sum = ComplexMatrixX::Zero(parent.rows(), parent.cols());
    for (std::size_t k = 0; k < d.weights.size(); ++k) {
        sum += d.weights[k] * d.states[k];
    }
    if ((sum - parent).cwiseAbs().maxCoeff() > kValidityTol) {
        throw Error(ErrorCode::kParentMismatch, "decomposition does not sum to rho*");
    }
}

}  // namespace

SupportProjectionReport support_projection_check(const SupportProjectionInput &in) {
    const ComplexMatrixX &rho_star = in.rho_star.matrix();
    if (in.rho_star.dim() != 3 || in.plane.rows() != 3 || in.plane.cols() != 2) {
        throw Error(ErrorCode::kInvalidArgument, "support projection is checked at d = 3 with a 2-d plane");
    }
    if ((in.plane.adjoint() * in.plane - ComplexMatrixX::Identity(2, 2)).cwiseAbs().maxCoeff() > kValidityTol) {
        throw Error(ErrorCode::kInvalidArgument, "plane basis is not orthonormal");
    }
    const ComplexMatrixX g = in.plane * in.plane.adjoint();
    for (const auto &set : in.states) {
        for (const auto &psi : set) {
            if ((psi - g * psi).norm() > kValidityTol || std::abs(psi.norm() - 1.0) > kValidityTol) {
                throw Error(ErrorCode::kSpanViolation, "honest state leaves the plane");
            }
        }
    }

    SupportProjectionReport r;
    r.trace_g = (rho_star * g).trace().real();
    if (r.trace_g <= kValidityTol) {
        throw Error(ErrorCode::kSupportViolation, "rho* has no weight on the plane");
    }
    const ComplexMatrixX rho = g * rho_star * g / r.trace_g;
    const DensityOperator rho_qubit(ComplexMatrix2(in.plane.adjoint() * rho * in.plane));

    for (int b = 0; b < 2; ++b) {
        const GeneralDecomposition &d = in.decomps[b];
        check_decomposition(d, rho_star);
        r.p_u_star += 0.5 * strategy_value(d, in.states[b]);

        GeneralDecomposition projected;
        std::vector<DecompositionElement> qubit_elements;
        std::vector<QubitState> qubit_states;
        for (std::size_t k = 0; k < d.weights.size(); ++k) {
            const ComplexMatrixX w = g * (d.weights[k] * d.states[k]) * g / r.trace_g;
            const double q = w.trace().real();
            projected.weights.push_back(q);
            projected.states.push_back(q > kZeroWeight ? ComplexMatrixX(w / q) : ComplexMatrixX(w));
            projected.announce.push_back(d.announce[k]);
            if (q > kZeroWeight) {
                const ComplexMatrix2 sigma = in.plane.adjoint() * (w / q) * in.plane;
                qubit_elements.push_back({q, DensityOperator(sigma)});
            } else {
                qubit_elements.push_back({std::max(q, 0.0), std::nullopt});
            }
        }
        check_decomposition(projected, rho);
        r.p_u_projected += 0.5 * strategy_value(projected, in.states[b]);

        for (const auto &psi : in.states[b]) {
            qubit_states.push_back(QubitState::from_ket(Ket2(in.plane.adjoint() * psi)));
        }
        const ConvexDecomposition qubit_decomp(rho_qubit, std::move(qubit_elements));
        r.p_u_qubit += 0.5 * p_ub(rho_qubit, qubit_decomp, projected.announce, qubit_states);
    }
    r.residual = std::abs(r.p_u_projected - r.p_u_star / r.trace_g);
    r.ratio = r.p_u_star > 0 ? r.p_u_projected / r.p_u_star : 0.0;
    if (std::abs(r.p_u_qubit - r.p_u_projected) > kIdentityCheck) {
        throw Error(ErrorCode::kInternalMismatch, "qubit and embedded evaluations of P_U disagree");
    }
    return r;
}

GeneralDecomposition decomposition_from_povm(const GeneralDensity &rho, const std::vector<ComplexMatrixX> &povm) {
    const ComplexMatrixX root = psd_sqrt(rho.matrix());
    GeneralDecomposition d;
    for (std::size_t k = 0; k < povm.size(); ++k) {
        const ComplexMatrixX w = root * povm[k] * root;
        const double q = w.trace().real();
        d.weights.push_back(q);
        d.states.push_back(q > kZeroWeight ? ComplexMatrixX(w / q) : ComplexMatrixX(w));
        d.announce.push_back(k);
    }
    return d;
}

}  // namespace bcattack
