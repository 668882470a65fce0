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

#include "bcattack/estimation.h"

#include <cmath>
#include <sstream>

#include "bcattack/error.h"

namespace bcattack {

double helstrom_pe(const DensityOperator &rho0, const DensityOperator &rho1) {
    return 0.5 + 0.5 * trace_distance(rho0, rho1);
}

double discrimination_success(const DensityOperator &rho0, const DensityOperator &rho1, const Povm &povm) {
    if (povm.size() != 2) {
        throw Error(ErrorCode::kInvalidArgument, "binary discrimination needs a two-outcome POVM");
    }
    return 0.5 * trace_product(povm.elements()[0], rho0.matrix()) +
           0.5 * trace_product(povm.elements()[1], rho1.matrix());
}

HelstromMeasurement helstrom_povm(const DensityOperator &rho0, const DensityOperator &rho1) {
    const Vec3 diff = rho0.bloch() - rho1.bloch();
    if (diff.norm() <= kValidityTol) {
        Povm povm({ComplexMatrix2::Identity(), ComplexMatrix2::Zero()});
        const double success = discrimination_success(rho0, rho1, povm);
        return {std::move(povm), true, success};
    }
    const Vec3 n = diff.normalized();
    const ComplexMatrix2 ns = n.x() * pauli::x() + n.y() * pauli::y() + n.z() * pauli::z();
    const ComplexMatrix2 e0 = 0.5 * (pauli::identity() + ns);
    const ComplexMatrix2 e1 = 0.5 * (pauli::identity() - ns);
    Povm povm({e0, e1});
    const double success = discrimination_success(rho0, rho1, povm);
    const double expected = helstrom_pe(rho0, rho1);
    if (std::abs(success - expected) > 1e-10) {
        std::ostringstream os;
        os << "Helstrom measurement achieves " << success << ", bound is " << expected;
        throw Error(ErrorCode::kInternalMismatch, os.str());
    }
    return {std::move(povm), false, success};
}

DualityImage duality_map(const DensityOperator &rho, std::span<const QubitState> states) {
    if (states.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "duality map needs at least one state");
    }
    const ComplexMatrix2 root = matrix_sqrt_psd(rho);
    DualityImage image;
    std::vector<double> norms;
    for (const auto &psi : states) {
        const Ket2 v = root * psi.ket();
        const double n2 = v.squaredNorm();
        if (n2 <= kValidityTol) {
            throw Error(ErrorCode::kSupportViolation, "state is annihilated by sqrt(rho)");
        }
        image.problem.states.push_back(QubitState::from_ket(v / std::sqrt(n2)));
        norms.push_back(n2);
        image.scale += n2;
    }
    for (double n2 : norms) {
        image.problem.priors.push_back(n2 / image.scale);
    }
    return image;
}

double duality_success(const DualityImage &image, const Povm &povm) {
    const auto &chi = image.problem.states;
    if (povm.size() != chi.size()) {
        throw Error(ErrorCode::kInvalidArgument, "POVM and estimation problem differ in size");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < chi.size(); ++k) {
        const Ket2 c = chi[k].ket();
        total += image.problem.priors[k] * c.dot(povm.elements()[k] * c).real();
    }
    return image.scale * total;
}

}  // namespace bcattack
