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

#include "bcattack/qubit_algebra.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bcattack/error.h"

namespace bcattack {

namespace pauli {

const ComplexMatrix2 &identity() {
    static const ComplexMatrix2 m = ComplexMatrix2::Identity();
    return m;
}

const ComplexMatrix2 &x() {
    static const ComplexMatrix2 m = (ComplexMatrix2() << 0, 1, 1, 0).finished();
    return m;
}

const ComplexMatrix2 &y() {
    static const ComplexMatrix2 m = (ComplexMatrix2() << 0, Complex(0, -1), Complex(0, 1), 0).finished();
    return m;
}

const ComplexMatrix2 &z() {
    static const ComplexMatrix2 m = (ComplexMatrix2() << 1, 0, 0, -1).finished();
    return m;
}

}  // namespace pauli

BlochVector::BlochVector(const Vec3 &r) : r_(r) {
    if (!r.allFinite() || r.norm() > 1.0 + kValidityTol) {
        std::ostringstream os;
        os << "|r| = " << r.norm() << " exceeds the unit ball";
        throw Error(ErrorCode::kBallViolation, os.str());
    }
}

Ket2 QubitState::ket() const {
    return Ket2(std::cos(theta), std::polar(std::sin(theta), phi));
}

Vec3 QubitState::bloch() const {
    const double s = std::sin(2 * theta);
    return Vec3(s * std::cos(phi), s * std::sin(phi), std::cos(2 * theta));
}

ComplexMatrix2 QubitState::projector() const {
    Ket2 k = ket();
    return k * k.adjoint();
}

QubitState QubitState::from_ket(const Ket2 &ket) {
    const double n = ket.norm();
    if (!(n > 0)) {
        throw Error(ErrorCode::kInvalidArgument, "zero ket has no state");
    }
    const double a = std::abs(ket(0)) / n;
    const double b = std::abs(ket(1)) / n;
    QubitState s;
    s.theta = std::atan2(b, a);
    s.phi = (a > 0 && b > 0) ? std::arg(ket(1)) - std::arg(ket(0)) : 0.0;
    return s;
}

QubitState QubitState::from_bloch(const Vec3 &unit) {
    const double n = unit.norm();
    if (!(n > 0)) {
        throw Error(ErrorCode::kInvalidArgument, "zero vector has no direction");
    }
    Vec3 u = unit / n;
    QubitState s;
    s.theta = 0.5 * std::acos(std::clamp(u.z(), -1.0, 1.0));
    s.phi = std::hypot(u.x(), u.y()) > 0 ? std::atan2(u.y(), u.x()) : 0.0;
    return s;
}

ComplexMatrix2 hermitian_part(const ComplexMatrix2 &m) {
    return 0.5 * (m + m.adjoint());
}

HermitianEigen2 hermitian_eigen(const ComplexMatrix2 &m) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const Complex b = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
    const double mean = 0.5 * (a + d);
    const double delta = 0.5 * (a - d);
    const double rad = std::hypot(delta, std::abs(b));

    HermitianEigen2 e;
    e.values = {mean - rad, mean + rad};
    if (rad == 0.0) {
        e.vectors = ComplexMatrix2::Identity();
        return e;
    }
    // Pick the better-conditioned of the two equivalent null-space vectors.
    Ket2 up = delta >= 0 ? Ket2(rad + delta, std::conj(b)) : Ket2(b, rad - delta);
    up.normalize();
    Ket2 down(-std::conj(up(1)), std::conj(up(0)));
    e.vectors.col(0) = down;
    e.vectors.col(1) = up;
    return e;
}

DensityOperator::DensityOperator(const ComplexMatrix2 &matrix) {
    if (!matrix.allFinite()) {
        throw Error(ErrorCode::kInvalidDensity, "non-finite entry");
    }
    const double herm_err = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm_err > kValidityTol) {
        throw Error(ErrorCode::kInvalidDensity, "not Hermitian (error " + std::to_string(herm_err) + ")");
    }
    m_ = hermitian_part(matrix);
    const double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > kValidityTol) {
        throw Error(ErrorCode::kInvalidDensity, "trace " + std::to_string(tr) + " != 1");
    }
    const auto e = hermitian_eigen(m_);
    if (e.values[0] < -kValidityTol) {
        throw Error(ErrorCode::kInvalidDensity, "negative eigenvalue " + std::to_string(e.values[0]));
    }
}

DensityOperator DensityOperator::pure(const QubitState &state) {
    return DensityOperator(state.projector());
}

DensityOperator DensityOperator::maximally_mixed() {
    return DensityOperator(0.5 * pauli::identity());
}

Vec3 DensityOperator::bloch() const {
    return Vec3(2 * m_(1, 0).real(), 2 * m_(1, 0).imag(), (m_(0, 0) - m_(1, 1)).real());
}

double DensityOperator::purity() const {
    return trace_product(m_, m_);
}

bool DensityOperator::is_pure(double tol) const {
    return hermitian_eigen(m_).values[0] <= tol;
}

double DensityOperator::expectation(const Ket2 &ket) const {
    return (ket.adjoint() * m_ * ket)(0, 0).real();
}

double DensityOperator::expectation(const QubitState &state) const {
    return expectation(state.ket());
}

DensityOperator bloch_to_density(const BlochVector &r) {
    const Vec3 &v = r.vec();
    ComplexMatrix2 m = 0.5 * (pauli::identity() + v.x() * pauli::x() + v.y() * pauli::y() + v.z() * pauli::z());
    return DensityOperator(m);
}

BlochVector density_to_bloch(const DensityOperator &rho) {
    const ComplexMatrix2 &m = rho.matrix();
    Vec3 r(trace_product(m, pauli::x()), trace_product(m, pauli::y()), trace_product(m, pauli::z()));
    return BlochVector(r);
}

double trace_product(const ComplexMatrix2 &a, const ComplexMatrix2 &b) {
    return (a * b).trace().real();
}

double overlap(const DensityOperator &rho1, const DensityOperator &rho2) {
    return trace_product(rho1.matrix(), rho2.matrix());
}

double trace_distance(const DensityOperator &rho0, const DensityOperator &rho1) {
    const auto e = hermitian_eigen(rho0.matrix() - rho1.matrix());
    const double by_eigen = 0.5 * (std::abs(e.values[0]) + std::abs(e.values[1]));
    const double by_bloch = 0.5 * (rho0.bloch() - rho1.bloch()).norm();
    if (std::abs(by_eigen - by_bloch) > 1e-10) {
        std::ostringstream os;
        os << "eigenvalue route " << by_eigen << " vs Bloch route " << by_bloch;
        throw Error(ErrorCode::kInternalMismatch, os.str());
    }
    return by_bloch;
}

ComplexMatrix2 matrix_sqrt_psd(const ComplexMatrix2 &psd) {
    const auto e = hermitian_eigen(psd);
    if (e.values[0] < -kValidityTol) {
        throw Error(ErrorCode::kNegativeEigenvalue, "eigenvalue " + std::to_string(e.values[0]));
    }
    ComplexMatrix2 out = ComplexMatrix2::Zero();
    for (int k = 0; k < 2; ++k) {
        const double s = std::sqrt(std::max(e.values[k], 0.0));
        out += s * e.vectors.col(k) * e.vectors.col(k).adjoint();
    }
    return out;
}

ComplexMatrix2 matrix_sqrt_psd(const DensityOperator &rho) {
    return matrix_sqrt_psd(rho.matrix());
}

}  // namespace bcattack
