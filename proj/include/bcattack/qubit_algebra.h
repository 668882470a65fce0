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

#ifndef BCATTACK_QUBIT_ALGEBRA_H
#define BCATTACK_QUBIT_ALGEBRA_H

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace bcattack {

using Complex = std::complex<double>;
using ComplexMatrix2 = Eigen::Matrix2cd;
using Ket2 = Eigen::Vector2cd;
using Vec3 = Eigen::Vector3d;

/// Tolerance on type invariants (hermiticity, trace, positivity, ball radius).
inline constexpr double kValidityTol = 1e-9;
/// Tolerance on algebraic identities that hold exactly in real arithmetic.
inline constexpr double kIdentityTol = 1e-12;

namespace pauli {
const ComplexMatrix2 &identity();
const ComplexMatrix2 &x();
const ComplexMatrix2 &y();
const ComplexMatrix2 &z();
}  // namespace pauli

/// A point of the closed unit ball. Construction throws BallViolation outside
/// the ball (beyond kValidityTol).
class BlochVector {
   public:
    BlochVector() : r_(Vec3::Zero()) {
    }
    explicit BlochVector(const Vec3 &r);
    BlochVector(double x, double y, double z) : BlochVector(Vec3(x, y, z)) {
    }

    const Vec3 &vec() const {
        return r_;
    }
    double x() const {
        return r_.x();
    }
    double y() const {
        return r_.y();
    }
    double z() const {
        return r_.z();
    }
    double norm() const {
        return r_.norm();
    }

   private:
    Vec3 r_;
};

/// Pure qubit state |theta, phi> = cos(theta)|0> + e^{i phi} sin(theta)|1>.
/// Global phase is quotiented out by storing the two angles only.
struct QubitState {
    double theta = 0.0;
    double phi = 0.0;

    Ket2 ket() const;
    Vec3 bloch() const;
    ComplexMatrix2 projector() const;

    static QubitState from_ket(const Ket2 &ket);
    static QubitState from_bloch(const Vec3 &unit);
};

/// Eigen-decomposition of a 2x2 Hermitian matrix, eigenvalues ascending and
/// eigenvectors as the columns of `vectors`.
struct HermitianEigen2 {
    std::array<double, 2> values;
    ComplexMatrix2 vectors;
};

/// Closed-form (trace/determinant) diagonalization. Only the Hermitian part of
/// `m` is used.
HermitianEigen2 hermitian_eigen(const ComplexMatrix2 &m);

ComplexMatrix2 hermitian_part(const ComplexMatrix2 &m);

/// 2x2 Hermitian, unit-trace, positive semidefinite matrix. The constructor
/// validates within kValidityTol and throws InvalidDensity otherwise.
class DensityOperator {
   public:
    explicit DensityOperator(const ComplexMatrix2 &matrix);

    static DensityOperator pure(const QubitState &state);
    static DensityOperator maximally_mixed();

    const ComplexMatrix2 &matrix() const {
        return m_;
    }
    Vec3 bloch() const;
    double purity() const;
    /// Rank one: the smaller eigenvalue is at most `tol`.
    bool is_pure(double tol = kIdentityTol) const;
    double expectation(const QubitState &state) const;
    double expectation(const Ket2 &ket) const;

   private:
    ComplexMatrix2 m_;
};

DensityOperator bloch_to_density(const BlochVector &r);
BlochVector density_to_bloch(const DensityOperator &rho);

/// Tr(rho1 rho2) = (1 + r1.r2) / 2.
double overlap(const DensityOperator &rho1, const DensityOperator &rho2);

/// Half the trace norm of rho0 - rho1. Computed from the eigenvalues of the
/// difference and from half the Bloch distance; InternalMismatch if the two
/// disagree by more than 1e-10.
double trace_distance(const DensityOperator &rho0, const DensityOperator &rho1);

/// Unique PSD square root. NegativeEigenvalue if an eigenvalue is below
/// -kValidityTol.
ComplexMatrix2 matrix_sqrt_psd(const DensityOperator &rho);
ComplexMatrix2 matrix_sqrt_psd(const ComplexMatrix2 &psd);

/// Real part of Tr(a b).
double trace_product(const ComplexMatrix2 &a, const ComplexMatrix2 &b);

}  // namespace bcattack

#endif
