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

#ifndef BCATTACK_GENERAL_DENSITY_H
#define BCATTACK_GENERAL_DENSITY_H

#include <Eigen/Dense>

namespace bcattack {

using ComplexMatrixX = Eigen::MatrixXcd;
using ComplexVectorX = Eigen::VectorXcd;

inline constexpr int kMaxGeneralDim = 4;

struct JacobiEigen {
    /// Ascending.
    Eigen::VectorXd values;
    /// Eigenvectors as columns.
    ComplexMatrixX vectors;
    int sweeps = 0;
};

/// Cyclic complex Jacobi for Hermitian matrices of dimension 1..4. Stops when
/// the off-diagonal Frobenius norm drops below 1e-13.
JacobiEigen jacobi_eigen(const ComplexMatrixX &h);

/// Unique PSD square root; throws NegativeEigenvalue below -kValidityTol.
ComplexMatrixX psd_sqrt(const ComplexMatrixX &psd);

/// Density operator of dimension 2..4.
class GeneralDensity {
   public:
    explicit GeneralDensity(const ComplexMatrixX &matrix);

    static GeneralDensity pure(const ComplexVectorX &ket);

    int dim() const {
        return static_cast<int>(matrix_.rows());
    }
    const ComplexMatrixX &matrix() const {
        return matrix_;
    }
    JacobiEigen eigen() const {
        return jacobi_eigen(matrix_);
    }

   private:
    ComplexMatrixX matrix_;
};

/// Tr_A of an operator on C^dA (x) C^dB, A the leading factor.
ComplexMatrixX partial_trace_first(const ComplexMatrixX &m, int dim_a, int dim_b);

}  // namespace bcattack

#endif
