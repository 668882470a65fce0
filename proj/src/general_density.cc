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

#include "bcattack/general_density.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "bcattack/error.h"
#include "bcattack/qubit_algebra.h"

namespace bcattack {

namespace {

constexpr double kOffDiagonalStop = 1e-13;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const ComplexMatrixX &a) {
    double sum = 0.0;
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            if (i != j) {
                sum += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(sum);
}

}  // namespace

JacobiEigen jacobi_eigen(const ComplexMatrixX &h) {
    const int n = static_cast<int>(h.rows());
    if (n < 1 || n > kMaxGeneralDim || h.cols() != n) {
        throw Error(ErrorCode::kInvalidArgument, "jacobi_eigen supports square matrices up to 4x4");
    }
    ComplexMatrixX a = 0.5 * (h + h.adjoint());
    ComplexMatrixX v = ComplexMatrixX::Identity(n, n);
    int sweeps = 0;
    while (off_diagonal_norm(a) >= kOffDiagonalStop && sweeps < kMaxSweeps) {
        ++sweeps;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex g = a(p, q);
                const double mag = std::abs(g);
                if (mag < 1e-300) {
                    continue;
                }
                // Phase q so that the (p, q) entry is real, then rotate.
                const Complex phase = g / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                ComplexMatrixX rot = ComplexMatrixX::Identity(n, n);
                rot(p, p) = c;
                rot(p, q) = s;
                rot(q, p) = -s * std::conj(phase);
                rot(q, q) = c * std::conj(phase);
                a = rot.adjoint() * a * rot;
                v = v * rot;
            }
        }
    }
    if (off_diagonal_norm(a) >= kOffDiagonalStop) {
        throw Error(ErrorCode::kInternalMismatch, "Jacobi iteration did not converge");
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });
    JacobiEigen out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (int k = 0; k < n; ++k) {
        out.values(k) = a(order[k], order[k]).real();
        out.vectors.col(k) = v.col(order[k]);
    }
    out.sweeps = sweeps;
    return out;
}

ComplexMatrixX psd_sqrt(const ComplexMatrixX &psd) {
    const JacobiEigen e = jacobi_eigen(psd);
    if (e.values(0) < -kValidityTol) {
        throw Error(ErrorCode::kNegativeEigenvalue, "operator has eigenvalue " + std::to_string(e.values(0)));
    }
    const Eigen::VectorXd roots = e.values.cwiseMax(0.0).cwiseSqrt();
    return e.vectors * roots.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

GeneralDensity::GeneralDensity(const ComplexMatrixX &matrix) {
    const int n = static_cast<int>(matrix.rows());
    if (n < 2 || n > kMaxGeneralDim || matrix.cols() != n) {
        throw Error(ErrorCode::kInvalidDensity, "dimension must be 2..4");
    }
    if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > kValidityTol) {
        throw Error(ErrorCode::kInvalidDensity, "matrix is not Hermitian");
    }
    matrix_ = 0.5 * (matrix + matrix.adjoint());
    if (std::abs(matrix_.trace().real() - 1.0) > kValidityTol) {
        throw Error(ErrorCode::kInvalidDensity, "trace is not 1");
    }
    if (jacobi_eigen(matrix_).values(0) < -kValidityTol) {
        throw Error(ErrorCode::kInvalidDensity, "matrix is not positive semidefinite");
    }
}

GeneralDensity GeneralDensity::pure(const ComplexVectorX &ket) {
    const ComplexVectorX k = ket.normalized();
    return GeneralDensity(k * k.adjoint());
}

ComplexMatrixX partial_trace_first(const ComplexMatrixX &m, int dim_a, int dim_b) {
    if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
        throw Error(ErrorCode::kInvalidArgument, "partial trace dimensions do not match");
    }
    ComplexMatrixX out = ComplexMatrixX::Zero(dim_b, dim_b);
    for (int i = 0; i < dim_a; ++i) {
        out += m.block(i * dim_b, i * dim_b, dim_b, dim_b);
    }
    return out;
}

}  // namespace bcattack
