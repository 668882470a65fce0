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

#include "bcattack/decomp.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bcattack/error.h"

namespace bcattack {

namespace {

double max_abs(const ComplexMatrix2 &m) {
    return m.cwiseAbs().maxCoeff();
}

// Normalizes a PSD operator W into W / Tr(W), absorbing rounding that pushes
// the smaller eigenvalue slightly negative when Tr(W) is tiny.
DensityOperator normalized_state(const ComplexMatrix2 &w) {
    ComplexMatrix2 h = hermitian_part(w);
    h /= h.trace().real();
    auto e = hermitian_eigen(h);
    if (e.values[0] < 0 && e.values[0] > -1e-6) {
        e.values[0] = 0;
        const double top = e.values[1];
        h = top * e.vectors.col(1) * e.vectors.col(1).adjoint();
        h /= h.trace().real();
    }
    return DensityOperator(h);
}

// Closest points between segments [p1,q1] and [p2,q2]; points are segments
// with coincident ends. Returns the parameters (s, t) in [0,1].
std::pair<double, double> closest_segment_params(const Vec3 &p1, const Vec3 &q1, const Vec3 &p2, const Vec3 &q2) {
    const Vec3 d1 = q1 - p1;
    const Vec3 d2 = q2 - p2;
    const Vec3 r = p1 - p2;
    const double a = d1.squaredNorm();
    const double e = d2.squaredNorm();
    const double f = d2.dot(r);
    constexpr double eps = 1e-24;
    if (a <= eps && e <= eps) {
        return {0.0, 0.0};
    }
    double s = 0.0;
    double t = 0.0;
    if (a <= eps) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = d1.dot(r);
        if (e <= eps) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = d1.dot(d2);
            const double denom = a * e - b * b;
            s = denom > eps ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    return {s, t};
}

const Vec3 &first(const StatePolytope &p) {
    return p.vertices().front();
}

const Vec3 &last(const StatePolytope &p) {
    return p.vertices().back();
}

}  // namespace

ConvexDecomposition::ConvexDecomposition(DensityOperator parent, std::vector<DecompositionElement> elements)
    : parent_(std::move(parent)), elements_(std::move(elements)) {
    if (elements_.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "empty decomposition");
    }
    double total = 0.0;
    for (const auto &el : elements_) {
        if (!(el.weight >= -kValidityTol)) {
            throw Error(ErrorCode::kInvalidArgument, "negative weight " + std::to_string(el.weight));
        }
        if (el.weight >= kZeroWeight && !el.state) {
            throw Error(ErrorCode::kInvalidArgument, "positively-weighted element without a state");
        }
        total += el.weight;
    }
    if (std::abs(total - 1.0) > kValidityTol) {
        throw Error(ErrorCode::kInvalidArgument, "weights sum to " + std::to_string(total));
    }
    const double err = reconstruction_error();
    if (err > kValidityTol) {
        std::ostringstream os;
        os << "elements reconstruct the parent only to " << err;
        throw Error(ErrorCode::kParentMismatch, os.str());
    }
}

ConvexDecomposition ConvexDecomposition::trivial(const DensityOperator &rho) {
    return ConvexDecomposition(rho, {DecompositionElement{1.0, rho}});
}

ComplexMatrix2 ConvexDecomposition::weighted_element(std::size_t k) const {
    const auto &el = elements_.at(k);
    if (!el.state) {
        return ComplexMatrix2::Zero();
    }
    return el.weight * el.state->matrix();
}

double ConvexDecomposition::reconstruction_error() const {
    ComplexMatrix2 sum = ComplexMatrix2::Zero();
    for (std::size_t k = 0; k < elements_.size(); ++k) {
        sum += weighted_element(k);
    }
    return max_abs(sum - parent_.matrix());
}

Povm::Povm(std::vector<ComplexMatrix2> elements) : Povm(std::move(elements), ComplexMatrix2::Identity()) {
}

Povm::Povm(std::vector<ComplexMatrix2> elements, const ComplexMatrix2 &support)
    : elements_(std::move(elements)), support_(hermitian_part(support)) {
    if (elements_.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "empty POVM");
    }
    if (max_abs(support_ * support_ - support_) > kValidityTol) {
        throw Error(ErrorCode::kInvalidArgument, "support is not a projector");
    }
    ComplexMatrix2 sum = ComplexMatrix2::Zero();
    for (auto &e : elements_) {
        if (max_abs(e - e.adjoint()) > kValidityTol) {
            throw Error(ErrorCode::kInvalidArgument, "POVM element is not Hermitian");
        }
        e = hermitian_part(e);
        if (hermitian_eigen(e).values[0] < -kValidityTol) {
            throw Error(ErrorCode::kInvalidArgument, "POVM element is not positive");
        }
        sum += e;
    }
    if (max_abs(sum - support_) > kValidityTol) {
        throw Error(ErrorCode::kInvalidArgument, "POVM elements do not sum to the identity on the support");
    }
}

StatePolytope::StatePolytope(std::vector<Vec3> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty() || vertices_.size() > 2) {
        throw Error(ErrorCode::kUnsupportedSetSize,
                    "polytopes have 1 or 2 vertices, got " + std::to_string(vertices_.size()));
    }
    for (const auto &v : vertices_) {
        if (std::abs(v.norm() - 1.0) > kValidityTol) {
            throw Error(ErrorCode::kInvalidArgument, "polytope vertex is not a pure state");
        }
    }
    if (vertices_.size() == 2 && (vertices_[0] - vertices_[1]).norm() <= kValidityTol) {
        throw Error(ErrorCode::kDegenerateStates, "chord endpoints coincide");
    }
}

StatePolytope StatePolytope::from_states(std::span<const QubitState> states) {
    std::vector<Vec3> v;
    v.reserve(states.size());
    for (const auto &s : states) {
        v.push_back(s.bloch());
    }
    return StatePolytope(std::move(v));
}

ComplexMatrix2 support_projector(const DensityOperator &rho) {
    if (!rho.is_pure()) {
        return ComplexMatrix2::Identity();
    }
    const auto e = hermitian_eigen(rho.matrix());
    return e.vectors.col(1) * e.vectors.col(1).adjoint();
}

double jaynes_weight(const DensityOperator &rho, const QubitState &xi) {
    const Ket2 k = xi.ket();
    const auto e = hermitian_eigen(rho.matrix());
    if (rho.is_pure()) {
        const double fidelity = std::norm(e.vectors.col(1).dot(k));
        if (fidelity < 1.0 - kValidityTol) {
            throw Error(ErrorCode::kSupportViolation, "state lies outside the rank-1 support");
        }
        return 1.0;
    }
    if (rho.expectation(k) <= kValidityTol) {
        throw Error(ErrorCode::kSupportViolation, "state is orthogonal to the support");
    }
    double inv = 0.0;
    for (int j = 0; j < 2; ++j) {
        inv += std::norm(e.vectors.col(j).dot(k)) / e.values[j];
    }
    return 1.0 / inv;
}

ConvexDecomposition povm_to_decomposition(const DensityOperator &rho, const Povm &povm) {
    const ComplexMatrix2 p = support_projector(rho);
    if (max_abs(povm.support() - p) > kValidityTol) {
        throw Error(ErrorCode::kSupportMismatch, "POVM support differs from the support of rho");
    }
    for (const auto &e : povm.elements()) {
        if (max_abs(e - p * e * p) > kValidityTol) {
            throw Error(ErrorCode::kSupportMismatch, "POVM element reaches outside the support of rho");
        }
    }
    const ComplexMatrix2 root = matrix_sqrt_psd(rho);
    std::vector<DecompositionElement> out;
    out.reserve(povm.size());
    for (const auto &e : povm.elements()) {
        const ComplexMatrix2 w = hermitian_part(root * e * root);
        const double q = w.trace().real();
        if (q < kZeroWeight) {
            out.push_back({std::max(q, 0.0), std::nullopt});
        } else {
            out.push_back({q, normalized_state(w)});
        }
    }
    return ConvexDecomposition(rho, std::move(out));
}

Povm decomposition_to_povm(const ConvexDecomposition &decomp) {
    const DensityOperator &rho = decomp.parent();
    const ComplexMatrix2 p = support_projector(rho);
    const auto e = hermitian_eigen(rho.matrix());
    ComplexMatrix2 inv_root = ComplexMatrix2::Zero();
    const int lowest = rho.is_pure() ? 1 : 0;
    for (int j = lowest; j < 2; ++j) {
        inv_root += (1.0 / std::sqrt(e.values[j])) * e.vectors.col(j) * e.vectors.col(j).adjoint();
    }
    std::vector<ComplexMatrix2> elements;
    elements.reserve(decomp.size());
    for (std::size_t k = 0; k < decomp.size(); ++k) {
        const auto &el = decomp.elements()[k];
        if (!el.state) {
            elements.push_back(ComplexMatrix2::Zero());
            continue;
        }
        const ComplexMatrix2 &s = el.state->matrix();
        if (max_abs(s - p * s * p) > kValidityTol) {
            throw Error(ErrorCode::kSupportViolation, "element " + std::to_string(k) + " leaves the support of rho");
        }
        elements.push_back(hermitian_part(el.weight * inv_root * s * inv_root));
    }
    return Povm(std::move(elements), p);
}

std::optional<BlochVector> certainty_region(const StatePolytope &set0, const StatePolytope &set1) {
    const auto [s, t] = closest_segment_params(first(set0), last(set0), first(set1), last(set1));
    const Vec3 c0 = first(set0) + s * (last(set0) - first(set0));
    const Vec3 c1 = first(set1) + t * (last(set1) - first(set1));
    if ((c0 - c1).norm() >= kIntersectTol) {
        return std::nullopt;
    }
    Vec3 mid = 0.5 * (c0 + c1);
    if (mid.norm() > 1.0) {
        mid.normalize();
    }
    return BlochVector(mid);
}

Decomposes decomposes(const DensityOperator &rho, const StatePolytope &set) {
    const Vec3 r = rho.bloch();
    Decomposes out;
    if (set.kind() == StatePolytope::Kind::kPoint) {
        if ((r - first(set)).norm() < kIntersectTol) {
            out.decomposed = true;
            out.weights = {1.0};
        }
        return out;
    }
    const Vec3 &a = first(set);
    const Vec3 &b = last(set);
    // r = q a + (1 - q) b
    const double q = std::clamp((r - b).dot(a - b) / (a - b).squaredNorm(), 0.0, 1.0);
    if ((q * a + (1 - q) * b - r).norm() < kIntersectTol) {
        out.decomposed = true;
        out.weights = {q, 1.0 - q};
    }
    return out;
}

}  // namespace bcattack
