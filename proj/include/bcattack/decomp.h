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

#ifndef BCATTACK_DECOMP_H
#define BCATTACK_DECOMP_H

#include <optional>
#include <span>
#include <vector>

#include "bcattack/qubit_algebra.h"

namespace bcattack {

/// Elements whose weight falls below this carry no state.
inline constexpr double kZeroWeight = 1e-12;
/// Distance below which two polytopes (or a point and a polytope) touch.
inline constexpr double kIntersectTol = 1e-9;

struct DecompositionElement {
    double weight = 0.0;
    /// Absent when weight < kZeroWeight: sigma_k is undefined there.
    std::optional<DensityOperator> state;
};

/// rho = sum_k q_k sigma_k, with the parent rho stored alongside. The
/// constructor checks weights and the reconstruction within kValidityTol.
class ConvexDecomposition {
   public:
    ConvexDecomposition(DensityOperator parent, std::vector<DecompositionElement> elements);

    static ConvexDecomposition trivial(const DensityOperator &rho);

    const DensityOperator &parent() const {
        return parent_;
    }
    const std::vector<DecompositionElement> &elements() const {
        return elements_;
    }
    std::size_t size() const {
        return elements_.size();
    }
    /// q_k sigma_k; the zero matrix for an undefined element.
    ComplexMatrix2 weighted_element(std::size_t k) const;
    /// Max-entry error of sum_k q_k sigma_k - rho.
    double reconstruction_error() const;

   private:
    DensityOperator parent_;
    std::vector<DecompositionElement> elements_;
};

/// Positive operators summing to the identity on `support` (I, or the rank-1
/// projector onto a pure parent).
class Povm {
   public:
    explicit Povm(std::vector<ComplexMatrix2> elements);
    Povm(std::vector<ComplexMatrix2> elements, const ComplexMatrix2 &support);

    const std::vector<ComplexMatrix2> &elements() const {
        return elements_;
    }
    const ComplexMatrix2 &support() const {
        return support_;
    }
    std::size_t size() const {
        return elements_.size();
    }

   private:
    std::vector<ComplexMatrix2> elements_;
    ComplexMatrix2 support_;
};

/// Convex hull of one or two pure states on the Bloch sphere.
class StatePolytope {
   public:
    enum class Kind { kPoint, kChord };

    explicit StatePolytope(std::vector<Vec3> vertices);
    static StatePolytope from_states(std::span<const QubitState> states);

    Kind kind() const {
        return vertices_.size() == 1 ? Kind::kPoint : Kind::kChord;
    }
    const std::vector<Vec3> &vertices() const {
        return vertices_;
    }

   private:
    std::vector<Vec3> vertices_;
};

/// Projector onto the support of rho (identity when rho has rank 2).
ComplexMatrix2 support_projector(const DensityOperator &rho);

/// q = 1 / <xi| rho^{-1} |xi>, with rho^{-1} the inverse on the support.
double jaynes_weight(const DensityOperator &rho, const QubitState &xi);

/// q_k sigma_k = sqrt(rho) E_k sqrt(rho).
ConvexDecomposition povm_to_decomposition(const DensityOperator &rho, const Povm &povm);

/// E_k = q_k rho^{-1/2} sigma_k rho^{-1/2}, over the support of the parent.
Povm decomposition_to_povm(const ConvexDecomposition &decomp);

/// A point common to both polytopes, if any.
std::optional<BlochVector> certainty_region(const StatePolytope &set0, const StatePolytope &set1);

struct Decomposes {
    bool decomposed = false;
    /// Weights on the polytope's vertices, in vertex order, when decomposed.
    std::vector<double> weights;
};

Decomposes decomposes(const DensityOperator &rho, const StatePolytope &set);

}  // namespace bcattack

#endif
