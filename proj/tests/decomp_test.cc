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

#include <cmath>

#include <gtest/gtest.h>

#include "bcattack/error.h"
#include "test_util.h"

namespace bcattack {
namespace {

using testing::max_abs;
using testing::Rng;

constexpr double kPi = 3.14159265358979323846;

ComplexMatrix2 diag(double a, double b) {
    ComplexMatrix2 m = ComplexMatrix2::Zero();
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

ErrorCode code_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorCode::kInvalidArgument;
}

TEST(JaynesWeight, Examples) {
    EXPECT_NEAR(jaynes_weight(DensityOperator::maximally_mixed(), {0, 0}), 0.5, 1e-15);
    EXPECT_NEAR(jaynes_weight(DensityOperator::pure({0, 0}), {0, 0}), 1.0, 1e-15);
    EXPECT_NEAR(jaynes_weight(bloch_to_density(BlochVector(0, 0, 0.5)), {0, 0}), 0.75, 1e-15);
}

TEST(JaynesWeight, MatchesMatrixInverseAndBlochForm) {
    Rng rng(21);
    for (int i = 0; i < 300; ++i) {
        const auto rho = testing::random_mixed(rng);
        const auto xi = testing::random_state(rng);
        const Ket2 k = xi.ket();
        const double by_inverse = 1.0 / k.dot(rho.matrix().inverse() * k).real();
        const Vec3 r = rho.bloch();
        const double by_bloch = 0.5 * (1 - r.squaredNorm()) / (1 - r.dot(xi.bloch()));
        EXPECT_NEAR(jaynes_weight(rho, xi), by_inverse, 1e-10);
        EXPECT_NEAR(jaynes_weight(rho, xi), by_bloch, 1e-10);
    }
}

TEST(JaynesWeight, RankOneOffSupport) {
    EXPECT_EQ(code_of([] { jaynes_weight(DensityOperator::pure({0, 0}), {kPi / 2, 0}); }),
              ErrorCode::kSupportViolation);
    EXPECT_EQ(code_of([] { jaynes_weight(DensityOperator::pure({0, 0}), {kPi / 4, 0}); }),
              ErrorCode::kSupportViolation);
}

TEST(PovmToDecomposition, MaximallyMixedWithComputationalBasis) {
    const Povm povm({diag(1, 0), diag(0, 1)});
    const auto d = povm_to_decomposition(DensityOperator::maximally_mixed(), povm);
    ASSERT_EQ(d.size(), 2u);
    EXPECT_NEAR(d.elements()[0].weight, 0.5, 1e-15);
    EXPECT_NEAR(d.elements()[1].weight, 0.5, 1e-15);
    EXPECT_LT(max_abs(d.elements()[0].state->matrix() - diag(1, 0)), 1e-15);
    EXPECT_LT(max_abs(d.elements()[1].state->matrix() - diag(0, 1)), 1e-15);
}

TEST(PovmToDecomposition, IdentityGivesTrivialDecomposition) {
    Rng rng(1);
    const auto rho = testing::random_mixed(rng);
    const auto d = povm_to_decomposition(rho, Povm({ComplexMatrix2::Identity()}));
    ASSERT_EQ(d.size(), 1u);
    EXPECT_NEAR(d.elements()[0].weight, 1.0, 1e-14);
    EXPECT_LT(max_abs(d.elements()[0].state->matrix() - rho.matrix()), 1e-14);
}

TEST(PovmToDecomposition, ExplicitProducts) {
    const DensityOperator rho(diag(0.75, 0.25));
    const ComplexMatrix2 plus = QubitState{kPi / 4, 0}.projector();
    const ComplexMatrix2 minus = QubitState{kPi / 4, kPi}.projector();
    const auto d = povm_to_decomposition(rho, Povm({plus, minus}));
    const double a = std::sqrt(0.75);
    const double b = std::sqrt(0.25);
    ComplexMatrix2 w_plus;
    w_plus << 0.5 * a * a, 0.5 * a * b, 0.5 * a * b, 0.5 * b * b;
    ComplexMatrix2 w_minus;
    w_minus << 0.5 * a * a, -0.5 * a * b, -0.5 * a * b, 0.5 * b * b;
    EXPECT_NEAR(d.elements()[0].weight, 0.5, 1e-15);
    EXPECT_NEAR(d.elements()[1].weight, 0.5, 1e-15);
    EXPECT_LT(max_abs(d.weighted_element(0) - w_plus), 1e-15);
    EXPECT_LT(max_abs(d.weighted_element(1) - w_minus), 1e-15);
    EXPECT_LT(d.reconstruction_error(), 1e-15);
    const Povm back = decomposition_to_povm(d);
    EXPECT_LT(max_abs(back.elements()[0] - plus), 1e-12);
    EXPECT_LT(max_abs(back.elements()[1] - minus), 1e-12);
}

TEST(PovmToDecomposition, ZeroWeightElementsStayUndefined) {
    const auto d = povm_to_decomposition(DensityOperator::pure({0, 0}),
                                         Povm({diag(1, 0), ComplexMatrix2::Zero()}, diag(1, 0)));
    ASSERT_EQ(d.size(), 2u);
    EXPECT_TRUE(d.elements()[0].state.has_value());
    EXPECT_FALSE(d.elements()[1].state.has_value());
    EXPECT_EQ(d.elements()[1].weight, 0.0);
}

TEST(PovmToDecomposition, SupportMismatch) {
    const auto rho = DensityOperator::pure({kPi / 4, 0});
    EXPECT_EQ(code_of([&] { povm_to_decomposition(rho, Povm({diag(1, 0), diag(0, 1)})); }),
              ErrorCode::kSupportMismatch);
}

TEST(DecompositionToPovm, Examples) {
    Rng rng(2);
    const auto rho = testing::random_mixed(rng);
    const Povm trivial = decomposition_to_povm(ConvexDecomposition::trivial(rho));
    EXPECT_LT(max_abs(trivial.elements()[0] - ComplexMatrix2::Identity()), 1e-12);

    const auto pure = DensityOperator::pure({kPi / 3, 0.4});
    const Povm on_support = decomposition_to_povm(ConvexDecomposition::trivial(pure));
    EXPECT_LT(max_abs(on_support.elements()[0] - pure.matrix()), 1e-12);

    const ConvexDecomposition basis(DensityOperator::maximally_mixed(),
                                    {{0.5, DensityOperator::pure({0, 0})}, {0.5, DensityOperator::pure({kPi / 2, 0})}});
    const Povm p = decomposition_to_povm(basis);
    EXPECT_LT(max_abs(p.elements()[0] - diag(1, 0)), 1e-15);
    EXPECT_LT(max_abs(p.elements()[1] - diag(0, 1)), 1e-15);
}

TEST(DecompositionToPovm, RandomExtremalDecompositionsGiveValidPovms) {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const auto rho = testing::random_mixed(rng);
        const Vec3 r = rho.bloch();
        const Vec3 u = testing::random_unit(rng);
        const double ru = r.dot(u);
        const double root = std::sqrt(1 - r.squaredNorm() + ru * ru);
        const double lp = -ru + root;
        const double lm = -ru - root;
        const ConvexDecomposition d(rho, {{-lm / (lp - lm), DensityOperator::pure(QubitState::from_bloch(r + lp * u))},
                                          {lp / (lp - lm), DensityOperator::pure(QubitState::from_bloch(r + lm * u))}});
        const Povm p = decomposition_to_povm(d);
        EXPECT_LT(max_abs(p.elements()[0] + p.elements()[1] - ComplexMatrix2::Identity()), 1e-10);
        for (const auto &e : p.elements()) {
            EXPECT_GT(hermitian_eigen(e).values[0], -1e-10);
            EXPECT_LT(std::abs(e.determinant()), 1e-9);
        }
    }
}

TEST(DecompositionProperties, BijectionRoundTrips) {
    Rng rng(4);
    for (int i = 0; i < 500; ++i) {
        const auto rho = testing::random_mixed(rng);
        const auto povm = testing::random_povm(rng, rng.integer(2, 4));
        const auto d = povm_to_decomposition(rho, Povm(povm));
        EXPECT_LT(d.reconstruction_error(), 1e-12);
        const Povm back = decomposition_to_povm(d);
        for (std::size_t k = 0; k < povm.size(); ++k) {
            EXPECT_LT(max_abs(back.elements()[k] - povm[k]), 1e-10);
        }
        const auto again = povm_to_decomposition(rho, back);
        for (std::size_t k = 0; k < povm.size(); ++k) {
            EXPECT_LT(max_abs(again.weighted_element(k) - d.weighted_element(k)), 1e-10);
        }
    }
}

TEST(ConvexDecomposition, RejectsBadInputs) {
    const auto rho = DensityOperator::maximally_mixed();
    EXPECT_EQ(code_of([&] { ConvexDecomposition(rho, {{1.0, DensityOperator::pure({0, 0})}}); }),
              ErrorCode::kParentMismatch);
    EXPECT_EQ(code_of([&] { ConvexDecomposition(rho, {{0.7, rho}}); }), ErrorCode::kInvalidArgument);
    EXPECT_EQ(code_of([&] { ConvexDecomposition(rho, {{1.5, rho}, {-0.5, rho}}); }), ErrorCode::kInvalidArgument);
}

StatePolytope chord(const Vec3 &a, const Vec3 &b) {
    return StatePolytope({a, b});
}

TEST(CertaintyRegion, Bb84ChordsCrossAtTheOrigin) {
    const auto hit = certainty_region(chord(Vec3::UnitZ(), -Vec3::UnitZ()), chord(Vec3::UnitX(), -Vec3::UnitX()));
    ASSERT_TRUE(hit.has_value());
    EXPECT_LT(hit->norm(), 1e-15);
}

TEST(CertaintyRegion, ParallelChordsMiss) {
    const double t = kPi / 8;
    const auto s0 = StatePolytope::from_states(std::vector<QubitState>{{t, 0}, {-t, 0}});
    const auto s1 = StatePolytope::from_states(std::vector<QubitState>{{kPi / 2 - t, 0}, {kPi / 2 + t, 0}});
    EXPECT_FALSE(certainty_region(s0, s1).has_value());
}

TEST(CertaintyRegion, IdenticalPoints) {
    const Vec3 p = Vec3(1, 2, 3).normalized();
    const auto hit = certainty_region(StatePolytope({p}), StatePolytope({p}));
    ASSERT_TRUE(hit.has_value());
    EXPECT_LT((hit->vec() - p).norm(), 1e-15);
    EXPECT_FALSE(certainty_region(StatePolytope({p}), StatePolytope({-p})).has_value());
}

TEST(CertaintyRegion, PointOnChord) {
    const Vec3 a = Vec3::UnitZ();
    const Vec3 b = Vec3::UnitX();
    EXPECT_TRUE(certainty_region(StatePolytope({a}), chord(a, b)).has_value());
    EXPECT_FALSE(certainty_region(StatePolytope({Vec3::UnitY()}), chord(a, b)).has_value());
}

TEST(CertaintyRegion, SkewChordsMiss) {
    EXPECT_FALSE(certainty_region(chord(Vec3(1, 0, 1).normalized(), Vec3(-1, 0, 1).normalized()),
                                  chord(Vec3(0, 1, -1).normalized(), Vec3(0, -1, -1).normalized()))
                     .has_value());
}

// Chord through interior point m along dir.
StatePolytope chord_through(const Vec3 &m, const Vec3 &dir) {
    const double md = m.dot(dir);
    const double root = std::sqrt(1 - m.squaredNorm() + md * md);
    return chord((m + (-md + root) * dir).normalized(), (m + (-md - root) * dir).normalized());
}

TEST(CertaintyRegion, Symmetric) {
    Rng rng(5);
    int hits = 0;
    for (int i = 0; i < 400; ++i) {
        const Vec3 a = testing::random_unit(rng);
        const Vec3 b = testing::random_unit(rng);
        const StatePolytope s0 = chord(a, b);
        const StatePolytope s1 = i % 2 == 0
                                     ? chord_through(a + rng.uniform(0.1, 0.9) * (b - a), testing::random_unit(rng))
                                     : chord(testing::random_unit(rng), testing::random_unit(rng));
        const bool ab = certainty_region(s0, s1).has_value();
        EXPECT_EQ(ab, certainty_region(s1, s0).has_value());
        hits += ab;
    }
    EXPECT_GE(hits, 200);
}

TEST(CertaintyRegion, ConstructedCrossingIsFound) {
    Rng rng(6);
    for (int i = 0; i < 200; ++i) {
        const Vec3 a = testing::random_unit(rng);
        const Vec3 b = testing::random_unit(rng);
        const Vec3 m = a + rng.uniform(0.1, 0.9) * (b - a);
        const auto hit = certainty_region(chord(a, b), chord_through(m, testing::random_unit(rng)));
        ASSERT_TRUE(hit.has_value());
        EXPECT_LT((hit->vec() - m).norm(), 1e-8);
        EXPECT_TRUE(decomposes(bloch_to_density(*hit), chord(a, b)).decomposed);
    }
}

TEST(Decomposes, Examples) {
    const auto mixed = DensityOperator::maximally_mixed();
    const auto z = decomposes(mixed, chord(Vec3::UnitZ(), -Vec3::UnitZ()));
    ASSERT_TRUE(z.decomposed);
    EXPECT_NEAR(z.weights[0], 0.5, 1e-15);
    EXPECT_NEAR(z.weights[1], 0.5, 1e-15);
    EXPECT_FALSE(decomposes(mixed, chord(Vec3::UnitZ(), Vec3::UnitX())).decomposed);
    const auto tilted = decomposes(bloch_to_density(BlochVector(0, 0, 0.6)), chord(Vec3::UnitZ(), -Vec3::UnitZ()));
    ASSERT_TRUE(tilted.decomposed);
    EXPECT_NEAR(tilted.weights[0], 0.8, 1e-15);
    EXPECT_NEAR(tilted.weights[1], 0.2, 1e-15);
    EXPECT_TRUE(decomposes(DensityOperator::pure({0, 0}), StatePolytope({Vec3::UnitZ()})).decomposed);
}

TEST(StatePolytope, Validation) {
    EXPECT_EQ(code_of([] { StatePolytope({}); }), ErrorCode::kUnsupportedSetSize);
    EXPECT_EQ(code_of([] { StatePolytope({Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()}); }),
              ErrorCode::kUnsupportedSetSize);
    EXPECT_EQ(code_of([] { StatePolytope({Vec3::UnitX(), Vec3::UnitX()}); }), ErrorCode::kDegenerateStates);
    EXPECT_EQ(code_of([] { StatePolytope({Vec3(0.5, 0, 0)}); }), ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace bcattack
