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

#include "bcattack/oracle.h"

#include <cmath>
#include <cstdlib>

#include <gtest/gtest.h>

#include "bcattack/builtins.h"
#include "test_util.h"

namespace bcattack {
namespace {

using testing::Rng;

const double kHeadline = 0.5 + 1 / (2 * std::sqrt(2.0));

OracleConfig grid_only() {
    OracleConfig cfg;
    cfg.refine_rounds = 0;
    return cfg;
}

TEST(OracleFixedRho, AharonovBitZeroAtTheOrigin) {
    const std::vector<QubitState> states{{kPi / 8, 0}, {-kPi / 8, 0}};
    EXPECT_NEAR(oracle_p_ub_fixed_rho(DensityOperator::maximally_mixed(), states, OracleConfig{}), kHeadline, 1e-6);
}

TEST(OracleFixedRho, TrivialCases) {
    const std::vector<QubitState> states{{0.3, 0.2}, {1.0, -1.0}};
    EXPECT_NEAR(oracle_p_ub_fixed_rho(DensityOperator::pure(states[1]), states, OracleConfig{}), 1.0, 1e-14);
    const Vec3 r = 0.4 * states[0].bloch() + 0.6 * states[1].bloch();
    EXPECT_NEAR(oracle_p_ub_fixed_rho(bloch_to_density(BlochVector(r)), states, OracleConfig{}), 1.0, 1e-9);
}

TEST(OracleFixedRho, NeverAboveAnalytic) {
    Rng rng(61);
    for (int i = 0; i < 100; ++i) {
        const auto rho = testing::random_mixed(rng);
        const std::vector<QubitState> states{testing::random_state(rng), testing::random_state(rng)};
        const double analytic = optimal_decomposition_fixed_rho(rho, states).value;
        const double oracle = oracle_p_ub_fixed_rho(rho, states, OracleConfig{});
        EXPECT_LE(oracle, analytic + 1e-9);
        EXPECT_GE(oracle, analytic - 1e-6);
    }
}

TEST(OraclePUMax, Bb84) {
    const auto r = oracle_p_u_max(bb84(), OracleConfig{});
    EXPECT_NEAR(r.value, 1.0, 1e-9);
    EXPECT_LT(r.argmax.norm(), 1e-3);
}

TEST(OraclePUMax, Aharonov) {
    EXPECT_NEAR(oracle_p_u_max(aharonov(kPi / 8), grid_only()).value, kHeadline, 1e-4);
    EXPECT_NEAR(oracle_p_u_max(aharonov(kPi / 8), OracleConfig{}).value, kHeadline, 1e-7);
}

TEST(OraclePUMax, OneTwoFair) {
    const double alpha = std::acos((std::sqrt(5.0) - 1) / 2);
    EXPECT_NEAR(oracle_p_u_max(one_two(alpha), OracleConfig{}).value, 0.8090169944, 1e-7);
}

TEST(OraclePUMax, NeverBeatsTheClosedForm) {
    Rng rng(62);
    OracleConfig cfg;
    cfg.rho_grid = 50000;
    for (int i = 0; i < 20; ++i) {
        const auto p = testing::random_protocol(rng, rng.integer(1, 2), rng.integer(1, 2));
        const auto r = oracle_p_u_max(p, cfg);
        const double analytic = p_u_max(p);
        EXPECT_LE(r.value, analytic + 1e-9);
        EXPECT_GE(r.value, analytic - 1e-6);
        EXPECT_LT(r.recheck_gap, 1e-6);
    }
}

TEST(OracleConvergence, MoreRefinementNeverHurts) {
    for (const auto &p : {aharonov(0.3), skew(0.5), one_two(0.7), two_state(1.0)}) {
        const double analytic = p_u_max(p);
        double previous_value = 0.0;
        double previous_gap = 1.0;
        for (int rounds : {0, 1, 2, 4, 8}) {
            OracleConfig cfg;
            cfg.rho_grid = 20000;
            cfg.refine_rounds = rounds;
            const double v = oracle_p_u_max(p, cfg).value;
            EXPECT_GE(v, previous_value - 1e-15);
            EXPECT_LE(analytic - v, previous_gap + 1e-15);
            previous_value = v;
            previous_gap = analytic - v;
        }
        EXPECT_LT(previous_gap, 1e-9);
    }
}

TEST(OracleConvergence, DirectionGridDoubling) {
    Rng rng(63);
    for (int i = 0; i < 20; ++i) {
        const auto rho = testing::random_mixed(rng);
        const std::vector<QubitState> states{testing::random_state(rng), testing::random_state(rng)};
        const double analytic = optimal_decomposition_fixed_rho(rho, states).value;
        double previous_gap = 1.0;
        for (int n : {32, 64, 128, 256, 512}) {
            OracleConfig cfg;
            cfg.direction_grid = n;
            cfg.refine_rounds = 0;
            const double gap = analytic - oracle_p_ub_fixed_rho(rho, states, cfg);
            EXPECT_GE(gap, -1e-12);
            previous_gap = std::min(previous_gap, gap);
        }
        EXPECT_LT(previous_gap, 1e-3);
    }
}

TEST(OracleParallelism, ThreadCountDoesNotChangeTheResult) {
    OracleConfig cfg;
    cfg.rho_grid = 30000;
    const auto p = skew(0.4, 1.1);
    setenv("BCATTACK_THREADS", "1", 1);
    const auto one = oracle_p_u_max(p, cfg);
    setenv("BCATTACK_THREADS", "3", 1);
    const auto three = oracle_p_u_max(p, cfg);
    unsetenv("BCATTACK_THREADS");
    EXPECT_EQ(one.value, three.value);
    EXPECT_EQ(one.argmax.vec(), three.argmax.vec());
}

TEST(FibonacciSphere, UnitAndSpread) {
    const auto pts = fibonacci_sphere(1000);
    Vec3 mean = Vec3::Zero();
    for (const auto &p : pts) {
        EXPECT_NEAR(p.norm(), 1.0, 1e-14);
        mean += p;
    }
    EXPECT_LT(mean.norm() / 1000, 1e-3);
}

}  // namespace
}  // namespace bcattack
