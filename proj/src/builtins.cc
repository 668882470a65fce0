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

#include "bcattack/builtins.h"

#include <cmath>

#include "bcattack/error.h"

namespace bcattack {

namespace {

using Entry = ProtocolSpec::Entry;

}  // namespace

ProtocolSpec bb84() {
    return ProtocolSpec::make("bb84", {{0.5, {0.0, 0.0}}, {0.5, {kPi / 2, 0.0}}},
                              {{0.5, {kPi / 4, 0.0}}, {0.5, {kPi / 4, kPi}}});
}

ProtocolSpec aharonov(double theta) {
    return ProtocolSpec::make("aharonov", {{0.5, {theta, 0.0}}, {0.5, {-theta, 0.0}}},
                              {{0.5, {kPi / 2 - theta, 0.0}}, {0.5, {kPi / 2 + theta, 0.0}}});
}

ProtocolSpec two_state(double gamma) {
    return ProtocolSpec::make("two-state", {{1.0, {0.0, 0.0}}}, {{1.0, {gamma, 0.0}}});
}

ProtocolSpec skew(double theta, double phi) {
    return ProtocolSpec::make("skew", {{0.5, {theta, 0.0}}, {0.5, {-theta, 0.0}}},
                              {{0.5, {kPi / 2 - theta, phi}}, {0.5, {kPi / 2 + theta, phi}}});
}

ProtocolSpec one_two(double alpha) {
    return ProtocolSpec::make("one-two", {{1.0, {0.0, 0.0}}}, {{0.5, {alpha, 0.0}}, {0.5, {-alpha, 0.0}}});
}

double aharonov_previous_bound(double theta) {
    const double x = std::pow(std::cos(2 * theta), 2);
    if (x < 1e-8) {
        // (sqrt(1 + 2x) - 1) / x = 1 - x/2 + x^2/2 - ...
        return 0.5 * (1.0 + 1.0 - 0.5 * x + 0.5 * x * x);
    }
    return 0.5 * (1.0 + (std::sqrt(1.0 + 2.0 * x) - 1.0) / x);
}

std::optional<Family> family_from_name(std::string_view name) {
    if (name == "aharonov") return Family::kAharonov;
    if (name == "two-state") return Family::kTwoState;
    if (name == "skew") return Family::kSkew;
    if (name == "one-two") return Family::kOneTwo;
    return std::nullopt;
}

const char *family_name(Family f) {
    switch (f) {
        case Family::kAharonov:
            return "aharonov";
        case Family::kTwoState:
            return "two-state";
        case Family::kSkew:
            return "skew";
        case Family::kOneTwo:
            return "one-two";
    }
    return "unknown";
}

ParameterRange family_range(Family f) {
    switch (f) {
        case Family::kAharonov:
        case Family::kSkew:
            return {0.0, kPi / 4};
        case Family::kTwoState:
        case Family::kOneTwo:
            return {0.0, kPi / 2};
    }
    return {};
}

ProtocolSpec family_protocol(Family f, double param, double phi) {
    switch (f) {
        case Family::kAharonov:
            return aharonov(param);
        case Family::kTwoState:
            return two_state(param);
        case Family::kSkew:
            return skew(param, phi);
        case Family::kOneTwo:
            return one_two(param);
    }
    throw Error(ErrorCode::kInvalidArgument, "unknown family");
}

double identity_residual(Family f, const TradeoffPoint &point) {
    const double u = point.pu_max - 0.5;
    const double e = point.pe_max - 0.5;
    if (f == Family::kOneTwo) {
        return 2 * u * u + e - 0.5;
    }
    return u * u + e * e - 0.25;
}

FairPoint fair_point(Family f, double phi) {
    const ParameterRange range = family_range(f);
    auto gap = [&](double param) {
        const TradeoffPoint t = tradeoff_point(family_protocol(f, param, phi));
        return t.pe_max - t.pu_max;
    };
    // Stay clear of the degenerate ends of the range.
    double lo = range.lo + 1e-6;
    double hi = range.hi - 1e-6;
    const double g_lo = gap(lo);
    if ((g_lo > 0) == (gap(hi) > 0)) {
        throw Error(ErrorCode::kInvalidArgument, std::string("no fair point for ") + family_name(f));
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((gap(mid) > 0) == (g_lo > 0)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double param = 0.5 * (lo + hi);
    return {param, tradeoff_point(family_protocol(f, param, phi)).pu_max};
}

}  // namespace bcattack
