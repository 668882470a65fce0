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

#ifndef BCATTACK_BUILTINS_H
#define BCATTACK_BUILTINS_H

#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "bcattack/attack.h"

namespace bcattack {

inline constexpr double kPi = std::numbers::pi;

/// {|0>, |1>} against {|+>, |->}, uniform.
ProtocolSpec bb84();
/// {|theta>, |-theta>} against {|pi/2 - theta>, |pi/2 + theta>}.
ProtocolSpec aharonov(double theta);
/// |0> against |gamma>.
ProtocolSpec two_state(double gamma);
/// {|theta,0>, |-theta,0>} against {|pi/2 - theta, phi>, |pi/2 + theta, phi>}.
ProtocolSpec skew(double theta, double phi = kPi / 2);
/// |0> against {|alpha>, |-alpha>}.
ProtocolSpec one_two(double alpha);

/// Earlier upper bound on P_U for the aharonov family.
double aharonov_previous_bound(double theta);

enum class Family { kAharonov, kTwoState, kSkew, kOneTwo };

std::optional<Family> family_from_name(std::string_view name);
const char *family_name(Family f);

struct ParameterRange {
    double lo = 0.0;  // exclusive
    double hi = 0.0;  // inclusive
};

ParameterRange family_range(Family f);

/// Protocol of the family at `param`; phi only affects kSkew.
ProtocolSpec family_protocol(Family f, double param, double phi = kPi / 2);

/// Residual of the exact trade-off relation between P_E^max and P_U^max.
double identity_residual(Family f, const TradeoffPoint &point);

struct FairPoint {
    double param = 0.0;
    double value = 0.0;
};

/// Parameter at which P_E^max = P_U^max, by bisection.
FairPoint fair_point(Family f, double phi = kPi / 2);

}  // namespace bcattack

#endif
