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

#ifndef BCATTACK_CLI_H
#define BCATTACK_CLI_H

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "bcattack/attack.h"
#include "bcattack/builtins.h"
#include "bcattack/simulate.h"

namespace bcattack::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitUnsupported = 3;
inline constexpr int kExitVerify = 4;
inline constexpr int kExitOutlier = 5;

/// Malformed input. `where` names the line or the JSON field at fault.
class ParseError : public std::runtime_error {
   public:
    ParseError(std::string where, const std::string &what)
        : std::runtime_error(where + ": " + what), where_(std::move(where)) {
    }
    const std::string &where() const {
        return where_;
    }

   private:
    std::string where_;
};

/// Radians, or a multiple of pi written "pi:1/8" / "pi:0.125".
double parse_angle(std::string_view text);

struct FamilyTag {
    Family family;
    double param = 0.0;
    double phi = kPi / 2;
};

struct LoadedProtocol {
    ProtocolSpec spec;
    std::optional<FamilyTag> family;
    std::vector<std::string> warnings;
};

/// Parses a protocol document. Probabilities are normalized per bit with a
/// warning when they are off by more than 1e-6.
LoadedProtocol parse_protocol(std::string_view text);
LoadedProtocol load_protocol_file(const std::string &path);

/// Rounds to 12 significant digits so that reports are byte-stable.
double round12(double x);
nlohmann::json to_json(const Vec3 &v);
/// Two-space indented document with a trailing newline.
std::string dump(const nlohmann::json &doc);

nlohmann::json protocol_json(const ProtocolSpec &spec);
nlohmann::json strategy_json(const CheatStrategy &strategy, const ProtocolSpec &spec);
nlohmann::json analyze_report(const ProtocolSpec &spec, const std::optional<FamilyTag> &family);
nlohmann::json scene_json(const ProtocolSpec &spec);
nlohmann::json sim_json(const SimResult &result, double expected, double z);

/// Runs one command line (without the program name). Returns the exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace bcattack::cli

#endif
