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

#include "bcattack/cli.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace bcattack::cli {
namespace {

using nlohmann::json;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string protocol_path(const std::string &name) {
    return std::string(BCATTACK_SOURCE_DIR) + "/protocols/" + name + ".json";
}

std::string temp_path(const std::string &name) {
    return (std::filesystem::temp_directory_path() / ("bcattack_cli_test_" + name)).string();
}

std::string write_temp(const std::string &name, const std::string &text) {
    const std::string path = temp_path(name);
    std::ofstream(path) << text;
    return path;
}

TEST(ParseAngle, Forms) {
    EXPECT_DOUBLE_EQ(parse_angle("0.25"), 0.25);
    EXPECT_DOUBLE_EQ(parse_angle("pi:1/8"), kPi / 8);
    EXPECT_DOUBLE_EQ(parse_angle("pi:-1/8"), -kPi / 8);
    EXPECT_DOUBLE_EQ(parse_angle("pi:0.5"), kPi / 2);
    EXPECT_THROW(parse_angle("pi:1/0"), ParseError);
    EXPECT_THROW(parse_angle("abc"), ParseError);
    EXPECT_THROW(parse_angle("1.0x"), ParseError);
}

TEST(Round12, TwelveSignificantDigits) {
    EXPECT_EQ(round12(0.85355339059327373), 0.853553390593);
    EXPECT_EQ(round12(1.0), 1.0);
    EXPECT_EQ(round12(0.0), 0.0);
}

TEST(ParseProtocol, Diagnostics) {
    try {
        parse_protocol("{\n  \"bit0\": [\n    {\"theta\": 0, \"p\": 1},\n  ]\n}");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.where().rfind("line 4", 0), 0u) << e.where();
    }
    try {
        parse_protocol(R"({"bit0": [{"p": 1}], "bit1": [{"theta": 1, "p": 1}]})");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.where(), "/bit0/0/theta");
    }
    try {
        parse_protocol(R"({"bit0": [{"theta": 0, "p": 1}], "bit1": [{"theta": "pi:x", "p": 1}]})");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.where(), "/bit1/0/theta");
    }
    try {
        parse_protocol(R"({"bit0": [{"theta": 0, "p": 1}], "bit1": [{"theta": 1, "p": -1}]})");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.where(), "/bit1/0/p");
    }
}

TEST(ParseProtocol, NormalizesWithAWarning) {
    const auto p = parse_protocol(
        R"({"bit0": [{"theta": 0, "p": 2}, {"theta": 1, "p": 2}], "bit1": [{"theta": 2, "p": 1}]})");
    EXPECT_DOUBLE_EQ(p.spec.bit(0)[0].p, 0.5);
    ASSERT_EQ(p.warnings.size(), 1u);
    const auto q = parse_protocol(R"({"bit0": [{"theta": 0, "p": 1}], "bit1": [{"theta": 2, "p": 1}]})");
    EXPECT_TRUE(q.warnings.empty());
}

TEST(ParseProtocol, HandFilesMatchTheBuiltins) {
    const std::vector<std::pair<std::string, ProtocolSpec>> cases{
        {"bb84", bb84()},
        {"aharonov_pi8", aharonov(kPi / 8)},
        {"two_state_pi4", two_state(kPi / 4)},
        {"skew_pi8", skew(kPi / 8)},
        {"one_two_fair", one_two(std::acos((std::sqrt(5.0) - 1) / 2))}};
    for (const auto &[file, builtin] : cases) {
        const auto loaded = load_protocol_file(protocol_path(file));
        EXPECT_TRUE(loaded.warnings.empty()) << file;
        const auto a = tradeoff_point(loaded.spec);
        const auto b = tradeoff_point(builtin);
        EXPECT_NEAR(a.pe_max, b.pe_max, 1e-12) << file;
        EXPECT_NEAR(a.pu_max, b.pu_max, 1e-12) << file;
        for (int bit = 0; bit < 2; ++bit) {
            ASSERT_EQ(loaded.spec.n(bit), builtin.n(bit));
            for (std::size_t k = 0; k < builtin.n(bit); ++k) {
                EXPECT_LT((loaded.spec.bloch_points(bit)[k] - builtin.bloch_points(bit)[k]).norm(), 1e-12);
            }
        }
    }
}

TEST(Run, UsageErrors) {
    EXPECT_EQ(invoke({}).code, kExitParse);
    EXPECT_EQ(invoke({"frobnicate"}).code, kExitParse);
    EXPECT_EQ(invoke({"analyze"}).code, kExitParse);
    EXPECT_EQ(invoke({"analyze", "--builtin", "nope"}).code, kExitParse);
    EXPECT_EQ(invoke({"analyze", "--builtin", "aharonov", "--theta", "pi:1/2"}).code, kExitParse);
    EXPECT_EQ(invoke({"analyze", "--protocol", "/nonexistent/p.json"}).code, kExitParse);
    EXPECT_EQ(invoke({"simulate", "--builtin", "bb84", "--bit", "2"}).code, kExitParse);
    EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST(Run, UnsupportedSetSize) {
    const auto path = write_temp("three.json", R"({"bit0": [{"theta": 0, "p": 1}, {"theta": 1, "p": 1},
        {"theta": 2, "p": 1}], "bit1": [{"theta": 2, "p": 1}]})");
    const auto r = invoke({"analyze", "--protocol", path});
    EXPECT_EQ(r.code, kExitUnsupported);
    EXPECT_NE(r.err.find("3 states"), std::string::npos);
}

TEST(Run, MalformedFileReportsTheLine) {
    const auto path = write_temp("bad.json", "{\n\"bit0\": [\n}\n");
    const auto r = invoke({"analyze", "--protocol", path});
    EXPECT_EQ(r.code, kExitParse);
    EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST(Run, AnalyzeAharonov) {
    const auto r = invoke({"analyze", "--builtin", "aharonov"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto doc = json::parse(r.out);
    EXPECT_EQ(doc["pu_max"].get<double>(), 0.853553390593);
    EXPECT_EQ(doc["pe_max"].get<double>(), 0.853553390593);
    EXPECT_EQ(doc["case_tag"], "parallel-family");
    EXPECT_FALSE(doc["family"].is_null());
    EXPECT_LT(doc["tradeoff"]["identity_residual"].get<double>(), 1e-9);
    EXPECT_TRUE(doc["tradeoff"]["matches_builtin"].get<bool>());
    EXPECT_EQ(r.out.back(), '\n');
}

TEST(Run, AnalyzeIsByteStable) {
    for (const std::string name : {"bb84", "aharonov", "two-state", "skew", "one-two"}) {
        const auto a = invoke({"analyze", "--builtin", name});
        const auto b = invoke({"analyze", "--builtin", name});
        ASSERT_EQ(a.code, kExitOk) << name << a.err;
        EXPECT_EQ(a.out, b.out);
    }
}

TEST(Run, AnalyzeFileAgreesWithBuiltin) {
    const auto a = json::parse(invoke({"analyze", "--protocol", protocol_path("skew_pi8")}).out);
    const auto b = json::parse(invoke({"analyze", "--builtin", "skew"}).out);
    EXPECT_EQ(a["pu_max"], b["pu_max"]);
    EXPECT_EQ(a["pe_max"], b["pe_max"]);
    EXPECT_EQ(a["case_tag"], b["case_tag"]);
}

TEST(Run, OutWritesAFile) {
    const std::string path = temp_path("scene.json");
    std::remove(path.c_str());
    const auto r = invoke({"scene", "--builtin", "bb84", "--out", path});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    const auto doc = json::parse(in);
    EXPECT_EQ(doc["case_tag"], "certainty");
    EXPECT_EQ(doc["honest"].size(), 2u);
}

TEST(Run, TradeoffCsv) {
    const auto r = invoke({"tradeoff", "--builtin", "one-two", "--steps", "8"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "param,pe_max,pu_max,identity_residual");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        const double residual = std::stod(line.substr(line.rfind(',') + 1));
        EXPECT_LT(std::abs(residual), 1e-9) << line;
    }
    EXPECT_EQ(rows, 8);
    EXPECT_NE(r.err.find("fair point: one-two"), std::string::npos);
    EXPECT_EQ(invoke({"tradeoff", "--builtin", "bb84"}).code, kExitParse);
}

TEST(Run, Verify) {
    const auto r = invoke({"verify", "--builtin", "aharonov", "--grid", "20000", "--refine", "2", "--previous-bound"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto doc = json::parse(r.out);
    EXPECT_TRUE(doc["pass"].get<bool>());
    EXPECT_EQ(doc["previous_bound"]["bound"].get<double>(), 0.914213562373);
    EXPECT_EQ(doc["previous_bound"]["sampled_violations"].get<int>(), 0);
    EXPECT_EQ(invoke({"verify", "--builtin", "bb84", "--grid", "1000", "--previous-bound"}).code, kExitParse);
    EXPECT_EQ(invoke({"verify", "--builtin", "two-state", "--grid", "20000", "--refine", "2"}).code, kExitOk);
}

TEST(Run, Simulate) {
    const auto r = invoke({"simulate", "--builtin", "bb84", "--trials", "10000"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto doc = json::parse(r.out);
    EXPECT_EQ(doc["p_u_hat"].get<double>(), 1.0);
    EXPECT_EQ(doc["seed"].get<std::uint64_t>(), 42u);
    const auto pe = invoke({"simulate", "--builtin", "aharonov", "--mode", "pe", "--trials", "20000", "--seed", "9"});
    EXPECT_EQ(pe.code, kExitOk) << pe.err;
    EXPECT_EQ(invoke({"simulate", "--builtin", "aharonov", "--mode", "other"}).code, kExitParse);
    const auto again = invoke({"simulate", "--builtin", "aharonov", "--mode", "pe", "--trials", "20000", "--seed", "9"});
    EXPECT_EQ(pe.out, again.out);
}

}  // namespace
}  // namespace bcattack::cli
