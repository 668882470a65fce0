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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"

#include "bcattack/cli.h"
#include "bcattack/error.h"
#include "bcattack/estimation.h"
#include "bcattack/oracle.h"

namespace bcattack::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string protocol;
    std::string builtin;
    std::string theta;
    std::string gamma;
    std::string alpha;
    std::string phi;
    int steps = 64;
    int grid = OracleConfig{}.rho_grid;
    int refine = OracleConfig{}.refine_rounds;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 42;
    std::string out;
    int bit = 0;
    std::string mode = "attack";
    bool previous_bound = false;
};

std::string fmt12(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", round12(x));
    return buf;
}

double angle_or(const std::string &text, double fallback, const char *flag) {
    if (text.empty()) {
        return fallback;
    }
    try {
        return parse_angle(text);
    } catch (const ParseError &e) {
        throw ParseError(flag, e.what());
    }
}

FamilyTag family_tag(Family f, const Options &o) {
    FamilyTag tag{f, 0.0, angle_or(o.phi, kPi / 2, "--phi")};
    switch (f) {
        case Family::kAharonov:
        case Family::kSkew:
            tag.param = angle_or(o.theta, kPi / 8, "--theta");
            break;
        case Family::kTwoState:
            tag.param = angle_or(o.gamma, kPi / 4, "--gamma");
            break;
        case Family::kOneTwo:
            tag.param = angle_or(o.alpha, std::acos((std::sqrt(5.0) - 1.0) / 2.0), "--alpha");
            break;
    }
    const ParameterRange range = family_range(f);
    if (!(tag.param > range.lo && tag.param <= range.hi + 1e-15)) {
        throw ParseError(std::string(family_name(f)), "parameter " + fmt12(tag.param) + " outside (" +
                                                         fmt12(range.lo) + ", " + fmt12(range.hi) + "]");
    }
    return tag;
}

LoadedProtocol resolve(const Options &o) {
    if (o.protocol.empty() == o.builtin.empty()) {
        throw ParseError("arguments", "give exactly one of --protocol and --builtin");
    }
    if (!o.protocol.empty()) {
        return load_protocol_file(o.protocol);
    }
    if (o.builtin == "bb84") {
        return {bb84(), std::nullopt, {}};
    }
    const auto f = family_from_name(o.builtin);
    if (!f) {
        throw ParseError("--builtin", "unknown protocol '" + o.builtin + "'");
    }
    const FamilyTag tag = family_tag(*f, o);
    return {family_protocol(tag.family, tag.param, tag.phi), tag, {}};
}

void emit(const Options &o, const std::string &text, std::ostream &out) {
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
        throw ParseError(o.out, "cannot write output file");
    }
    file << text;
}

void warn(const LoadedProtocol &p, std::ostream &err) {
    for (const auto &w : p.warnings) {
        err << "warning: " << w << "\n";
    }
}

int cmd_analyze(const Options &o, std::ostream &out, std::ostream &err) {
    const LoadedProtocol p = resolve(o);
    warn(p, err);
    emit(o, dump(analyze_report(p.spec, p.family)), out);
    return kExitOk;
}

int cmd_tradeoff(const Options &o, std::ostream &out, std::ostream &err) {
    const auto f = family_from_name(o.builtin);
    if (!f) {
        throw ParseError("--builtin", "tradeoff needs one of aharonov, two-state, skew, one-two");
    }
    if (o.steps < 2) {
        throw ParseError("--steps", "need at least 2 steps");
    }
    const double phi = angle_or(o.phi, kPi / 2, "--phi");
    const ParameterRange range = family_range(*f);
    std::string csv = "param,pe_max,pu_max,identity_residual\n";
    for (int i = 0; i < o.steps; ++i) {
        const double param = range.lo + (range.hi - range.lo) * (i + 0.5) / o.steps;
        const TradeoffPoint t = tradeoff_point(family_protocol(*f, param, phi));
        csv += fmt12(param) + "," + fmt12(t.pe_max) + "," + fmt12(t.pu_max) + "," +
               fmt12(identity_residual(*f, t)) + "\n";
    }
    emit(o, csv, out);
    const FairPoint fair = fair_point(*f, phi);
    err << "fair point: " << family_name(*f) << " param=" << fmt12(fair.param) << " value=" << fmt12(fair.value)
        << "\n";
    return kExitOk;
}

int cmd_verify(const Options &o, std::ostream &out, std::ostream &err) {
    const LoadedProtocol p = resolve(o);
    warn(p, err);
    OracleConfig cfg;
    cfg.rho_grid = o.grid;
    cfg.refine_rounds = o.refine;
    cfg.validate();
    const AttackReport report = optimal_rho(p.spec);
    const OracleResult oracle = oracle_p_u_max(p.spec, cfg);
    const double gap = report.p_u_max - oracle.value;
    const double tol = cfg.refine_rounds > 0 ? 1e-6 : 1e-4;
    bool pass = gap <= tol && gap >= -1e-9 && oracle.recheck_gap <= tol;

    json doc;
    doc["protocol"] = p.spec.name();
    doc["analytic"] = round12(report.p_u_max);
    doc["oracle"] = round12(oracle.value);
    doc["oracle_argmax"] = to_json(oracle.argmax.vec());
    doc["gap"] = round12(gap);
    doc["tolerance"] = tol;
    doc["recheck_gap"] = round12(oracle.recheck_gap);
    doc["rechecked"] = oracle.rechecked;
    doc["evaluated"] = oracle.evaluated;
    doc["grid"] = cfg.rho_grid;
    doc["refine_rounds"] = cfg.refine_rounds;

    if (o.previous_bound) {
        if (!p.family || p.family->family != Family::kAharonov) {
            throw ParseError("--previous-bound", "the earlier bound applies to the aharonov family only");
        }
        const double theta = p.family->param;
        const double bound = aharonov_previous_bound(theta);
        bool strict = report.p_u_max < bound || theta >= kPi / 4;
        int violations = 0;
        for (int i = 0; i < 64; ++i) {
            const double t = (i + 0.5) / 64.0 * kPi / 4;
            if (!(p_u_max(aharonov(t)) < aharonov_previous_bound(t))) {
                ++violations;
            }
        }
        doc["previous_bound"] = {{"theta", round12(theta)},
                                 {"bound", round12(bound)},
                                 {"pu_max_below", strict},
                                 {"sampled_violations", violations}};
        pass = pass && strict && violations == 0;
        err << "previous bound at theta=" << fmt12(theta) << ": " << fmt12(bound) << (strict ? " > " : " <= ")
            << fmt12(report.p_u_max) << "\n";
    }
    doc["pass"] = pass;
    emit(o, dump(doc), out);
    err << (pass ? "PASS" : "FAIL") << " analytic=" << fmt12(report.p_u_max) << " oracle=" << fmt12(oracle.value)
        << " gap=" << fmt12(gap) << " tol=" << fmt12(tol) << "\n";
    return pass ? kExitOk : kExitVerify;
}

int cmd_simulate(const Options &o, std::ostream &out, std::ostream &err) {
    const LoadedProtocol p = resolve(o);
    warn(p, err);
    if (o.trials < 1) {
        throw ParseError("--trials", "need at least one trial");
    }
    SimResult result;
    double expected = 0.0;
    if (o.mode == "attack") {
        const AttackReport report = optimal_rho(p.spec);
        result = hjw_simulate(report.strategy, p.spec, o.bit, o.trials, o.seed);
        expected = report.p_ub[o.bit];
    } else if (o.mode == "pe") {
        result = simulate_pe(p.spec, o.trials, o.seed);
        expected = helstrom_pe(p.spec.honest_density(0), p.spec.honest_density(1));
    } else {
        throw ParseError("--mode", "expected attack or pe");
    }
    const double z = z_score(result, expected);
    json doc = sim_json(result, expected, z);
    doc["mode"] = o.mode;
    doc["protocol"] = p.spec.name();
    if (o.mode == "attack") {
        doc["bit"] = o.bit;
    }
    emit(o, dump(doc), out);
    const bool outlier = !(std::abs(z) <= 5.0);
    err << "p_hat=" << fmt12(result.p_u_hat) << " expected=" << fmt12(expected) << " z=" << fmt12(z)
        << (outlier ? " OUTLIER" : "") << "\n";
    return outlier ? kExitOutlier : kExitOk;
}

int cmd_scene(const Options &o, std::ostream &out, std::ostream &err) {
    const LoadedProtocol p = resolve(o);
    warn(p, err);
    emit(o, dump(scene_json(p.spec)), out);
    return kExitOk;
}

void add_protocol_options(CLI::App *cmd, Options &o) {
    cmd->add_option("--protocol", o.protocol, "Protocol JSON file");
    cmd->add_option("--builtin", o.builtin, "bb84, aharonov, two-state, skew or one-two");
    cmd->add_option("--theta", o.theta, "aharonov/skew angle (radians or pi:a/b)");
    cmd->add_option("--gamma", o.gamma, "two-state angle");
    cmd->add_option("--alpha", o.alpha, "one-two angle");
    cmd->add_option("--phi", o.phi, "skew phase");
    cmd->add_option("--out", o.out, "Output file (default stdout)");
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Optimal coherent attacks on qubit bit-commitment protocols", "bcattack"};
    app.require_subcommand(1);
    Options o;

    auto *analyze = app.add_subcommand("analyze", "Optimal attack and estimation report");
    add_protocol_options(analyze, o);

    auto *tradeoff = app.add_subcommand("tradeoff", "P_E/P_U trade-off curve as CSV");
    tradeoff->add_option("--builtin", o.builtin, "aharonov, two-state, skew or one-two")->required();
    tradeoff->add_option("--steps", o.steps, "Number of parameter samples");
    tradeoff->add_option("--phi", o.phi, "skew phase");
    tradeoff->add_option("--out", o.out, "Output file (default stdout)");

    auto *verify = app.add_subcommand("verify", "Compare the closed forms with the grid oracle");
    add_protocol_options(verify, o);
    verify->add_option("--grid", o.grid, "Ball sample points");
    verify->add_option("--refine", o.refine, "Local refinement rounds");
    verify->add_flag("--previous-bound", o.previous_bound, "Check against the earlier aharonov bound");

    auto *simulate = app.add_subcommand("simulate", "Monte-Carlo run of the attack or of Bob's estimate");
    add_protocol_options(simulate, o);
    simulate->add_option("--bit", o.bit, "Bit Alice unveils")->check(CLI::Range(0, 1));
    simulate->add_option("--trials", o.trials, "Number of trials");
    simulate->add_option("--seed", o.seed, "RNG seed");
    simulate->add_option("--mode", o.mode, "attack or pe")->check(CLI::IsMember({"attack", "pe"}));

    auto *scene = app.add_subcommand("scene", "Bloch-ball plot data");
    add_protocol_options(scene, o);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }

    try {
        if (*analyze) return cmd_analyze(o, out, err);
        if (*tradeoff) return cmd_tradeoff(o, out, err);
        if (*verify) return cmd_verify(o, out, err);
        if (*simulate) return cmd_simulate(o, out, err);
        if (*scene) return cmd_scene(o, out, err);
    } catch (const ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::kUnsupportedSetSize ? kExitUnsupported : kExitParse;
    }
    return kExitParse;
}

}  // namespace bcattack::cli
