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

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "bcattack/cli.h"
#include "bcattack/estimation.h"

namespace bcattack::cli {

namespace {

using nlohmann::json;

json rounded(const std::vector<double> &v) {
    json out = json::array();
    for (double x : v) {
        out.push_back(round12(x));
    }
    return out;
}

bool same_protocol(const ProtocolSpec &a, const ProtocolSpec &b) {
    for (int bit = 0; bit < 2; ++bit) {
        if (a.n(bit) != b.n(bit)) {
            return false;
        }
        for (std::size_t k = 0; k < a.n(bit); ++k) {
            const auto &x = a.bit(bit)[k];
            const auto &y = b.bit(bit)[k];
            if ((x.state.bloch() - y.state.bloch()).norm() > 1e-12 || std::abs(x.p - y.p) > 1e-12) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

double round12(double x) {
    if (!std::isfinite(x)) {
        return x;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

json to_json(const Vec3 &v) {
    return json::array({round12(v.x()), round12(v.y()), round12(v.z())});
}

std::string dump(const json &doc) {
    return doc.dump(2) + "\n";
}

json protocol_json(const ProtocolSpec &spec) {
    json doc;
    doc["name"] = spec.name();
    for (int b = 0; b < 2; ++b) {
        json states = json::array();
        for (const auto &h : spec.bit(b)) {
            states.push_back({{"theta", round12(h.state.theta)},
                              {"phi", round12(h.state.phi)},
                              {"p", round12(h.p)},
                              {"source_index", h.source_index},
                              {"bloch", to_json(h.state.bloch())}});
        }
        doc["bit" + std::to_string(b)] = states;
    }
    return doc;
}

json strategy_json(const CheatStrategy &strategy, const ProtocolSpec &spec) {
    json doc;
    doc["rho"] = to_json(strategy.rho.bloch());
    for (int b = 0; b < 2; ++b) {
        const auto &u = strategy.unveil[b];
        json elements = json::array();
        for (std::size_t k = 0; k < u.decomposition.size(); ++k) {
            const auto &el = u.decomposition.elements()[k];
            elements.push_back({{"weight", round12(el.weight)},
                                {"bloch", el.state ? to_json(el.state->bloch()) : json(nullptr)},
                                {"announce", u.announce[k]},
                                {"announce_source", spec.bit(b)[u.announce[k]].source_index}});
        }
        doc["bit" + std::to_string(b)] = {{"elements", elements}};
    }
    return doc;
}

json analyze_report(const ProtocolSpec &spec, const std::optional<FamilyTag> &family) {
    const AttackReport report = optimal_rho(spec);
    const DensityOperator rho0 = spec.honest_density(0);
    const DensityOperator rho1 = spec.honest_density(1);
    const HelstromMeasurement helstrom = helstrom_povm(rho0, rho1);
    const double pe = helstrom_pe(rho0, rho1);

    json doc;
    doc["protocol"] = protocol_json(spec);
    doc["pe_max"] = round12(pe);
    doc["pu_max"] = round12(report.p_u_max);
    doc["pu_bit"] = rounded({report.p_ub[0], report.p_ub[1]});
    doc["case_tag"] = case_tag_name(report.case_tag);
    doc["rho_opt"] = to_json(report.rho_opt.vec());
    doc["helstrom_degenerate"] = helstrom.degenerate;
    if (report.family) {
        doc["family"] = {{"base", to_json(report.family->base.vec())},
                         {"direction", to_json(report.family->direction)},
                         {"lambda_max", round12(report.family->lambda_max)}};
    } else {
        doc["family"] = nullptr;
    }
    doc["strategy"] = strategy_json(report.strategy, spec);
    if (family) {
        const TradeoffPoint point{pe, report.p_u_max};
        json t{{"family", family_name(family->family)},
               {"param", round12(family->param)},
               {"identity_residual", round12(identity_residual(family->family, point))},
               {"matches_builtin", same_protocol(spec, family_protocol(family->family, family->param, family->phi))}};
        if (family->family == Family::kSkew) {
            t["phi"] = round12(family->phi);
        }
        doc["tradeoff"] = t;
    }
    return doc;
}

json scene_json(const ProtocolSpec &spec) {
    const AttackReport report = optimal_rho(spec);
    json doc;
    doc["name"] = spec.name();
    doc["case_tag"] = case_tag_name(report.case_tag);
    doc["rho_opt"] = to_json(report.rho_opt.vec());
    json honest;
    json decomps;
    json labels;
    for (int b = 0; b < 2; ++b) {
        const std::string key = "bit" + std::to_string(b);
        json points = json::array();
        json names = json::array();
        for (const auto &h : spec.bit(b)) {
            points.push_back(to_json(h.state.bloch()));
            names.push_back("psi_" + std::to_string(h.source_index + 1) + "^" + std::to_string(b));
        }
        honest[key] = points;
        labels[key] = names;
        json chord = json::array();
        for (const auto &el : report.strategy.unveil[b].decomposition.elements()) {
            if (el.state) {
                chord.push_back(to_json(el.state->bloch()));
            }
        }
        decomps[key] = chord;
    }
    doc["honest"] = honest;
    doc["decompositions"] = decomps;
    doc["labels"] = labels;
    if (report.family) {
        doc["family"] = {{"from", to_json(report.family->at(0.0))},
                         {"to", to_json(report.family->at(report.family->lambda_max))}};
    } else {
        doc["family"] = nullptr;
    }
    return doc;
}

json sim_json(const SimResult &r, double expected, double z) {
    json doc;
    doc["trials"] = r.trials;
    doc["seed"] = r.seed;
    doc["successes"] = {r.successes[0], r.successes[1]};
    doc["p_u_hat"] = round12(r.p_u_hat);
    doc["std_err"] = round12(r.std_err);
    doc["outcome_counts"] = r.outcome_counts;
    doc["outcome_passes"] = r.outcome_passes;
    doc["outcome_probs"] = rounded(r.outcome_probs);
    doc["outcome_pass_probs"] = rounded(r.outcome_pass_probs);
    doc["expected"] = round12(expected);
    doc["z_score"] = std::isfinite(z) ? json(round12(z)) : json(nullptr);
    return doc;
}

}  // namespace bcattack::cli
