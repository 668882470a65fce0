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

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bcattack/cli.h"
#include "bcattack/error.h"

namespace bcattack::cli {

namespace {

using nlohmann::json;

double parse_number(std::string_view text, const std::string &where) {
    double value = 0.0;
    const char *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw ParseError(where, "not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::string line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

double angle_field(const json &obj, const std::string &key, const std::string &path, bool required) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        if (required) {
            throw ParseError(path + "/" + key, "missing field");
        }
        return 0.0;
    }
    if (it->is_number()) {
        return it->get<double>();
    }
    if (it->is_string()) {
        try {
            return parse_angle(it->get<std::string>());
        } catch (const ParseError &e) {
            throw ParseError(path + "/" + key, e.what());
        }
    }
    throw ParseError(path + "/" + key, "expected a number or a \"pi:\" angle");
}

std::vector<ProtocolSpec::Entry> parse_bit(const json &doc, int b, std::vector<std::string> &warnings) {
    const std::string key = "bit" + std::to_string(b);
    const std::string path = "/" + key;
    const auto it = doc.find(key);
    if (it == doc.end()) {
        throw ParseError(path, "missing field");
    }
    if (!it->is_array()) {
        throw ParseError(path, "expected an array of states");
    }
    if (it->empty() || it->size() > 2) {
        throw Error(ErrorCode::kUnsupportedSetSize,
                    key + " has " + std::to_string(it->size()) + " states, expected 1 or 2");
    }
    std::vector<ProtocolSpec::Entry> entries;
    double total = 0.0;
    for (std::size_t k = 0; k < it->size(); ++k) {
        const json &s = (*it)[k];
        const std::string at = path + "/" + std::to_string(k);
        if (!s.is_object()) {
            throw ParseError(at, "expected an object with theta, phi and p");
        }
        for (const auto &[name, value] : s.items()) {
            (void)value;
            if (name != "theta" && name != "phi" && name != "p") {
                warnings.push_back("ignoring unknown field " + at + "/" + name);
            }
        }
        const double theta = angle_field(s, "theta", at, true);
        const double phi = angle_field(s, "phi", at, false);
        const auto p = s.find("p");
        if (p == s.end()) {
            throw ParseError(at + "/p", "missing field");
        }
        if (!p->is_number()) {
            throw ParseError(at + "/p", "expected a number");
        }
        const double prob = p->get<double>();
        if (!(prob >= 0.0) || !std::isfinite(prob)) {
            throw ParseError(at + "/p", "probability must be non-negative");
        }
        total += prob;
        entries.push_back({prob, QubitState{theta, phi}});
    }
    if (!(total > 0.0)) {
        throw ParseError(path, "probabilities sum to zero");
    }
    if (std::abs(total - 1.0) > 1e-6) {
        std::ostringstream os;
        os << key << " probabilities sum to " << total << "; normalized";
        warnings.push_back(os.str());
    }
    for (auto &e : entries) {
        e.first /= total;
    }
    return entries;
}

}  // namespace

double parse_angle(std::string_view text) {
    constexpr std::string_view kPrefix = "pi:";
    if (text.substr(0, kPrefix.size()) != kPrefix) {
        return parse_number(text, "angle");
    }
    const std::string_view rest = text.substr(kPrefix.size());
    const auto slash = rest.find('/');
    if (slash == std::string_view::npos) {
        return kPi * parse_number(rest, "angle");
    }
    const double num = parse_number(rest.substr(0, slash), "angle");
    const double den = parse_number(rest.substr(slash + 1), "angle");
    if (den == 0.0) {
        throw ParseError("angle", "zero denominator in '" + std::string(text) + "'");
    }
    return kPi * num / den;
}

LoadedProtocol parse_protocol(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        throw ParseError(line_column(text, e.byte), "malformed JSON");
    }
    if (!doc.is_object()) {
        throw ParseError("/", "expected a JSON object");
    }
    std::vector<std::string> warnings;
    std::string name = "protocol";
    if (const auto it = doc.find("name"); it != doc.end()) {
        if (!it->is_string()) {
            throw ParseError("/name", "expected a string");
        }
        name = it->get<std::string>();
    }
    const auto bit0 = parse_bit(doc, 0, warnings);
    const auto bit1 = parse_bit(doc, 1, warnings);

    std::optional<FamilyTag> family;
    if (const auto it = doc.find("family"); it != doc.end()) {
        if (!it->is_object()) {
            throw ParseError("/family", "expected an object");
        }
        const auto fname = it->find("name");
        if (fname == it->end() || !fname->is_string()) {
            throw ParseError("/family/name", "expected a family name");
        }
        const auto f = family_from_name(fname->get<std::string>());
        if (!f) {
            throw ParseError("/family/name", "unknown family '" + fname->get<std::string>() + "'");
        }
        FamilyTag tag{*f, angle_field(*it, "param", "/family", true), kPi / 2};
        if (it->contains("phi")) {
            tag.phi = angle_field(*it, "phi", "/family", true);
        }
        family = tag;
    }

    ProtocolSpec spec = [&] {
        try {
            return ProtocolSpec::make(name, bit0, bit1);
        } catch (const Error &e) {
            if (e.code() == ErrorCode::kUnsupportedSetSize) {
                throw;
            }
            throw ParseError("/", e.what());
        }
    }();
    return {std::move(spec), family, std::move(warnings)};
}

LoadedProtocol load_protocol_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path, "cannot open file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_protocol(buf.str());
    } catch (const ParseError &e) {
        throw ParseError(path + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
    }
}

}  // namespace bcattack::cli
