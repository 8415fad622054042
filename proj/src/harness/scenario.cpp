// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#include <fasten/harness/scenario.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include <fasten/ledger/gas_table.hpp>

namespace fasten::harness {

using nlohmann::json;

namespace {

    void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
        if (!obj.is_object()) {
            throw std::invalid_argument(where + " must be an object");
        }
        for (const auto& [key, _] : obj.items()) {
            if (!allowed.contains(key)) {
                throw std::invalid_argument("unknown key '" + key + "' in " + where);
            }
        }
    }

    Amount read_amount(const json& v, const std::string& key) {
        if (v.is_string()) {
            return parse_bigint(v.get<std::string>());
        }
        if (v.is_number_unsigned()) {
            return Amount{v.get<std::uint64_t>()};
        }
        if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
            return Amount{v.get<std::int64_t>()};
        }
        throw std::invalid_argument(key + " must be a non-negative integer or integer string");
    }

    std::uint64_t read_count(const json& v, const std::string& key) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
            throw std::invalid_argument(key + " must be a non-negative integer");
        }
        return v.get<std::uint64_t>();
    }

    Timestamp read_time(const json& v, const std::string& key) {
        if (!v.is_number_integer()) {
            throw std::invalid_argument(key + " must be an integer");
        }
        return v.get<Timestamp>();
    }

    crypto::GroupParams read_group(const json& v) {
        if (v.is_string()) {
            const auto name = v.get<std::string>();
            if (name == "tiny") {
                return crypto::GroupParams::tiny();
            }
            if (name == "default_160") {
                return crypto::GroupParams::default_160();
            }
            throw std::invalid_argument("unknown named group: " + name);
        }
        reject_unknown(v, {"p", "g"}, "group");
        return {read_amount(v.at("p"), "group.p"), read_amount(v.at("g"), "group.g")};
    }

}  // namespace

actors::WardenBehavior ScenarioConfig::behavior_of(std::size_t warden_index) const {
    for (const auto& w : warden_behaviors) {
        if (w.index == warden_index) {
            return w.behavior;
        }
    }
    return actors::WardenBehavior::kHonest;
}

void ScenarioConfig::validate() const {
    if (wardens < 1) {
        throw std::invalid_argument("at least one warden is required");
    }
    if (candidates < 1) {
        throw std::invalid_argument("at least one candidate is required");
    }
    timeline.validate();
    if (timeline.t_bvc <= timeline.t_etd) {
        throw std::invalid_argument("warden setup needs t_etd < t_bvc");
    }
    group.validate();
    // Candidate ids run 1..candidates+backouts and a spoiled ballot encrypts
    // the next id up; all of them must be group elements.
    const BigInt highest = BigInt{candidates + candidate_backouts + (spoiled_votes > 0 ? 1 : 0)};
    if (highest > group.p - 1) {
        throw std::invalid_argument("group too small for the candidate ids");
    }
    if (spoiled_votes > voters) {
        throw std::invalid_argument("spoiled_votes exceeds voters");
    }
    if (token_bits < 1) {
        throw std::invalid_argument("token_bits must be positive");
    }
    if (token_bits < 64 && voters > (std::uint64_t{1} << token_bits)) {
        throw std::invalid_argument("token space smaller than the electorate");
    }
    const auto table = ledger::GasTable::defaults();
    for (const auto& [method, _] : gas_overrides) {
        if (!table.contains(method) || ledger::is_native_method(method)) {
            throw std::invalid_argument("gas override for unknown method: " + method);
        }
    }
    if (gas_price < 0 || security_amount < 0 || reward < 0) {
        throw std::invalid_argument("amounts must be non-negative");
    }
    if (deposit_excess <= 0) {
        throw std::invalid_argument("deposit_excess must be positive (deposits must exceed securityAmt)");
    }
    if (key_checks < 1) {
        throw std::invalid_argument("key_checks must be at least 1");
    }
    std::set<std::size_t> seen;
    for (const auto& w : warden_behaviors) {
        if (w.index >= wardens) {
            throw std::invalid_argument("warden behavior index out of range");
        }
        if (!seen.insert(w.index).second) {
            throw std::invalid_argument("duplicate warden behavior index");
        }
        if (w.behavior == actors::WardenBehavior::kLeak && !w.leak_at) {
            throw std::invalid_argument("leaking warden needs leak_at");
        }
    }
    for (const auto& a : adversaries) {
        if (a.kind == AdversarySpec::Kind::kDoubleVote && a.voter_index >= voters) {
            throw std::invalid_argument("double-vote adversary refers to a missing voter");
        }
    }
}

ScenarioConfig ScenarioConfig::from_json_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("scenario is not valid JSON: ") + e.what());
    }
    reject_unknown(doc,
                   {"voters", "wardens", "candidates", "candidate_backouts", "spoiled_votes", "timeline", "group",
                    "token_bits", "gas_table", "gas_price", "security_amount", "reward", "deposit_excess",
                    "key_checks", "warden_behaviors", "adversaries", "seed"},
                   "scenario");
    ScenarioConfig c;
    if (doc.contains("voters")) c.voters = read_count(doc["voters"], "voters");
    if (doc.contains("wardens")) c.wardens = read_count(doc["wardens"], "wardens");
    if (doc.contains("candidates")) c.candidates = read_count(doc["candidates"], "candidates");
    if (doc.contains("candidate_backouts")) c.candidate_backouts = read_count(doc["candidate_backouts"], "candidate_backouts");
    if (doc.contains("spoiled_votes")) c.spoiled_votes = read_count(doc["spoiled_votes"], "spoiled_votes");
    if (doc.contains("timeline")) {
        const auto& t = doc["timeline"];
        reject_unknown(t, {"t_bcr", "t_ecr", "t_btd", "t_etd", "t_bvc", "t_evc", "t_bvt"}, "timeline");
        c.timeline = {read_time(t.at("t_bcr"), "t_bcr"), read_time(t.at("t_ecr"), "t_ecr"),
                      read_time(t.at("t_btd"), "t_btd"), read_time(t.at("t_etd"), "t_etd"),
                      read_time(t.at("t_bvc"), "t_bvc"), read_time(t.at("t_evc"), "t_evc"),
                      read_time(t.at("t_bvt"), "t_bvt")};
    }
    if (doc.contains("group")) c.group = read_group(doc["group"]);
    if (doc.contains("token_bits")) c.token_bits = read_count(doc["token_bits"], "token_bits");
    if (doc.contains("gas_table")) {
        if (!doc["gas_table"].is_object()) {
            throw std::invalid_argument("gas_table must be an object");
        }
        for (const auto& [method, gas] : doc["gas_table"].items()) {
            c.gas_overrides[method] = read_count(gas, "gas_table." + method);
        }
    }
    if (doc.contains("gas_price")) c.gas_price = read_amount(doc["gas_price"], "gas_price");
    if (doc.contains("security_amount")) c.security_amount = read_amount(doc["security_amount"], "security_amount");
    if (doc.contains("reward")) c.reward = read_amount(doc["reward"], "reward");
    if (doc.contains("deposit_excess")) c.deposit_excess = read_amount(doc["deposit_excess"], "deposit_excess");
    if (doc.contains("key_checks")) c.key_checks = read_count(doc["key_checks"], "key_checks");
    if (doc.contains("warden_behaviors")) {
        for (const auto& w : doc["warden_behaviors"]) {
            reject_unknown(w, {"index", "behavior", "leak_at"}, "warden_behaviors[]");
            WardenSpec spec;
            spec.index = read_count(w.at("index"), "warden_behaviors[].index");
            spec.behavior = actors::parse_warden_behavior(w.at("behavior").get<std::string>());
            if (w.contains("leak_at")) spec.leak_at = read_time(w["leak_at"], "leak_at");
            c.warden_behaviors.push_back(spec);
        }
    }
    if (doc.contains("adversaries")) {
        for (const auto& a : doc["adversaries"]) {
            reject_unknown(a, {"strategy", "attempts", "submit", "voter_index"}, "adversaries[]");
            AdversarySpec spec;
            const auto strategy = a.at("strategy").get<std::string>();
            if (strategy == "token_guessing") {
                spec.kind = AdversarySpec::Kind::kTokenGuessing;
            } else if (strategy == "double_vote") {
                spec.kind = AdversarySpec::Kind::kDoubleVote;
            } else {
                throw std::invalid_argument("unknown adversary strategy: " + strategy);
            }
            spec.attempts = read_count(a.at("attempts"), "adversaries[].attempts");
            if (a.contains("submit")) spec.submit = a["submit"].get<bool>();
            if (a.contains("voter_index")) spec.voter_index = read_count(a["voter_index"], "voter_index");
            c.adversaries.push_back(spec);
        }
    }
    if (doc.contains("seed")) c.seed = read_count(doc["seed"], "seed");
    c.validate();
    return c;
}

ScenarioConfig ScenarioConfig::load(const std::string& path) {
    std::ifstream in{path};
    if (!in) {
        throw std::invalid_argument("cannot open scenario file: " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string ScenarioConfig::to_json_text() const {
    json doc;
    doc["voters"] = voters;
    doc["wardens"] = wardens;
    doc["candidates"] = candidates;
    doc["candidate_backouts"] = candidate_backouts;
    doc["spoiled_votes"] = spoiled_votes;
    doc["timeline"] = {{"t_bcr", timeline.t_bcr}, {"t_ecr", timeline.t_ecr}, {"t_btd", timeline.t_btd},
                       {"t_etd", timeline.t_etd}, {"t_bvc", timeline.t_bvc}, {"t_evc", timeline.t_evc},
                       {"t_bvt", timeline.t_bvt}};
    doc["group"] = {{"p", "0x" + to_hex(group.p)}, {"g", "0x" + to_hex(group.g)}};
    doc["token_bits"] = token_bits;
    doc["gas_table"] = json::object();
    for (const auto& [m, g] : gas_overrides) {
        doc["gas_table"][m] = g;
    }
    doc["gas_price"] = to_decimal(gas_price);
    doc["security_amount"] = to_decimal(security_amount);
    doc["reward"] = to_decimal(reward);
    doc["deposit_excess"] = to_decimal(deposit_excess);
    doc["key_checks"] = key_checks;
    doc["warden_behaviors"] = json::array();
    for (const auto& w : warden_behaviors) {
        json j{{"index", w.index}, {"behavior", std::string(actors::name(w.behavior))}};
        if (w.leak_at) {
            j["leak_at"] = *w.leak_at;
        }
        doc["warden_behaviors"].push_back(j);
    }
    doc["adversaries"] = json::array();
    for (const auto& a : adversaries) {
        json j{{"strategy", a.kind == AdversarySpec::Kind::kTokenGuessing ? "token_guessing" : "double_vote"},
               {"attempts", a.attempts}};
        if (a.kind == AdversarySpec::Kind::kTokenGuessing) {
            j["submit"] = a.submit;
        } else {
            j["voter_index"] = a.voter_index;
        }
        doc["adversaries"].push_back(j);
    }
    doc["seed"] = seed;
    return doc.dump(2) + "\n";
}

}  // namespace fasten::harness
