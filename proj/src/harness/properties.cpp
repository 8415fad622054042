// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#include <fasten/harness/properties.hpp>

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <fasten/contract/voting_contract.hpp>
#include <fasten/crypto/keccak.hpp>
#include <fasten/ledger/record.hpp>

namespace fasten::harness {

namespace m = ledger::method;
using ledger::LedgerRecord;

namespace {

    PropertyResult pass(std::string name) { return {std::move(name), true, "ok"}; }
    PropertyResult fail(std::string name, std::string detail) { return {std::move(name), false, std::move(detail)}; }

    std::vector<LedgerRecord> verified_records(const ElectionReport& report) {
        return ledger::parse_and_verify_dump(report.dump);
    }

    // token hex -> accepted CastVote senders
    std::map<std::string, std::vector<std::string>> accepted_casts_by_token(const std::vector<LedgerRecord>& rs) {
        std::map<std::string, std::vector<std::string>> out;
        for (const auto& r : rs) {
            if (r.method == m::kCastVote && r.outcome.accepted) {
                const auto args = ledger::split_recorded_payload(r.payload).second;
                out[std::string{args.get("token")}].push_back(r.sender.hex());
            }
        }
        return out;
    }

    // Commission state lines are key=value with ':'-separated parts. Short
    // tokens would match inside digests by chance, so compare whole fields.
    std::set<std::string> state_fields(const std::string& state) {
        std::set<std::string> out;
        std::string field;
        for (const char ch : state) {
            if (ch == '\n' || ch == '=' || ch == ':') {
                out.insert(field);
                field.clear();
            } else {
                field += ch;
            }
        }
        out.insert(field);
        return out;
    }

}  // namespace

bool within_guessing_bound(const actors::AttackReport& a) {
    return static_cast<double>(a.successes) <= a.expected_successes + 3.0 * a.sigma;
}

PropertyResult check_anonymity(const ElectionReport& report) {
    const std::string name = "VA";
    const auto records = verified_records(report);
    for (const auto& id : report.voter_identities) {
        const std::string forms[] = {id, to_hex(as_bytes(id)), crypto::keccak256(id).hex()};
        for (const auto& f : forms) {
            if (report.dump.find(f) != std::string::npos) {
                return fail(name, "ledger dump contains identity-derived bytes of " + id);
            }
            if (report.commission_state.find(f) != std::string::npos) {
                return fail(name, "commission state after export still holds " + id);
            }
        }
    }
    if (report.commission_state.find("commitment=") != std::string::npos) {
        return fail(name, "commission state after export still holds identity commitments");
    }
    const auto fields = state_fields(report.commission_state);
    for (const auto& t : report.tokens) {
        if (fields.contains(to_hex(t.value))) {
            return fail(name, "commission state after export still holds a raw token");
        }
    }

    std::set<Address> role_addresses(report.warden_addresses.begin(), report.warden_addresses.end());
    role_addresses.insert(report.adversary_addresses.begin(), report.adversary_addresses.end());
    role_addresses.insert(report.observer);
    std::set<Address> cast(report.cast_addresses.begin(), report.cast_addresses.end());
    if (cast.size() != report.cast_addresses.size()) {
        return fail(name, "two voters share a casting address");
    }
    for (const auto& a : cast) {
        if (role_addresses.contains(a)) {
            return fail(name, "casting address reused by another role");
        }
    }
    std::map<Address, std::uint64_t> casts_per_sender;
    for (const auto& r : records) {
        if (r.method == m::kCastVote && r.outcome.accepted && ++casts_per_sender[r.sender] > 1 &&
            cast.contains(r.sender)) {
            return fail(name, "casting address " + r.sender.hex() + " used for two accepted casts");
        }
    }
    for (const auto& [token, senders] : accepted_casts_by_token(records)) {
        if (senders.size() > 1) {
            return fail(name, "token " + token + " links " + std::to_string(senders.size()) + " casts");
        }
    }
    for (const auto& a : report.attacks) {
        if (a.strategy.starts_with("token_guessing") && !within_guessing_bound(a)) {
            std::ostringstream os;
            os << a.strategy << ": " << a.successes << " successes exceed " << a.expected_successes << " + 3*"
               << a.sigma;
            return fail(name, os.str());
        }
    }
    return pass(name);
}

PropertyResult check_concealment(const ElectionReport& report) {
    const std::string name = "VC";
    const auto& e = report.exposure;
    if (e.decrypted_records != e.leaked_batch_records) {
        return fail(name, "pre-close decryptable set (" + std::to_string(e.decrypted_records.size()) +
                              ") differs from the union of leaked batches (" +
                              std::to_string(e.leaked_batch_records.size()) + ")");
    }
    if (e.leaked_keys.empty() && !e.decrypted_records.empty()) {
        return fail(name, "exposure without any leaked key");
    }
    std::uint64_t leaked_batch_total = 0;
    for (const auto id : e.leaked_keys) {
        const auto it = report.audit.batch_sizes.find(id);
        leaked_batch_total += it == report.audit.batch_sizes.end() ? 0 : it->second;
    }
    if (leaked_batch_total != e.leaked_batch_records.size()) {
        return fail(name, "leaked batch sizes do not add up");
    }
    if (report.config.group.bits() >= 64 && e.cross_key_hits != 0) {
        return fail(name, "a leaked key decrypted ciphertexts outside its batch");
    }
    return pass(name);
}

PropertyResult check_immutability(const ElectionReport& report) {
    const std::string name = "VI";
    try {
        const auto replayed = ledger::Ledger::replay(report.dump, contract::make_voting_contract);
        if (replayed->contract_state() != report.contract_state) {
            return fail(name, "replayed contract state differs");
        }
        if (replayed->dump() != report.dump) {
            return fail(name, "replayed dump differs");
        }
    } catch (const ledger::DumpError& e) {
        return fail(name, std::string("dump rejected: ") + e.what());
    }
    return pass(name);
}

PropertyResult check_double_vote(const ElectionReport& report) {
    const std::string name = "DVI";
    for (const auto& [token, senders] : accepted_casts_by_token(verified_records(report))) {
        if (senders.size() > 1) {
            return fail(name, "token " + token + " accepted " + std::to_string(senders.size()) + " times");
        }
    }
    if (report.audit.reused_tokens != 0) {
        return fail(name, "auditor found reused tokens");
    }
    for (const auto& a : report.attacks) {
        if (a.strategy == "double_vote" && a.successes != 0) {
            return fail(name, "double-vote adversary succeeded " + std::to_string(a.successes) + " times");
        }
    }
    return pass(name);
}

PropertyResult check_tally(const ElectionReport& report) {
    const std::string name = "tally";
    if (report.contract_tally != report.audit.tally) {
        return fail(name, "contract tally differs from the auditor's");
    }
    if (report.contract_tally != report.ground_truth) {
        return fail(name, "contract tally differs from ground truth");
    }
    if (report.contract_tally_repeat != report.contract_tally) {
        return fail(name, "repeated TallyVote changed the result");
    }
    if (report.contract_tally.total() != report.accepted_casts ||
        report.audit.accepted_casts != report.accepted_casts) {
        return fail(name, "tally + spoiled + undecryptable != accepted casts");
    }
    const std::uint64_t decryptable = report.accepted_casts - report.contract_tally.undecryptable;
    if (report.decrypt_operations != decryptable) {
        return fail(name, "tally decrypted " + std::to_string(report.decrypt_operations) + " ciphertexts, expected " +
                              std::to_string(decryptable));
    }
    return pass(name);
}

PropertyResult check_conservation(const ElectionReport& report) {
    if (report.total_balance != report.total_minted) {
        return fail("conservation", "balances " + to_decimal(report.total_balance) + " != minted " +
                                        to_decimal(report.total_minted));
    }
    return pass("conservation");
}

PropertyResult check_phases(const ElectionReport& report) {
    const std::string name = "phase";
    std::map<std::string, contract::Window, std::less<>> windows;
    for (const auto op : contract::kAllGatedOps) {
        windows.emplace(std::string{contract::name(op)}, contract::window_for(op, report.config.timeline));
    }
    for (const auto& r : verified_records(report)) {
        if (ledger::is_native_method(r.method)) {
            continue;
        }
        const auto it = windows.find(r.method);
        if (it == windows.end()) {
            return fail(name, "record " + std::to_string(r.index) + " has ungated method " + r.method);
        }
        if (!it->second.contains(r.timestamp)) {
            return fail(name, "record " + std::to_string(r.index) + " (" + r.method + ") outside its window");
        }
    }
    return pass(name);
}

PropertyResult check_warden_economics(const ElectionReport& report) {
    const std::string name = "warden_economics";
    const auto& c = report.config;
    std::optional<Amount> lowest_honest;
    std::optional<Amount> highest_abort;
    for (const auto& w : report.wardens) {
        const std::string who = "warden " + std::to_string(w.key_id);
        if (w.behavior == actors::WardenBehavior::kAbort) {
            if (w.balance_delta > -c.security_amount - w.fees) {
                return fail(name, who + " aborted but lost less than securityAmt + gas");
            }
            highest_abort = highest_abort ? std::max(*highest_abort, w.balance_delta) : w.balance_delta;
            continue;
        }
        if (!w.all_accepted) {
            return fail(name, who + " had a transaction reverted");
        }
        if (w.balance_delta != c.reward - w.fees) {
            return fail(name, who + " delta " + to_decimal(w.balance_delta) + " != reward - gas " +
                                  to_decimal(c.reward - w.fees));
        }
        lowest_honest = lowest_honest ? std::min(*lowest_honest, w.balance_delta) : w.balance_delta;
    }
    if (c.reward > 0 && lowest_honest && highest_abort && !(*lowest_honest > *highest_abort)) {
        return fail(name, "an aborting warden ended no worse than an honest one (reward + securityAmt does not cover "
                          "the key release and withdrawal fees)");
    }
    return pass(name);
}

PropertySuite property_suite(const ElectionReport& report) {
    PropertySuite s;
    auto guarded = [&s](const std::string& name, auto check) {
        try {
            s.results.push_back(check());
        } catch (const std::exception& e) {
            s.results.push_back(fail(name, std::string("check threw: ") + e.what()));
        }
    };
    guarded("VA", [&] { return check_anonymity(report); });
    guarded("VC", [&] { return check_concealment(report); });
    guarded("VI", [&] { return check_immutability(report); });
    guarded("DVI", [&] { return check_double_vote(report); });
    guarded("tally", [&] { return check_tally(report); });
    guarded("conservation", [&] { return check_conservation(report); });
    guarded("phase", [&] { return check_phases(report); });
    guarded("warden_economics", [&] { return check_warden_economics(report); });
    if (!report.token_reissue_stable) {
        s.results.push_back(fail("token_issuance", "a repeat token request returned a different token"));
    }
    return s;
}

bool PropertySuite::all_passed() const {
    return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.passed; });
}

const PropertyResult& PropertySuite::get(std::string_view name) const {
    for (const auto& r : results) {
        if (r.name == name) {
            return r;
        }
    }
    throw std::out_of_range("no property named " + std::string(name));
}

std::string PropertySuite::to_text() const {
    std::ostringstream os;
    for (const auto& r : results) {
        os << (r.passed ? "PASS " : "FAIL ") << r.name;
        if (!r.passed) {
            os << ": " << r.detail;
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace fasten::harness
