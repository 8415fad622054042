// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#include <fasten/harness/election.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include <fasten/commission/commission.hpp>
#include <fasten/contract/voting_contract.hpp>

namespace fasten::harness {

namespace m = ledger::method;
using actors::WardenBehavior;
using contract::ElectionTimeline;
using ledger::Payload;

namespace {

    ledger::GasTable gas_table_for(const ScenarioConfig& config) {
        auto table = ledger::GasTable::defaults();
        for (const auto& [method, gas] : config.gas_overrides) {
            table.set(method, gas);
        }
        return table;
    }

    Amount fee_unit(const ledger::GasTable& table, const Amount& gas_price) {
        Gas most = 0;
        for (const auto& [_, gas] : table.entries()) {
            most = std::max(most, gas);
        }
        return Amount{most} * gas_price;
    }

    // Positions (0-based) of the registered candidates that back out: every
    // second one first, so the surviving ids have gaps.
    std::vector<std::size_t> backout_positions(std::size_t registered, std::size_t backouts) {
        std::vector<std::size_t> order;
        for (std::size_t i = 1; i < registered; i += 2) {
            order.push_back(i);
        }
        for (std::size_t i = 0; i < registered; i += 2) {
            order.push_back(i);
        }
        order.resize(backouts);
        return order;
    }

    contract::TallyResult tally_from(const ledger::Receipt& r) {
        if (!r.accepted()) {
            throw std::runtime_error("TallyVote reverted: " + r.outcome.reason);
        }
        return contract::TallyResult::from_payload(r.result);
    }

    ExposureReport measure_exposure(const ledger::Ledger& ledger, const actors::AdversaryLog& log,
                                    const actors::GroundTruthBook& book, const ElectionTimeline& timeline,
                                    std::size_t num_keys) {
        ExposureReport out;
        std::map<KeyId, crypto::SecretKey> leaked;
        for (const auto& k : log.leaked_before(timeline.t_evc)) {
            leaked.emplace(k.key_id, k.key);
            out.leaked_keys.insert(k.key_id);
        }
        std::uint64_t casts = 0;
        for (const auto& r : ledger.records()) {
            if (r.method != m::kCastVote || !r.outcome.accepted || r.timestamp >= timeline.t_evc) {
                continue;
            }
            ++casts;
            const auto args = ledger::split_recorded_payload(r.payload).second;
            const auto id = static_cast<KeyId>(args.get_u64("id"));
            const crypto::VoteCiphertext ev{args.get_hex("beta"), args.get_hex("gamma")};
            const auto truth = book.find(r.index);
            if (!truth) {
                throw std::logic_error("accepted cast missing from the ground-truth book");
            }
            if (const auto it = leaked.find(id); it != leaked.end()) {
                out.leaked_batch_records.insert(r.index);
                if (crypto::decrypt(it->second, ev) == truth->plaintext) {
                    out.decrypted_records.insert(r.index);
                }
                continue;
            }
            for (const auto& [_, key] : leaked) {
                if (crypto::decrypt(key, ev) == truth->plaintext) {
                    ++out.cross_key_hits;
                    break;
                }
            }
        }
        out.expected_size = static_cast<double>(leaked.size()) * static_cast<double>(casts) /
                            static_cast<double>(num_keys);
        return out;
    }

    nlohmann::json tally_json(const contract::TallyResult& t) {
        nlohmann::json counts = nlohmann::json::object();
        for (const auto& [c, n] : t.counts) {
            counts[std::to_string(c)] = n;
        }
        return {{"counts", counts}, {"spoiled", t.spoiled}, {"undecryptable", t.undecryptable}};
    }

}  // namespace

ElectionReport run_election(const ScenarioConfig& config) {
    config.validate();
    const ElectionTimeline& tl = config.timeline;
    const crypto::Rng root{config.seed};
    crypto::Rng id_rng = root.fork("identities");
    crypto::Rng addr_rng = root.fork("addresses");
    crypto::Rng choice_rng = root.fork("choices");

    ElectionReport report;
    report.config = config;

    // Electorate and candidate identities.
    std::vector<commission::Credential> candidate_ids;
    const std::size_t registered = config.candidates + config.candidate_backouts;
    for (std::size_t i = 0; i < registered; ++i) {
        candidate_ids.push_back("cand-" + to_hex(id_rng.bytes(12)));
    }
    for (std::size_t i = 0; i < config.voters; ++i) {
        report.voter_identities.push_back("citizen-" + to_hex(id_rng.bytes(12)));
    }
    std::set<commission::Credential> eligible(candidate_ids.begin(), candidate_ids.end());
    eligible.insert(report.voter_identities.begin(), report.voter_identities.end());

    commission::Commission commission{
        tl, config.token_bits, [&eligible](const commission::Credential& c) { return eligible.contains(c); },
        root.fork("commission")};

    // Candidature.
    for (const auto& c : candidate_ids) {
        commission.register_candidate(c, tl.t_bcr);
    }
    for (const auto pos : backout_positions(registered, config.candidate_backouts)) {
        commission.backout(candidate_ids[pos], tl.t_bcr);
    }
    report.candidates = commission.candidate_list();

    // Token distribution; every voter asks twice.
    std::vector<actors::VoterAgent> voters(config.voters);
    for (std::size_t i = 0; i < config.voters; ++i) {
        voters[i].identity = report.voter_identities[i];
        voters[i].token = commission.issue_token(voters[i].identity, tl.t_btd);
        if (commission.issue_token(voters[i].identity, tl.t_btd) != *voters[i].token) {
            report.token_reissue_stable = false;
        }
        voters[i].cast_address = addr_rng.address();
        report.cast_addresses.push_back(voters[i].cast_address);
        report.tokens.push_back(*voters[i].token);
    }
    const auto database = commission.export_hash_database(tl.t_etd);
    report.commission_state = commission.state_dump();

    // Wardens.
    std::vector<actors::WardenAgent> wardens(config.wardens);
    contract::ContractGenesis genesis;
    for (std::size_t i = 0; i < config.wardens; ++i) {
        auto& w = wardens[i];
        crypto::Rng key_rng = root.fork("warden." + std::to_string(i));
        w.address = addr_rng.address();
        w.key_id = static_cast<KeyId>(i + 1);
        w.keys = crypto::keygen(config.group, key_rng);
        w.behavior = config.behavior_of(i);
        for (const auto& spec : config.warden_behaviors) {
            if (spec.index == i && spec.leak_at) {
                w.leak_at = *spec.leak_at;
            }
        }
        w.deposit = config.security_amount + config.deposit_excess;
        genesis.wardens[w.address] = w.key_id;
        report.warden_addresses.push_back(w.address);
    }

    // Contract deployment at t_etd.
    genesis.timeline = tl;
    genesis.group = config.group;
    genesis.candidates = report.candidates;
    genesis.num_keys = static_cast<KeyId>(config.wardens);
    genesis.security_amount = config.security_amount;
    genesis.reward = config.reward;
    crypto::Rng sample_rng = root.fork("samples");
    for (std::size_t i = 0; i < config.key_checks; ++i) {
        genesis.sample_texts.push_back(sample_rng.uniform_in(2, config.group.p - 1));
    }
    genesis.hash_database = database.digests;

    ledger::LedgerConfig lc;
    lc.gas = gas_table_for(config);
    lc.gas_price = config.gas_price;
    lc.genesis_time = tl.t_etd;
    lc.contract_address = addr_rng.address();
    lc.fee_collector = addr_rng.address();
    report.observer = addr_rng.address();
    const Amount unit = fee_unit(lc.gas, lc.gas_price);
    ledger::Ledger ledger{lc, std::make_unique<contract::VotingContract>(genesis), genesis.to_payload()};

    // Funding.
    ledger.mint(lc.contract_address, config.reward * config.wardens);
    for (const auto& w : wardens) {
        ledger.mint(w.address, w.deposit + unit * 8);
    }
    for (const auto& v : voters) {
        ledger.mint(v.cast_address, unit * 4);
    }
    ledger.mint(report.observer, unit * 4);
    std::vector<actors::AdversaryAgent> adversaries;
    for (const auto& spec : config.adversaries) {
        actors::AdversaryAgent a;
        a.address = addr_rng.address();
        if (spec.kind == AdversarySpec::Kind::kTokenGuessing) {
            a.strategy = actors::TokenGuessing{spec.attempts, spec.submit};
        } else {
            a.strategy = actors::DoubleVote{spec.attempts, spec.voter_index};
        }
        const std::uint64_t txs = std::holds_alternative<actors::TokenGuessing>(a.strategy) && !spec.submit
                                      ? 0
                                      : spec.attempts;
        ledger.mint(a.address, unit * (txs + 1));
        report.adversary_addresses.push_back(a.address);
        adversaries.push_back(a);
    }
    std::vector<Amount> funded;
    for (const auto& w : wardens) {
        funded.push_back(ledger.balance(w.address));
    }

    actors::AdversaryLog log;
    actors::GroundTruthBook book;
    std::vector<actors::WardenOutcome> warden_runs(config.wardens);
    auto warden_phase = [&](actors::WardenPhase phase) {
        for (std::size_t i = 0; i < wardens.size(); ++i) {
            const auto out = actors::run_warden(wardens[i], ledger, phase, log);
            warden_runs[i].gas_spent += out.gas_spent;
            warden_runs[i].all_accepted = warden_runs[i].all_accepted && out.all_accepted;
        }
    };

    // Warden setup.
    warden_phase(actors::WardenPhase::kSetup);

    // Candidate list, read just before casting opens.
    // One past the highest id ever registered: never a valid candidate.
    const BigInt spoiled_plaintext{registered + 1};
    ledger.advance_to(tl.t_bvc - 1);
    for (std::size_t i = 0; i < voters.size(); ++i) {
        auto& v = voters[i];
        actors::read_candidate_list(v, ledger);
        if (!v.candidate_list.empty()) {
            v.preference = v.candidate_list[choice_rng.uniform_u64(v.candidate_list.size())];
        }
        if (i < config.spoiled_votes) {
            v.plaintext_override = spoiled_plaintext;
        }
    }

    // Casting window.
    ledger.advance_to(tl.t_bvc);
    warden_phase(actors::WardenPhase::kLeakCheck);
    crypto::Rng attack_rng = root.fork("adversaries");
    for (std::size_t a = 0; a < adversaries.size(); ++a) {
        if (!std::holds_alternative<actors::TokenGuessing>(adversaries[a].strategy)) {
            continue;
        }
        actors::AttackContext ctx;
        ctx.token_bits = config.token_bits;
        ctx.issued_tokens = config.voters;
        ctx.vote_for = report.candidates.empty() ? 1 : report.candidates.front();
        crypto::Rng rng = attack_rng.fork(std::to_string(a));
        report.attacks.push_back(actors::run_adversary(adversaries[a], ledger, ctx, rng, book));
    }
    const Timestamp span = tl.t_evc - 1 - tl.t_bvc;
    for (std::size_t i = 0; i < voters.size(); ++i) {
        const auto offset = static_cast<Timestamp>(i) * span / static_cast<Timestamp>(voters.size());
        ledger.advance_to(tl.t_bvc + offset);
        warden_phase(actors::WardenPhase::kLeakCheck);
        crypto::Rng rng = root.fork("voter." + std::to_string(i));
        const auto out = actors::cast_ballot(voters[i], ledger, rng, book);
        out.accepted ? ++report.voters_cast : ++report.voters_rejected;
    }
    ledger.advance_to(tl.t_evc - 1);
    warden_phase(actors::WardenPhase::kLeakCheck);
    for (std::size_t a = 0; a < adversaries.size(); ++a) {
        const auto* dv = std::get_if<actors::DoubleVote>(&adversaries[a].strategy);
        if (dv == nullptr) {
            continue;
        }
        actors::AttackContext ctx;
        ctx.token_bits = config.token_bits;
        ctx.own_token = voters[dv->voter_index].token;
        ctx.vote_for = report.candidates.empty() ? 1 : report.candidates.front();
        crypto::Rng rng = attack_rng.fork(std::to_string(a));
        report.attacks.push_back(actors::run_adversary(adversaries[a], ledger, ctx, rng, book));
    }
    report.exposure = measure_exposure(ledger, log, book, tl, config.wardens);

    // Key release.
    ledger.advance_to(tl.t_evc + 1);
    warden_phase(actors::WardenPhase::kLeakCheck);
    warden_phase(actors::WardenPhase::kKeyRelease);

    // Tally and payouts.
    ledger.advance_to(tl.t_bvt + 1);
    report.contract_tally = tally_from(ledger.submit_transaction(report.observer, 0, m::kTallyVote, {}));
    report.contract_tally_repeat = tally_from(ledger.submit_transaction(report.observer, 0, m::kTallyVote, {}));
    const auto keys_receipt = ledger.submit_transaction(report.observer, 0, m::kGetDecryptionKeys, {});
    if (!keys_receipt.accepted()) {
        throw std::runtime_error("GetDecryptionKeys reverted: " + keys_receipt.outcome.reason);
    }
    warden_phase(actors::WardenPhase::kWithdraw);

    report.keys.group = config.group;
    for (KeyId id = 1; id <= config.wardens; ++id) {
        const auto text = keys_receipt.result.get("key." + std::to_string(id));
        if (text == "-") {
            report.keys.keys.emplace_back(std::nullopt);
            report.missing_keys.insert(id);
        } else {
            report.keys.keys.emplace_back(parse_hex_bigint(text));
        }
    }

    for (std::size_t i = 0; i < wardens.size(); ++i) {
        WardenReport w;
        w.index = i;
        w.key_id = wardens[i].key_id;
        w.address = wardens[i].address;
        w.behavior = wardens[i].behavior;
        w.gas_spent = warden_runs[i].gas_spent;
        w.fees = Amount{w.gas_spent} * config.gas_price;
        w.balance_delta = ledger.balance(w.address) - funded[i];
        w.all_accepted = warden_runs[i].all_accepted;
        report.wardens.push_back(w);
    }

    const auto& contract = dynamic_cast<const contract::VotingContract&>(ledger.contract());
    report.decrypt_operations = contract.decrypt_operations();
    report.accepted_casts = book.size();
    report.ground_truth = book.expected_tally(report.candidates, report.missing_keys);
    report.total_minted = ledger.total_minted();
    report.total_balance = ledger.total_balance();
    report.dump = ledger.dump();
    report.contract_state = ledger.contract_state();
    report.audit = audit_tally(report.dump, report.keys);
    return report;
}

std::string ElectionReport::summary_json() const {
    using nlohmann::json;
    json doc;
    doc["seed"] = config.seed;
    doc["voters"] = config.voters;
    doc["wardens"] = config.wardens;
    doc["candidates"] = candidates;
    doc["accepted_casts"] = accepted_casts;
    doc["voters_cast"] = voters_cast;
    doc["voters_rejected"] = voters_rejected;
    doc["contract_tally"] = tally_json(contract_tally);
    doc["auditor_tally"] = tally_json(audit.tally);
    doc["ground_truth_tally"] = tally_json(ground_truth);
    doc["missing_keys"] = missing_keys;
    doc["decrypt_operations"] = decrypt_operations;
    json batches = json::object();
    for (const auto& [id, n] : audit.batch_sizes) {
        batches[std::to_string(id)] = n;
    }
    doc["batch_sizes"] = batches;
    doc["attacks"] = json::array();
    for (const auto& a : attacks) {
        doc["attacks"].push_back({{"strategy", a.strategy},
                                  {"attempts", a.attempts},
                                  {"successes", a.successes},
                                  {"success_probability", a.success_probability},
                                  {"expected_successes", a.expected_successes},
                                  {"sigma", a.sigma}});
    }
    doc["warden_reports"] = json::array();
    for (const auto& w : wardens) {
        doc["warden_reports"].push_back({{"key_id", w.key_id},
                                         {"address", w.address.hex()},
                                         {"behavior", std::string(actors::name(w.behavior))},
                                         {"gas_spent", w.gas_spent},
                                         {"fees_wei", to_decimal(w.fees)},
                                         {"balance_delta_wei", to_decimal(w.balance_delta)}});
    }
    doc["exposure"] = {{"leaked_keys", exposure.leaked_keys},
                       {"leaked_batch_votes", exposure.leaked_batch_records.size()},
                       {"decrypted_votes", exposure.decrypted_records.size()},
                       {"expected_size", exposure.expected_size},
                       {"cross_key_hits", exposure.cross_key_hits}};
    return doc.dump(2) + "\n";
}

std::string ElectionReport::summary_table() const {
    std::ostringstream os;
    os << "voters " << config.voters << ", wardens " << config.wardens << ", seed " << config.seed << "\n";
    os << "accepted casts " << accepted_casts << " (" << voters_cast << " honest cast, " << voters_rejected
       << " rejected)\n\n";
    os << "candidate   contract   auditor   truth\n";
    for (const auto c : candidates) {
        auto count = [c](const contract::TallyResult& t) {
            const auto it = t.counts.find(c);
            return it == t.counts.end() ? std::uint64_t{0} : it->second;
        };
        os << std::setw(9) << c << std::setw(11) << count(contract_tally) << std::setw(10) << count(audit.tally)
           << std::setw(8) << count(ground_truth) << "\n";
    }
    os << std::setw(9) << "spoiled" << std::setw(11) << contract_tally.spoiled << std::setw(10)
       << audit.tally.spoiled << std::setw(8) << ground_truth.spoiled << "\n";
    os << std::setw(9) << "undecr." << std::setw(11) << contract_tally.undecryptable << std::setw(10)
       << audit.tally.undecryptable << std::setw(8) << ground_truth.undecryptable << "\n\n";
    for (const auto& w : wardens) {
        os << "warden " << w.key_id << " " << actors::name(w.behavior) << ": gas " << w.gas_spent
           << ", balance delta " << to_decimal(w.balance_delta) << " wei\n";
    }
    for (const auto& a : attacks) {
        os << "attack " << a.strategy << ": " << a.successes << "/" << a.attempts << " (expected "
           << a.expected_successes << ", sigma " << a.sigma << ")\n";
    }
    os << "exposure before close: " << exposure.decrypted_records.size() << " votes from "
       << exposure.leaked_keys.size() << " leaked keys (expected " << exposure.expected_size << ")\n";
    return os.str();
}

void write_election_outputs(const ElectionReport& report, const std::string& dir) {
    std::filesystem::create_directories(dir);
    auto write = [&dir](const std::string& name, const std::string& content) {
        std::ofstream out{std::filesystem::path{dir} / name, std::ios::binary};
        if (!out) {
            throw std::runtime_error("cannot write " + name + " in " + dir);
        }
        out << content;
    };
    write("ledger.dump", report.dump);
    write("keys.txt", report.keys.serialize());
    write("report.json", report.summary_json());
    write("report.txt", report.summary_table());
    write("scenario.json", report.config.to_json_text());
}

}  // namespace fasten::harness
