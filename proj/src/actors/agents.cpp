// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#include <fasten/actors/agents.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fasten::actors {

namespace m = ledger::method;
using ledger::Payload;

// ---------------------------------------------------------------------------
// Ground truth

void GroundTruthBook::record(CastEntry entry) {
    std::lock_guard lock{mutex_};
    entries_.push_back(std::move(entry));
}

std::vector<CastEntry> GroundTruthBook::entries() const {
    std::lock_guard lock{mutex_};
    return entries_;
}

std::optional<CastEntry> GroundTruthBook::find(std::uint64_t record_index) const {
    std::lock_guard lock{mutex_};
    for (const auto& e : entries_) {
        if (e.record_index == record_index) {
            return e;
        }
    }
    return std::nullopt;
}

std::size_t GroundTruthBook::size() const {
    std::lock_guard lock{mutex_};
    return entries_.size();
}

contract::TallyResult GroundTruthBook::expected_tally(const std::vector<CandidateId>& candidates,
                                                      const std::set<KeyId>& missing_keys) const {
    std::lock_guard lock{mutex_};
    contract::TallyResult t;
    for (const auto c : candidates) {
        t.counts[c] = 0;
    }
    for (const auto& e : entries_) {
        if (missing_keys.contains(e.key_id)) {
            ++t.undecryptable;
            continue;
        }
        const auto it = e.plaintext <= BigInt{UINT32_MAX} ? t.counts.find(static_cast<CandidateId>(e.plaintext))
                                                          : t.counts.end();
        if (it == t.counts.end()) {
            ++t.spoiled;
        } else {
            ++it->second;
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// Voters

namespace {

    CastOutcome from_receipt(const ledger::Receipt& r) {
        CastOutcome out;
        out.accepted = r.accepted();
        out.reason = r.outcome.reason;
        out.record_index = r.index;
        out.gas_spent = r.gas_charged;
        return out;
    }

    std::vector<CandidateId> parse_candidates(std::string_view list) {
        std::vector<CandidateId> out;
        if (list.empty()) {
            return out;
        }
        for (const auto item : ledger::split(list, ',')) {
            out.push_back(static_cast<CandidateId>(ledger::parse_u64(item)));
        }
        return out;
    }

    crypto::GroupParams group_of(const ledger::Ledger& ledger) {
        const auto& c = dynamic_cast<const contract::VotingContract&>(ledger.contract());
        return c.genesis().group;
    }

}  // namespace

CastOutcome read_candidate_list(VoterAgent& agent, ledger::Ledger& ledger) {
    const auto receipt = ledger.submit_transaction(agent.cast_address, 0, m::kGetCandidateList, {});
    if (receipt.accepted()) {
        agent.candidate_list = parse_candidates(receipt.result.get("candidates"));
    }
    return from_receipt(receipt);
}

CastOutcome cast_ballot(VoterAgent& agent, ledger::Ledger& ledger, crypto::Rng& rng, GroundTruthBook& book) {
    if (!agent.token) {
        throw std::logic_error("voter has no token");
    }
    Gas spent = 0;
    const auto key_receipt = ledger.submit_transaction(agent.cast_address, 0, m::kGetEncryptionKey, {});
    spent += key_receipt.gas_charged;
    if (!key_receipt.accepted()) {
        auto out = from_receipt(key_receipt);
        out.gas_spent = spent;
        return out;
    }
    const auto id = static_cast<KeyId>(key_receipt.result.get_u64("id"));
    const crypto::PublicKey ek{group_of(ledger), key_receipt.result.get_hex("ek")};

    const BigInt plaintext = agent.plaintext();
    const auto ev = crypto::encrypt(ek, plaintext, rng);

    Payload args;
    args.set_bytes("token", agent.token->value);
    args.set_u64("id", id);
    args.set_hex("beta", ev.beta);
    args.set_hex("gamma", ev.gamma);
    const auto cast_receipt = ledger.submit_transaction(agent.cast_address, 0, m::kCastVote, args);
    spent += cast_receipt.gas_charged;

    auto out = from_receipt(cast_receipt);
    out.key_id = id;
    out.gas_spent = spent;
    if (out.accepted) {
        book.record({cast_receipt.index, agent.cast_address, id, ev, plaintext});
    }
    return out;
}

CastOutcome run_voter(VoterAgent& agent, ledger::Ledger& ledger, const VoterSchedule& schedule, crypto::Rng& rng,
                      GroundTruthBook& book) {
    ledger.advance_to(schedule.list_at);
    auto listed = read_candidate_list(agent, ledger);
    if (!listed.accepted) {
        return listed;
    }
    ledger.advance_to(schedule.cast_at);
    auto cast = cast_ballot(agent, ledger, rng, book);
    cast.gas_spent += listed.gas_spent;
    return cast;
}

// ---------------------------------------------------------------------------
// Wardens

std::string_view name(WardenBehavior b) {
    switch (b) {
        case WardenBehavior::kHonest: return "honest";
        case WardenBehavior::kAbort: return "abort";
        case WardenBehavior::kLeak: return "leak";
    }
    return "?";
}

WardenBehavior parse_warden_behavior(std::string_view text) {
    if (text == "honest") {
        return WardenBehavior::kHonest;
    }
    if (text == "abort") {
        return WardenBehavior::kAbort;
    }
    if (text == "leak") {
        return WardenBehavior::kLeak;
    }
    throw std::invalid_argument("unknown warden behavior: " + std::string(text));
}

void AdversaryLog::publish(LeakedKey key) {
    std::lock_guard lock{mutex_};
    keys_.push_back(std::move(key));
}

std::vector<LeakedKey> AdversaryLog::leaked_keys() const {
    std::lock_guard lock{mutex_};
    return keys_;
}

std::vector<LeakedKey> AdversaryLog::leaked_before(Timestamp t) const {
    std::lock_guard lock{mutex_};
    std::vector<LeakedKey> out;
    std::copy_if(keys_.begin(), keys_.end(), std::back_inserter(out), [t](const LeakedKey& k) { return k.at < t; });
    return out;
}

WardenOutcome run_warden(WardenAgent& agent, ledger::Ledger& ledger, WardenPhase phase, AdversaryLog& log) {
    WardenOutcome out;
    auto submit = [&](const Amount& value, std::string_view method, const Payload& args) {
        auto r = ledger.submit_transaction(agent.address, value, method, args);
        out.gas_spent += r.gas_charged;
        out.all_accepted = out.all_accepted && r.accepted();
        out.receipts.push_back(std::move(r));
    };
    switch (phase) {
        case WardenPhase::kSetup: {
            submit(agent.deposit, m::kDepositSecurity, {});
            Payload args;
            args.set_hex("ek", agent.keys.pub.h);
            submit(0, m::kSubmitEncryptionKey, args);
            break;
        }
        case WardenPhase::kLeakCheck:
            if (agent.behavior == WardenBehavior::kLeak && !agent.leaked && ledger.now() >= agent.leak_at) {
                log.publish({agent.key_id, agent.keys.secret, ledger.now()});
                agent.leaked = true;
            }
            break;
        case WardenPhase::kKeyRelease:
            if (agent.behavior != WardenBehavior::kAbort) {
                Payload args;
                args.set_hex("dk", agent.keys.secret.x);
                submit(0, m::kSubmitDecryptionKey, args);
            }
            break;
        case WardenPhase::kWithdraw:
            if (agent.behavior != WardenBehavior::kAbort) {
                submit(0, m::kWithdrawReward, {});
            }
            break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Adversaries

namespace {

    AttackReport guess_tokens(const TokenGuessing& s, AdversaryAgent& agent, ledger::Ledger& ledger,
                              const AttackContext& ctx, crypto::Rng& rng, GroundTruthBook& book) {
        AttackReport report;
        report.strategy = s.submit ? "token_guessing_submit" : "token_guessing";
        report.attempts = s.attempts;
        const double space = std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(ctx.token_bits, 1000)));
        report.success_probability = std::min(1.0, static_cast<double>(ctx.issued_tokens) / space);
        report.expected_successes = static_cast<double>(s.attempts) * report.success_probability;
        report.sigma = std::sqrt(static_cast<double>(s.attempts) * report.success_probability *
                                 (1.0 - report.success_probability));

        const auto group = group_of(ledger);
        // Any well-formed ciphertext; a guess succeeds or fails on the token alone.
        Payload args;
        args.set_u64("id", 1);
        args.set_hex("beta", 1);
        args.set_hex("gamma", 1);
        for (std::uint64_t i = 0; i < s.attempts; ++i) {
            const Token guess{rng.bits(ctx.token_bits)};
            args.set_bytes("token", guess.value);
            if (!s.submit) {
                try {
                    ledger.call(agent.address, m::kCastVote, args);
                    ++report.successes;
                } catch (const ledger::Revert&) {
                }
                continue;
            }
            const Payload key = ledger.call(agent.address, m::kGetEncryptionKey, {});
            const auto id = static_cast<KeyId>(key.get_u64("id"));
            const auto ev = crypto::encrypt({group, key.get_hex("ek")}, BigInt{ctx.vote_for}, rng);
            Payload cast;
            cast.set_bytes("token", guess.value);
            cast.set_u64("id", id);
            cast.set_hex("beta", ev.beta);
            cast.set_hex("gamma", ev.gamma);
            const auto r = ledger.submit_transaction(agent.address, 0, m::kCastVote, cast);
            if (r.accepted()) {
                ++report.successes;
                book.record({r.index, agent.address, id, ev, BigInt{ctx.vote_for}});
            }
        }
        return report;
    }

    AttackReport double_vote(const DoubleVote& s, AdversaryAgent& agent, ledger::Ledger& ledger,
                             const AttackContext& ctx, crypto::Rng& rng, GroundTruthBook& book) {
        if (!ctx.own_token) {
            throw std::invalid_argument("double-vote attack needs the adversary's own token");
        }
        AttackReport report;
        report.strategy = "double_vote";
        report.attempts = s.attempts;
        const auto group = group_of(ledger);
        for (std::uint64_t i = 0; i < s.attempts; ++i) {
            Payload key;
            try {
                key = ledger.call(agent.address, m::kGetEncryptionKey, {});
            } catch (const ledger::Revert&) {
                continue;
            }
            const auto id = static_cast<KeyId>(key.get_u64("id"));
            const auto ev = crypto::encrypt({group, key.get_hex("ek")}, BigInt{ctx.vote_for}, rng);
            Payload cast;
            cast.set_bytes("token", ctx.own_token->value);
            cast.set_u64("id", id);
            cast.set_hex("beta", ev.beta);
            cast.set_hex("gamma", ev.gamma);
            const auto r = ledger.submit_transaction(agent.address, 0, m::kCastVote, cast);
            if (r.accepted()) {
                ++report.successes;
                book.record({r.index, agent.address, id, ev, BigInt{ctx.vote_for}});
            }
        }
        return report;
    }

}  // namespace

AttackReport run_adversary(AdversaryAgent& agent, ledger::Ledger& ledger, const AttackContext& ctx,
                           crypto::Rng& rng, GroundTruthBook& book) {
    return std::visit(
        [&](const auto& s) -> AttackReport {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, TokenGuessing>) {
                return guess_tokens(s, agent, ledger, ctx, rng, book);
            } else {
                return double_vote(s, agent, ledger, ctx, rng, book);
            }
        },
        agent.strategy);
}

}  // namespace fasten::actors
