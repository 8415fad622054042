// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"

#include <memory>
#include <set>

#include <fasten/commission/commission.hpp>
#include <fasten/crypto/random.hpp>

namespace fasten::test {

using contract::GatedOp;
using ledger::Payload;
namespace m = ledger::method;

contract::ElectionTimeline sweep_timeline() { return {100, 200, 200, 300, 400, 500, 600}; }

harness::ScenarioConfig tiny_scenario(std::size_t voters, std::size_t wardens, std::size_t candidates,
                                      std::uint64_t seed) {
    harness::ScenarioConfig c;
    c.voters = voters;
    c.wardens = wardens;
    c.candidates = candidates;
    c.group = crypto::GroupParams::tiny();
    c.seed = seed;
    return c;
}

bool expected_open(GatedOp op, Timestamp t, const contract::ElectionTimeline& tl) {
    switch (op) {
        case GatedOp::kApplyForCandidature:
        case GatedOp::kBackout: return tl.t_bcr <= t && t < tl.t_ecr;
        case GatedOp::kGetToken: return tl.t_btd <= t && t < tl.t_etd;
        case GatedOp::kExportHashDatabase: return t >= tl.t_etd;
        case GatedOp::kGetCandidateList: return tl.t_ecr <= t && t < tl.t_bvc;
        case GatedOp::kGetEncryptionKey:
        case GatedOp::kCastVote: return tl.t_bvc <= t && t < tl.t_evc;
        case GatedOp::kDepositSecurity:
        case GatedOp::kSubmitEncryptionKey: return t < tl.t_bvc;
        case GatedOp::kSubmitDecryptionKey: return tl.t_evc < t && t < tl.t_bvt;
        case GatedOp::kGetDecryptionKeys:
        case GatedOp::kTallyVote:
        case GatedOp::kWithdrawReward: return t > tl.t_bvt;
    }
    return false;
}

namespace {

    bool off_chain(GatedOp op) {
        return op == GatedOp::kApplyForCandidature || op == GatedOp::kBackout || op == GatedOp::kGetToken ||
               op == GatedOp::kExportHashDatabase;
    }

    GatingProbe probe_commission(GatedOp op, Timestamp t, const contract::ElectionTimeline& tl) {
        GatingProbe p{op, t, expected_open(op, t, tl)};
        const std::set<std::string> people{"alice", "bob"};
        commission::Commission c{tl, 64, [&](const std::string& id) { return people.contains(id); },
                                 crypto::Rng{5}};
        if (op == GatedOp::kBackout) {
            c.register_candidate("alice", tl.t_bcr);
        }
        if (op == GatedOp::kExportHashDatabase) {
            c.issue_token("bob", tl.t_btd);
        }
        const std::string before = c.state_dump();
        try {
            switch (op) {
                case GatedOp::kApplyForCandidature: c.register_candidate("alice", t); break;
                case GatedOp::kBackout: c.backout("alice", t); break;
                case GatedOp::kGetToken: c.issue_token("bob", t); break;
                default: c.export_hash_database(t); break;
            }
            p.accepted = true;
        } catch (const commission::CommissionError& e) {
            p.reason = e.what();
            p.no_side_effects = c.state_dump() == before;
        }
        return p;
    }

    struct ChainFixture {
        crypto::GroupParams group = crypto::GroupParams::tiny();
        crypto::ElGamalKeyPair key_a;
        Address warden_a{Address::from_hex("00000000000000000000000000000000000000a1")};  // deposit + key
        Address warden_b{Address::from_hex("00000000000000000000000000000000000000b2")};  // nothing yet
        Address warden_c{Address::from_hex("00000000000000000000000000000000000000c3")};  // deposit only
        Address user{Address::from_hex("00000000000000000000000000000000000000d4")};
        Token token{Bytes{1, 2, 3, 4, 5, 6, 7, 8}};
        std::unique_ptr<ledger::Ledger> ledger;

        explicit ChainFixture(const contract::ElectionTimeline& tl) {
            key_a = crypto::keypair_from_secret(group, 6);
            contract::ContractGenesis g;
            g.timeline = tl;
            g.group = group;
            g.candidates = {1, 2};
            g.num_keys = 3;
            g.security_amount = 1000;
            g.reward = 100;
            g.sample_texts = {7};
            g.wardens = {{warden_a, 1}, {warden_b, 2}, {warden_c, 3}};
            g.hash_database = {crypto::hash_token(token)};
            ledger::LedgerConfig lc;
            lc.gas_price = 1;
            lc.genesis_time = tl.t_bcr - 10;
            lc.contract_address = Address::from_hex("00000000000000000000000000000000000000ee");
            lc.fee_collector = Address::from_hex("00000000000000000000000000000000000000fe");
            ledger = std::make_unique<ledger::Ledger>(lc, std::make_unique<contract::VotingContract>(g),
                                                      g.to_payload());
            ledger->mint(lc.contract_address, 300);
            for (const auto& a : {warden_a, warden_b, warden_c, user}) {
                ledger->mint(a, 10'000'000);
            }
            ledger->submit_transaction(warden_a, 1500, m::kDepositSecurity, {});
            Payload ek;
            ek.set_hex("ek", key_a.pub.h);
            ledger->submit_transaction(warden_a, 0, m::kSubmitEncryptionKey, ek);
            ledger->submit_transaction(warden_c, 1500, m::kDepositSecurity, {});
        }
    };

    GatingProbe probe_chain(GatedOp op, Timestamp t, const contract::ElectionTimeline& tl) {
        GatingProbe p{op, t, expected_open(op, t, tl)};
        ChainFixture f{tl};
        auto& ledger = *f.ledger;
        ledger.advance_to(t);

        Address sender = f.user;
        Amount value = 0;
        Payload args;
        switch (op) {
            case GatedOp::kCastVote:
                args.set_bytes("token", f.token.value);
                args.set_u64("id", 1);
                args.set_hex("beta", f.group.g);
                args.set_hex("gamma", f.group.g);
                break;
            case GatedOp::kDepositSecurity:
                sender = f.warden_b;
                value = 1500;
                break;
            case GatedOp::kSubmitEncryptionKey:
                sender = f.warden_c;
                args.set_hex("ek", f.key_a.pub.h);
                break;
            case GatedOp::kSubmitDecryptionKey:
                sender = f.warden_a;
                args.set_hex("dk", f.key_a.secret.x);
                break;
            case GatedOp::kWithdrawReward: sender = f.warden_a; break;
            default: break;
        }

        const std::string state_before = ledger.contract_state();
        const Amount contract_before = ledger.balance(ledger.config().contract_address);
        const Amount sender_before = ledger.balance(sender);
        const auto receipt = ledger.submit_transaction(sender, value, contract::name(op), args);
        p.accepted = receipt.accepted();
        if (!p.accepted) {
            p.reason = receipt.outcome.reason;
            const Amount fee = Amount{receipt.gas_charged} * ledger.config().gas_price;
            p.no_side_effects = ledger.contract_state() == state_before &&
                                ledger.balance(ledger.config().contract_address) == contract_before &&
                                ledger.balance(sender) == sender_before - fee;
        }
        return p;
    }

}  // namespace

GatingProbe probe_gated(GatedOp op, Timestamp t, const contract::ElectionTimeline& tl) {
    return off_chain(op) ? probe_commission(op, t, tl) : probe_chain(op, t, tl);
}

std::vector<GatingProbe> gating_sweep(const contract::ElectionTimeline& tl) {
    std::vector<GatingProbe> out;
    for (const auto op : contract::kAllGatedOps) {
        const auto w = contract::window_for(op, tl);
        std::vector<Timestamp> times;
        if (w.begin) {
            times.insert(times.end(), {*w.begin - 1, *w.begin});
        }
        if (w.end) {
            times.insert(times.end(), {*w.end - 1, *w.end});
        }
        for (const auto t : times) {
            out.push_back(probe_gated(op, t, tl));
        }
    }
    return out;
}

}  // namespace fasten::test
