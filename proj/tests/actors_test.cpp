// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <map>

#include <catch2/catch_amalgamated.hpp>

#include <fasten/actors/agents.hpp>

namespace fasten::actors {

namespace {

    const contract::ElectionTimeline kTl = contract::ElectionTimeline::standard();
    constexpr std::uint64_t kFunds = 100'000'000;

    Address addr(std::uint8_t tag, std::size_t i) {
        Address a;
        a.bytes[0] = tag;
        a.bytes[18] = static_cast<std::uint8_t>(i >> 8);
        a.bytes[19] = static_cast<std::uint8_t>(i);
        return a;
    }

    // A small election wired by hand: commission, wardens, genesis, ledger.
    struct Election {
        std::vector<VoterAgent> voters;
        std::vector<WardenAgent> wardens;
        std::unique_ptr<ledger::Ledger> ledger;
        GroundTruthBook book;
        AdversaryLog log;
        crypto::Rng rng{99};
        contract::ContractGenesis genesis;

        Election(std::size_t n, KeyId w, std::size_t token_bits = 256,
                 crypto::GroupParams group = crypto::GroupParams::tiny(), Amount reward = 1'000'000) {
            commission::Commission ec{kTl, token_bits, [](const Credential&) { return true; }, crypto::Rng{7}};
            for (const auto* c : {"x", "y", "z"}) {
                ec.register_candidate(c, kTl.t_bcr);
            }
            for (std::size_t i = 0; i < n; ++i) {
                VoterAgent v;
                v.identity = "voter-" + std::to_string(i);
                v.preference = static_cast<CandidateId>(1 + i % 3);
                v.token = ec.issue_token(v.identity, kTl.t_btd);
                v.cast_address = addr(0x01, i);
                voters.push_back(std::move(v));
            }
            genesis.timeline = kTl;
            genesis.group = group;
            genesis.candidates = ec.candidate_list();
            genesis.num_keys = w;
            genesis.security_amount = 1000;
            genesis.reward = reward;
            genesis.sample_texts = {7, 11};
            genesis.hash_database = ec.export_hash_database(kTl.t_etd).digests;
            for (KeyId i = 1; i <= w; ++i) {
                WardenAgent a;
                a.address = addr(0x02, i);
                a.key_id = i;
                a.keys = crypto::keygen(group, rng);
                a.deposit = 1100;  // S plus an excess of 100
                genesis.wardens[a.address] = i;
                wardens.push_back(a);
            }
            ledger::LedgerConfig lc;
            lc.gas_price = 1;
            lc.genesis_time = kTl.t_etd;
            lc.contract_address = addr(0xce, 0);
            lc.fee_collector = addr(0xfe, 0);
            ledger = std::make_unique<ledger::Ledger>(lc, std::make_unique<contract::VotingContract>(genesis),
                                                      genesis.to_payload());
            ledger->mint(lc.contract_address, genesis.reward * w);
            for (const auto& a : wardens) {
                ledger->mint(a.address, kFunds);
            }
            for (const auto& v : voters) {
                ledger->mint(v.cast_address, kFunds);
            }
        }

        void setup_wardens() {
            for (auto& a : wardens) {
                REQUIRE(run_warden(a, *ledger, WardenPhase::kSetup, log).all_accepted);
            }
        }

        void cast_all() {
            const Timestamp span = kTl.t_evc - 1 - kTl.t_bvc;
            for (std::size_t i = 0; i < voters.size(); ++i) {
                const VoterSchedule when{kTl.t_bvc - 1, kTl.t_bvc + static_cast<Timestamp>(i) * span / static_cast<Timestamp>(voters.size())};
                if (ledger->now() > when.list_at) {
                    // Lists were already read; cast directly.
                    ledger->advance_to(when.cast_at);
                    REQUIRE(cast_ballot(voters[i], *ledger, rng, book).accepted);
                } else {
                    REQUIRE(run_voter(voters[i], *ledger, when, rng, book).accepted);
                }
            }
        }

        [[nodiscard]] const contract::VotingContract& contract() const {
            return dynamic_cast<const contract::VotingContract&>(ledger->contract());
        }
    };

}  // namespace

TEST_CASE("honest voter casts once and its token is then spent") {
    Election e{3, 2};
    e.setup_wardens();
    auto& v = e.voters[0];
    const auto first = run_voter(v, *e.ledger, {kTl.t_bvc - 1, kTl.t_bvc}, e.rng, e.book);
    REQUIRE(first.accepted);
    CHECK(v.candidate_list == std::vector<CandidateId>{1, 2, 3});
    CHECK(e.contract().batch(first.key_id).size() == 1);
    CHECK(e.book.size() == 1);
    CHECK(first.gas_spent == 26 + 667 + 739);

    const auto again = cast_ballot(v, *e.ledger, e.rng, e.book);
    CHECK_FALSE(again.accepted);
    CHECK(again.reason.find("token") != std::string::npos);
    CHECK(e.book.size() == 1);
    CHECK(e.contract().batch(1).size() + e.contract().batch(2).size() == 1);
}

TEST_CASE("voter without a scheduled list read fails cleanly") {
    Election e{1, 1};
    e.setup_wardens();
    const auto out = run_voter(e.voters[0], *e.ledger, {kTl.t_bvc, kTl.t_bvc}, e.rng, e.book);
    CHECK_FALSE(out.accepted);
    CHECK(e.book.size() == 0);
}

TEST_CASE("1000 voters over 10 keys fill batches evenly") {
    Election e{1000, 10};
    e.setup_wardens();
    e.cast_all();
    std::size_t total = 0;
    for (KeyId id = 1; id <= 10; ++id) {
        const auto size = e.contract().batch(id).size();
        CHECK(size >= 90);
        CHECK(size <= 110);
        total += size;
    }
    CHECK(total == 1000);
    // Casting addresses are fresh per voter.
    std::set<Address> seen;
    for (const auto& entry : e.book.entries()) {
        CHECK(seen.insert(entry.cast_address).second);
    }
}

namespace {

    struct WardenBooks {
        std::map<KeyId, Amount> delta;
        std::map<KeyId, Gas> gas;
    };

    // Runs every warden phase with wardens[1] aborting after setup.
    WardenBooks play_wardens(Election& e) {
        e.wardens[1].behavior = WardenBehavior::kAbort;
        WardenBooks b;
        std::map<KeyId, Amount> start;
        for (const auto& a : e.wardens) {
            start[a.key_id] = e.ledger->balance(a.address);
        }
        for (auto& a : e.wardens) {
            b.gas[a.key_id] += run_warden(a, *e.ledger, WardenPhase::kSetup, e.log).gas_spent;
        }
        e.cast_all();
        e.ledger->advance_to(kTl.t_evc + 1);
        for (auto& a : e.wardens) {
            const auto out = run_warden(a, *e.ledger, WardenPhase::kKeyRelease, e.log);
            CHECK(out.all_accepted);
            b.gas[a.key_id] += out.gas_spent;
        }
        e.ledger->advance_to(kTl.t_bvt + 1);
        for (auto& a : e.wardens) {
            const auto out = run_warden(a, *e.ledger, WardenPhase::kWithdraw, e.log);
            CHECK(out.all_accepted);
            b.gas[a.key_id] += out.gas_spent;
        }
        for (const auto& a : e.wardens) {
            b.delta[a.key_id] = e.ledger->balance(a.address) - start[a.key_id];
        }
        return b;
    }

}  // namespace

TEST_CASE("warden economics") {
    Election e{30, 3};
    const auto b = play_wardens(e);
    // Bookkeeping oracle: honest delta = excess + S + R - deposit - fees = R - fees, fees = gas at price 1.
    for (const auto& a : e.wardens) {
        INFO("warden " << a.key_id);
        const Amount fees{b.gas.at(a.key_id)};
        if (a.behavior == WardenBehavior::kHonest) {
            CHECK(b.gas.at(a.key_id) == 23 + 629 + 600755 + 21629);
            CHECK(b.delta.at(a.key_id) == e.genesis.reward - fees);
        } else {
            CHECK(b.gas.at(a.key_id) == 23 + 629);
            CHECK(b.delta.at(a.key_id) <= -e.genesis.security_amount - fees);
        }
    }
    CHECK(b.delta.at(1) > b.delta.at(2));
    CHECK(e.ledger->total_balance() == e.ledger->total_minted());
}

TEST_CASE("payoff ordering needs reward plus deposit to cover release fees") {
    // R + S = 1500 against 622384 gas for release and withdrawal: honesty loses money.
    Election e{3, 3, 256, crypto::GroupParams::tiny(), 500};
    const auto b = play_wardens(e);
    CHECK(b.delta.at(1) == 500 - Amount{23 + 629 + 600755 + 21629});
    CHECK(b.delta.at(2) == -Amount{1100 + 23 + 629});
    CHECK(b.delta.at(1) < b.delta.at(2));
}

TEST_CASE("leaking warden exposes exactly its batch") {
    Election e{1000, 10, 256, crypto::GroupParams::default_160()};
    e.wardens[4].behavior = WardenBehavior::kLeak;
    e.wardens[4].leak_at = kTl.t_bvc;
    e.setup_wardens();
    e.ledger->advance_to(kTl.t_bvc - 1);
    for (auto& a : e.wardens) {
        run_warden(a, *e.ledger, WardenPhase::kLeakCheck, e.log);
    }
    CHECK(e.log.leaked_keys().empty());
    e.cast_all();
    for (auto& a : e.wardens) {
        run_warden(a, *e.ledger, WardenPhase::kLeakCheck, e.log);
    }
    const auto leaked = e.log.leaked_before(kTl.t_evc);
    REQUIRE(leaked.size() == 1);
    CHECK(leaked[0].key_id == 5);

    std::size_t decrypted = 0;
    std::size_t garbage = 0;
    for (KeyId id = 1; id <= 10; ++id) {
        for (const auto& ct : e.contract().batch(id)) {
            const BigInt m = crypto::decrypt(leaked[0].key, ct);
            const bool hit = m >= 1 && m <= 3;
            decrypted += hit && id == 5 ? 1 : 0;
            garbage += hit && id != 5 ? 1 : 0;
        }
    }
    CHECK(decrypted == 100);
    CHECK(garbage == 0);
    // Decryptions agree with the sealed book.
    for (const auto& entry : e.book.entries()) {
        if (entry.key_id == 5) {
            CHECK(crypto::decrypt(leaked[0].key, entry.ciphertext) == entry.plaintext);
        }
    }
}

TEST_CASE("ground truth book tallies with gaps and missing keys") {
    GroundTruthBook book;
    book.record({1, Address{}, 1, {}, 1});
    book.record({2, Address{}, 2, {}, 1});
    book.record({3, Address{}, 1, {}, 4});
    book.record({4, Address{}, 1, {}, 2});
    const auto t = book.expected_tally({1, 3}, {2});
    CHECK(t.counts == std::map<CandidateId, std::uint64_t>{{1, 1}, {3, 0}});
    CHECK(t.spoiled == 2);
    CHECK(t.undecryptable == 1);
}

TEST_CASE("token guessing at 20 bits lands within three sigma of the binomial mean") {
    constexpr std::size_t kBits = 20;
    constexpr std::size_t kN = 100;
    constexpr std::uint64_t kQ = 100'000;
    Election e{kN, 1, kBits};
    e.setup_wardens();
    e.ledger->advance_to(kTl.t_bvc);
    AdversaryAgent adv{TokenGuessing{kQ, false}, addr(0x0a, 0)};
    crypto::Rng rng{2024};
    const auto r = run_adversary(adv, *e.ledger, {kBits, kN, std::nullopt, 1}, rng, e.book);

    // n distinct valid values among 2^l, each guess independent and uniform.
    const double p = static_cast<double>(kN) / std::pow(2.0, kBits);
    const double mean = static_cast<double>(kQ) * p;
    const double sigma = std::sqrt(static_cast<double>(kQ) * p * (1.0 - p));
    INFO("successes " << r.successes << " mean " << mean << " sigma " << sigma);
    CHECK(std::abs(static_cast<double>(r.successes) - mean) <= 3.0 * sigma);
    CHECK(r.attempts == kQ);
    CHECK(std::abs(r.expected_successes - mean) < 1e-9);
    CHECK(e.book.size() == 0);  // probes never reach the ledger
    CHECK(e.contract().batch(1).empty());
}

TEST_CASE("token guessing at 256 bits never succeeds") {
    Election e{100, 2};
    e.setup_wardens();
    e.ledger->advance_to(kTl.t_bvc);
    AdversaryAgent probe{TokenGuessing{20'000, false}, addr(0x0a, 1)};
    AdversaryAgent submit{TokenGuessing{200, true}, addr(0x0a, 2)};
    e.ledger->mint(submit.address, kFunds);
    crypto::Rng rng{5};
    CHECK(run_adversary(probe, *e.ledger, {256, 100, std::nullopt, 1}, rng, e.book).successes == 0);
    const auto before = e.ledger->record_count();
    CHECK(run_adversary(submit, *e.ledger, {256, 100, std::nullopt, 1}, rng, e.book).successes == 0);
    CHECK(e.ledger->record_count() == before + 200);
    CHECK(e.book.size() == 0);
}

TEST_CASE("double vote with a spent token never succeeds") {
    Election e{5, 2};
    e.setup_wardens();
    e.cast_all();
    AdversaryAgent adv{DoubleVote{5, 0}, addr(0x0a, 3)};
    e.ledger->mint(adv.address, kFunds);
    const auto r = run_adversary(adv, *e.ledger, {256, 5, e.voters[0].token, 2}, e.rng, e.book);
    CHECK(r.attempts == 5);
    CHECK(r.successes == 0);
    CHECK(e.book.size() == 5);
    AdversaryAgent tokenless{DoubleVote{1, 0}, addr(0x0a, 4)};
    CHECK_THROWS_AS(run_adversary(tokenless, *e.ledger, {}, e.rng, e.book), std::invalid_argument);
}

TEST_CASE("warden behavior names round trip") {
    for (const auto b : {WardenBehavior::kHonest, WardenBehavior::kAbort, WardenBehavior::kLeak}) {
        CHECK(parse_warden_behavior(name(b)) == b);
    }
    CHECK_THROWS_AS(parse_warden_behavior("sleepy"), std::invalid_argument);
}

}  // namespace fasten::actors
