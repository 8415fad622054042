// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#include <set>
#include <thread>

#include <catch2/catch_amalgamated.hpp>

#include <fasten/crypto/keccak.hpp>
#include <fasten/crypto/random.hpp>
#include <fasten/ledger/ledger.hpp>

namespace fasten::ledger {

namespace {

    // Minimal host: DepositSecurity stores the value, WithdrawReward pays it
    // back, CastVote counts and reverts on "fail=1".
    class PiggyBank final : public ContractHost {
      public:
        Execution execute(const CallContext& ctx, std::string_view method, const Payload& args) override {
            if (method == method::kDepositSecurity) {
                held_[ctx.sender] += ctx.value;
                return {};
            }
            if (method == method::kWithdrawReward) {
                Execution e;
                e.payouts.push_back({ctx.sender, held_[ctx.sender]});
                held_[ctx.sender] = 0;
                return e;
            }
            if (method == method::kCastVote) {
                if (args.find("fail")) {
                    throw Revert("scripted failure");
                }
                ++casts_;
                Execution e;
                e.result.set_u64("casts", casts_);
                return e;
            }
            throw Revert("unsupported");
        }

        Payload simulate(const CallContext& ctx, std::string_view method, const Payload& args) const override {
            PiggyBank copy = *this;
            return copy.execute(ctx, method, args).result;
        }

        [[nodiscard]] std::string serialize_state() const override {
            std::string out = "casts=" + std::to_string(casts_) + "\n";
            for (const auto& [a, v] : held_) {
                out += a.hex() + "=" + to_hex(v) + "\n";
            }
            return out;
        }

      private:
        std::uint64_t casts_{0};
        std::map<Address, Amount> held_;
    };

    std::unique_ptr<ContractHost> make_piggy(const Payload&) { return std::make_unique<PiggyBank>(); }

    Address addr(std::uint8_t b) {
        Address a;
        a.bytes.back() = b;
        return a;
    }

    LedgerConfig small_config() {
        LedgerConfig c;
        c.gas_price = 2;
        c.genesis_time = 10;
        c.contract_address = addr(0xcc);
        c.fee_collector = addr(0xfe);
        return c;
    }

    Payload fail_args() {
        Payload p;
        p.set("fail", "1");
        return p;
    }

    std::unique_ptr<Ledger> scripted_ledger() {
        auto l = std::make_unique<Ledger>(small_config(), make_piggy({}), Payload{});
        l->mint(addr(1), 10'000'000);
        l->mint(addr(2), 10'000'000);
        l->submit_transaction(addr(1), 500, method::kDepositSecurity, {});
        l->advance_clock(5);
        l->submit_transaction(addr(2), 0, method::kCastVote, {});
        l->submit_transaction(addr(2), 0, method::kCastVote, fail_args());
        l->transfer(addr(2), addr(3), 77);
        l->advance_clock(1);
        l->submit_transaction(addr(1), 0, method::kWithdrawReward, {});
        return l;
    }

}  // namespace

TEST_CASE("payload serialization") {
    Payload p;
    p.set("b", "x");
    p.set_u64("a", 42);
    p.set_hex("h", BigInt{255});
    CHECK(p.serialize() == "b=x;a=42;h=ff");
    CHECK(Payload::parse(p.serialize()) == p);
    CHECK(Payload::parse("").entries().empty());
    CHECK_THROWS(Payload::parse("a=1;a=2"));
    CHECK_THROWS(Payload::parse("a"));
    CHECK_THROWS(p.set("bad key", "v"));
    CHECK_THROWS(p.set("k", "tab\there"));
}

TEST_CASE("gas tables") {
    const auto d = GasTable::defaults();
    CHECK(d.cost(method::kGetCandidateList) == 26);
    CHECK(d.cost(method::kGetEncryptionKey) == 667);
    CHECK(d.cost(method::kCastVote) == 739);
    CHECK(d.cost(method::kTallyVote) == 300000);
    CHECK(d.cost(method::kDepositSecurity) == 23);
    CHECK(d.cost(method::kSubmitEncryptionKey) == 629);
    CHECK(d.cost(method::kSubmitDecryptionKey) == 600755);
    CHECK(d.cost(method::kWithdrawReward) == 21629);
    const auto o = GasTable::dapp_offloaded();
    CHECK(o.cost(method::kSubmitDecryptionKey) == 755);
    CHECK(o.cost(method::kTallyVote) == 0);
    CHECK_THROWS_AS(d.cost("Nope"), std::invalid_argument);
    auto t = d;
    CHECK_THROWS_AS(t.set("Nope", 1), std::invalid_argument);
    t.set(method::kCastVote, 1);
    CHECK(t.cost(method::kCastVote) == 1);
}

TEST_CASE("genesis record heads the chain") {
    Ledger l{small_config(), make_piggy({}), Payload{}};
    const auto rs = l.records();
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].method == method::kGenesis);
    CHECK(rs[0].prev_hash.is_zero());
    CHECK(rs[0].timestamp == 10);
    CHECK(rs[0].record_hash == rs[0].compute_hash());
}

TEST_CASE("fees, reverts and payouts") {
    Ledger l{small_config(), make_piggy({}), Payload{}};
    l.mint(addr(1), 1'000'000);
    const Amount cast_fee = Amount{739} * 2;

    const auto ok = l.submit_transaction(addr(1), 0, method::kCastVote, {});
    CHECK(ok.accepted());
    CHECK(ok.result.get_u64("casts") == 1);
    CHECK(ok.gas_charged == 739);
    CHECK(l.balance(addr(1)) == 1'000'000 - cast_fee);

    const std::string state = l.contract_state();
    const auto bad = l.submit_transaction(addr(1), 0, method::kCastVote, fail_args());
    CHECK_FALSE(bad.accepted());
    CHECK(bad.outcome.reason == "scripted failure");
    CHECK(bad.gas_charged == 739);
    CHECK(l.contract_state() == state);
    CHECK(l.balance(addr(1)) == 1'000'000 - 2 * cast_fee);
    CHECK(l.records().back().outcome.serialize() == "reverted:scripted failure");

    l.submit_transaction(addr(1), 1000, method::kDepositSecurity, {});
    CHECK(l.balance(addr(0xcc)) == 1000);
    l.submit_transaction(addr(1), 0, method::kWithdrawReward, {});
    CHECK(l.balance(addr(0xcc)) == 0);
    CHECK(l.total_balance() == l.total_minted());
}

TEST_CASE("rejected before execution") {
    Ledger l{small_config(), make_piggy({}), Payload{}};
    l.mint(addr(1), 100);
    const auto count = l.record_count();
    CHECK_THROWS_AS(l.submit_transaction(addr(1), 0, method::kCastVote, {}), TransactionError);  // fee > balance
    CHECK_THROWS_AS(l.submit_transaction(addr(1), 0, "Nope", {}), TransactionError);
    CHECK_THROWS_AS(l.submit_transaction(addr(1), 0, method::kMint, {}), TransactionError);
    CHECK_THROWS(l.transfer(addr(1), addr(2), 101));
    CHECK(l.record_count() == count);
    CHECK(l.balance(addr(1)) == 100);
}

TEST_CASE("clock is monotonic") {
    Ledger l{small_config(), make_piggy({}), Payload{}};
    CHECK(l.now() == 10);
    CHECK(l.advance_clock(5) == 15);
    CHECK_THROWS(l.advance_to(12));
    CHECK(l.advance_to(15) == 15);
    CHECK(l.advance_to(20) == 20);
    CHECK_THROWS(l.advance_clock(-1));
}

TEST_CASE("read-only calls leave no trace") {
    auto l = scripted_ledger();
    const auto count = l->record_count();
    const auto state = l->contract_state();
    const auto bal = l->balance(addr(2));
    CHECK(l->call(addr(2), method::kCastVote, {}).get_u64("casts") == 2);
    CHECK_THROWS_AS(l->call(addr(2), method::kCastVote, fail_args()), Revert);
    CHECK(l->record_count() == count);
    CHECK(l->contract_state() == state);
    CHECK(l->balance(addr(2)) == bal);
}

TEST_CASE("dump round trip and replay") {
    auto l = scripted_ledger();
    const std::string dump = l->dump();
    const auto records = parse_and_verify_dump(dump);
    CHECK(records.size() == l->record_count());
    CHECK(serialize_dump(records) == dump);

    const auto replayed = Ledger::replay(dump, make_piggy);
    CHECK(replayed->dump() == dump);
    CHECK(replayed->contract_state() == l->contract_state());
    CHECK(replayed->balance(addr(3)) == 77);
    CHECK(replayed->total_balance() == replayed->total_minted());
}

TEST_CASE("every single-byte flip is rejected at its record") {
    const std::string dump = scripted_ledger()->dump();
    std::vector<std::size_t> line_of(dump.size());
    std::size_t line = 0;
    for (std::size_t i = 0; i < dump.size(); ++i) {
        line_of[i] = line;
        if (dump[i] == '\n') {
            ++line;
        }
    }
    for (std::size_t i = 0; i < dump.size(); ++i) {
        for (const std::uint8_t mask : {0x01, 0x20, 0x80}) {
            std::string bad = dump;
            bad[i] = static_cast<char>(static_cast<std::uint8_t>(bad[i]) ^ mask);
            INFO("offset " << i << " mask " << int{mask});
            try {
                parse_and_verify_dump(bad);
                FAIL("tampered dump accepted");
            } catch (const DumpError& e) {
                // A broken newline merges two records; the first one reports.
                CHECK(e.index() == line_of[i]);
            }
        }
    }
}

TEST_CASE("a consistently rehashed forgery fails replay") {
    auto records = parse_and_verify_dump(scripted_ledger()->dump());
    // Turn the reverted CastVote into an accepted one and rebuild the chain.
    for (auto& r : records) {
        if (!r.outcome.accepted) {
            r.outcome = Outcome{true, ""};
        }
    }
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (i > 0) {
            records[i].prev_hash = records[i - 1].record_hash;
        }
        records[i].record_hash = records[i].compute_hash();
    }
    const std::string forged = serialize_dump(records);
    CHECK_NOTHROW(parse_and_verify_dump(forged));
    CHECK_THROWS_AS(Ledger::replay(forged, make_piggy), DumpError);
}

TEST_CASE("dump syntax is strict") {
    const std::string dump = scripted_ledger()->dump();
    CHECK_THROWS_AS(parse_and_verify_dump(""), DumpError);
    CHECK_THROWS_AS(parse_and_verify_dump(dump.substr(0, dump.size() - 1)), DumpError);
    // Dropping a record breaks the index sequence.
    const auto first_nl = dump.find('\n');
    const auto second_nl = dump.find('\n', first_nl + 1);
    const std::string gap = dump.substr(0, first_nl + 1) + dump.substr(second_nl + 1);
    CHECK_THROWS_AS(parse_and_verify_dump(gap), DumpError);
}

TEST_CASE("concurrent submitters see one total order") {
    Ledger l{small_config(), make_piggy({}), Payload{}};
    constexpr int kThreads = 8;
    constexpr int kPerThread = 200;
    for (int t = 0; t < kThreads; ++t) {
        l.mint(addr(static_cast<std::uint8_t>(t + 1)), 100'000'000);
    }
    std::vector<std::thread> workers;
    std::vector<std::vector<std::uint64_t>> seen(kThreads);
    for (int t = 0; t < kThreads; ++t) {
        workers.emplace_back([&, t] {
            for (int i = 0; i < kPerThread; ++i) {
                const auto r = l.submit_transaction(addr(static_cast<std::uint8_t>(t + 1)), 0, method::kCastVote,
                                                    i % 5 == 0 ? fail_args() : Payload{});
                seen[t].push_back(r.index);
            }
        });
    }
    for (auto& w : workers) {
        w.join();
    }
    std::set<std::uint64_t> indices;
    for (const auto& s : seen) {
        indices.insert(s.begin(), s.end());
        CHECK(std::is_sorted(s.begin(), s.end()));
    }
    CHECK(indices.size() == kThreads * kPerThread);
    const auto records = parse_and_verify_dump(l.dump());
    CHECK(records.size() == 1 + kThreads + kThreads * kPerThread);
    CHECK(l.call(addr(1), method::kCastVote, {}).get_u64("casts") == kThreads * kPerThread * 4 / 5 + 1);
    CHECK(l.total_balance() == l.total_minted());
    CHECK(Ledger::replay(l.dump(), make_piggy)->contract_state() == l.contract_state());
}

TEST_CASE("conservation over a random workload") {
    Ledger l{small_config(), make_piggy({}), Payload{}};
    crypto::Rng rng{8};
    for (std::uint8_t a = 1; a <= 5; ++a) {
        l.mint(addr(a), 5'000'000);
    }
    for (int i = 0; i < 500; ++i) {
        const auto who = addr(static_cast<std::uint8_t>(1 + rng.uniform_u64(5)));
        switch (rng.uniform_u64(4)) {
            case 0: l.submit_transaction(who, rng.uniform_u64(1000), method::kDepositSecurity, {}); break;
            case 1: l.submit_transaction(who, 0, method::kWithdrawReward, {}); break;
            case 2: l.submit_transaction(who, 0, method::kCastVote, rng.uniform_u64(2) ? fail_args() : Payload{}); break;
            default: l.transfer(who, addr(static_cast<std::uint8_t>(1 + rng.uniform_u64(5))), rng.uniform_u64(100)); break;
        }
        l.advance_clock(static_cast<Timestamp>(rng.uniform_u64(3)));
        REQUIRE(l.total_balance() == l.total_minted());
    }
}

}  // namespace fasten::ledger
