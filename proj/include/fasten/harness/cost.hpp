// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include <fasten/common/bigint.hpp>
#include <fasten/ledger/gas_table.hpp>

namespace fasten::harness {

using Rational = boost::multiprecision::cpp_rational;

struct CostInputs {
    ledger::GasTable table = ledger::GasTable::defaults();
    Amount gas_price{40'000'000'000};  // wei per gas
    double eth_usd{627.0};
    std::uint64_t voters{1000};
    std::uint64_t wardens{1};
    Gas block_gas_limit{8'000'000};
    std::uint64_t block_interval_s{15};
    //! Bound figures round voter-side and per-vote gas up to this multiple.
    Gas granularity{100};
};

//! One set of per-vote figures derived from a per-vote gas amount.
struct PerVote {
    Rational gas;
    Rational wei;
    double eth{0.0};
    double usd{0.0};
    std::uint64_t votes_per_block{0};  // floor(block gas limit / gas)
    std::uint64_t votes_per_minute{0};
    std::uint64_t votes_per_hour{0};
};

struct CostReport {
    CostInputs inputs;
    std::map<std::string, Gas> per_method;
    Gas voter_side{0};   // GetCandidateList + GetEncryptionKey + CastVote
    Gas warden_side{0};  // DepositSecurity + SubmitEncryptionKey + SubmitDecryptionKey + WithdrawReward
    //! warden_side * wardens / voters
    Rational warden_share;
    //! voter_side + warden_share, no rounding.
    PerVote exact;
    //! Upper bound: voter_side rounded up to the granularity, plus the
    //! warden share, rounded up again.
    Gas voter_side_bound{0};
    PerVote bound;

    [[nodiscard]] std::string to_json_text() const;
    [[nodiscard]] std::string to_table() const;
};

//! Throws std::invalid_argument for zero or negative inputs.
CostReport cost_report(const CostInputs& inputs);

//! Reads a JSON object of method -> gas overrides and applies it to base.
//! Unknown and ledger-native methods are errors.
ledger::GasTable load_gas_table(const std::string& path, ledger::GasTable base);

//! Smallest multiple of step that is >= value.
Gas round_up(const Rational& value, Gas step);

}  // namespace fasten::harness
