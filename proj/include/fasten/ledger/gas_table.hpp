// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <string_view>

#include <fasten/common/bytes.hpp>

namespace fasten::ledger {

namespace method {
    inline constexpr std::string_view kGetCandidateList = "GetCandidateList";
    inline constexpr std::string_view kGetEncryptionKey = "GetEncryptionKey";
    inline constexpr std::string_view kCastVote = "CastVote";
    inline constexpr std::string_view kGetDecryptionKeys = "GetDecryptionKeys";
    inline constexpr std::string_view kTallyVote = "TallyVote";
    inline constexpr std::string_view kDepositSecurity = "DepositSecurity";
    inline constexpr std::string_view kSubmitEncryptionKey = "SubmitEncryptionKey";
    inline constexpr std::string_view kSubmitDecryptionKey = "SubmitDecryptionKey";
    inline constexpr std::string_view kWithdrawReward = "WithdrawReward";

    // Ledger-native records; never dispatched to the contract.
    inline constexpr std::string_view kGenesis = "Genesis";
    inline constexpr std::string_view kMint = "Mint";
    inline constexpr std::string_view kTransfer = "Transfer";
}  // namespace method

//! Per-method gas cost. Defaults are the measured contract costs; the two
//! getters without a published figure are priced like GetCandidateList.
class GasTable {
  public:
    static GasTable defaults();

    //! Decryption moved to the client: SubmitDecryptionKey keeps only its
    //! non-cryptographic share and TallyVote costs nothing on-chain.
    static GasTable dapp_offloaded();

    [[nodiscard]] Gas cost(std::string_view method) const;
    [[nodiscard]] bool contains(std::string_view method) const;

    //! Overrides one entry; the method must already exist in the table.
    void set(std::string_view method, Gas gas);

    [[nodiscard]] const std::map<std::string, Gas, std::less<>>& entries() const { return costs_; }

    bool operator==(const GasTable&) const = default;

  private:
    std::map<std::string, Gas, std::less<>> costs_;
};

[[nodiscard]] bool is_native_method(std::string_view method);

}  // namespace fasten::ledger
