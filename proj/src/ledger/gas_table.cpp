// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#include <fasten/ledger/gas_table.hpp>

#include <stdexcept>

namespace fasten::ledger {

GasTable GasTable::defaults() {
    GasTable t;
    t.costs_ = {
        {std::string{method::kGetCandidateList}, 26},
        {std::string{method::kGetEncryptionKey}, 667},
        {std::string{method::kCastVote}, 739},
        {std::string{method::kGetDecryptionKeys}, 26},
        {std::string{method::kTallyVote}, 300000},
        {std::string{method::kDepositSecurity}, 23},
        {std::string{method::kSubmitEncryptionKey}, 629},
        {std::string{method::kSubmitDecryptionKey}, 600755},
        {std::string{method::kWithdrawReward}, 21629},
        {std::string{method::kGenesis}, 0},
        {std::string{method::kMint}, 0},
        {std::string{method::kTransfer}, 0},
    };
    return t;
}

GasTable GasTable::dapp_offloaded() {
    GasTable t = defaults();
    // 623036 total warden-side gas minus the 600000 spent on the key check.
    t.set(method::kSubmitDecryptionKey, 755);
    t.set(method::kTallyVote, 0);
    return t;
}

Gas GasTable::cost(std::string_view method) const {
    const auto it = costs_.find(method);
    if (it == costs_.end()) {
        throw std::invalid_argument("unknown method: " + std::string(method));
    }
    return it->second;
}

bool GasTable::contains(std::string_view method) const { return costs_.contains(method); }

void GasTable::set(std::string_view method, Gas gas) {
    const auto it = costs_.find(method);
    if (it == costs_.end()) {
        throw std::invalid_argument("unknown method in gas table override: " + std::string(method));
    }
    it->second = gas;
}

bool is_native_method(std::string_view method) {
    return method == method::kGenesis || method == method::kMint || method == method::kTransfer;
}

}  // namespace fasten::ledger
