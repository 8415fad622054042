// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <fasten/contract/voting_contract.hpp>
#include <fasten/crypto/elgamal.hpp>

namespace fasten::harness {

//! Published decryption keys, one slot per key id.
//!
//! File format (text, '\n' line endings):
//!
//!     fasten-keys 1
//!     group <p hex> <g hex>
//!     <key id> <x hex>      one line per key id, ascending from 1;
//!     <key id> -            "-" marks a key that was never submitted
struct DecryptionKeys {
    crypto::GroupParams group;
    std::vector<std::optional<BigInt>> keys;  // keys[i] belongs to key id i + 1

    [[nodiscard]] std::string serialize() const;
    static DecryptionKeys parse(std::string_view text);

    bool operator==(const DecryptionKeys&) const = default;
};

struct AuditResult {
    contract::TallyResult tally;
    std::uint64_t accepted_casts{0};
    std::map<contract::KeyId, std::uint64_t> batch_sizes;
    //! Tokens that appear in more than one accepted CastVote record.
    std::uint64_t reused_tokens{0};
};

//! Independent recount from a ledger dump.
//!
//! Verifies the record hash chain, reads the election parameters from the
//! genesis record, and decrypts every accepted CastVote with the published
//! keys without touching any contract code. Throws ledger::DumpError (with
//! the first bad record index) for a corrupt dump and std::invalid_argument
//! when the key file does not match the election.
AuditResult audit_tally(std::string_view dump, const DecryptionKeys& keys);

}  // namespace fasten::harness
