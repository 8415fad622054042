// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <fasten/common/bytes.hpp>

namespace fasten::ledger {

struct Outcome {
    bool accepted{true};
    std::string reason;  // empty when accepted

    static Outcome ok() { return {}; }
    static Outcome reverted(std::string why);

    [[nodiscard]] std::string serialize() const;
    static Outcome parse(std::string_view text);

    bool operator==(const Outcome&) const = default;
};

//! One line of the append-only log.
//!
//! Dump format: the nine fields below in declaration order, separated by a
//! single TAB, one record per line. Integers (index, timestamp, gas) are
//! decimal; addresses and digests are lowercase hex. record_hash is
//! Keccak-256 over the exact bytes of the first eight fields joined by TAB.
struct LedgerRecord {
    std::uint64_t index{0};
    Timestamp timestamp{0};
    Address sender;
    std::string method;
    std::string payload;
    Gas gas_charged{0};
    Outcome outcome;
    Digest256 prev_hash;
    Digest256 record_hash;

    //! The hashed prefix: every field except record_hash.
    [[nodiscard]] std::string hashed_text() const;
    [[nodiscard]] Digest256 compute_hash() const;
    [[nodiscard]] std::string to_line() const;

    bool operator==(const LedgerRecord&) const = default;
};

//! A dump that fails to parse or to verify; index is the first bad record.
class DumpError : public std::runtime_error {
  public:
    DumpError(std::uint64_t index, const std::string& what)
        : std::runtime_error("record " + std::to_string(index) + ": " + what), index_{index} {}

    [[nodiscard]] std::uint64_t index() const { return index_; }

  private:
    std::uint64_t index_;
};

//! Parses and verifies a full dump: field syntax, index sequence,
//! non-decreasing timestamps, each record hash, and the prev_hash links.
//! Throws DumpError at the first violation.
std::vector<LedgerRecord> parse_and_verify_dump(std::string_view dump);

std::string serialize_dump(const std::vector<LedgerRecord>& records);

}  // namespace fasten::ledger
