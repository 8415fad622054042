// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#include <fasten/crypto/keccak.hpp>
#include <fasten/ledger/payload.hpp>
#include <fasten/ledger/record.hpp>

#include <algorithm>

namespace fasten::ledger {

namespace {

    constexpr std::string_view kAccepted = "accepted";
    constexpr std::string_view kRevertedPrefix = "reverted:";

    bool is_lower_hex(std::string_view s) {
        return std::all_of(s.begin(), s.end(), [](char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'); });
    }

    template <std::size_t N>
    FixedBytes<N> parse_fixed(std::string_view field, std::uint64_t index, const char* name) {
        if (field.size() != 2 * N || !is_lower_hex(field)) {
            throw DumpError(index, std::string("malformed ") + name);
        }
        return FixedBytes<N>::from_hex(field);
    }

    Timestamp parse_timestamp(std::string_view field, std::uint64_t index) {
        bool negative = false;
        if (!field.empty() && field.front() == '-') {
            negative = true;
            field.remove_prefix(1);
        }
        try {
            const auto v = static_cast<Timestamp>(parse_u64(field));
            return negative ? -v : v;
        } catch (const std::invalid_argument&) {
            throw DumpError(index, "malformed timestamp");
        }
    }

}  // namespace

Outcome Outcome::reverted(std::string why) {
    // Reason text must stay inside one field of one line.
    std::replace_if(why.begin(), why.end(), [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');
    if (why.empty()) {
        why = "reverted";
    }
    return {false, std::move(why)};
}

std::string Outcome::serialize() const {
    return accepted ? std::string{kAccepted} : std::string{kRevertedPrefix} + reason;
}

Outcome Outcome::parse(std::string_view text) {
    if (text == kAccepted) {
        return ok();
    }
    if (text.starts_with(kRevertedPrefix) && text.size() > kRevertedPrefix.size()) {
        return {false, std::string{text.substr(kRevertedPrefix.size())}};
    }
    throw std::invalid_argument("malformed outcome");
}

std::string LedgerRecord::hashed_text() const {
    std::string out;
    out += std::to_string(index);
    out.push_back('\t');
    out += std::to_string(timestamp);
    out.push_back('\t');
    out += sender.hex();
    out.push_back('\t');
    out += method;
    out.push_back('\t');
    out += payload;
    out.push_back('\t');
    out += std::to_string(gas_charged);
    out.push_back('\t');
    out += outcome.serialize();
    out.push_back('\t');
    out += prev_hash.hex();
    return out;
}

Digest256 LedgerRecord::compute_hash() const { return crypto::keccak256(hashed_text()); }

std::string LedgerRecord::to_line() const { return hashed_text() + '\t' + record_hash.hex(); }

std::string serialize_dump(const std::vector<LedgerRecord>& records) {
    std::string out;
    for (const auto& r : records) {
        out += r.to_line();
        out.push_back('\n');
    }
    return out;
}

std::vector<LedgerRecord> parse_and_verify_dump(std::string_view dump) {
    std::vector<LedgerRecord> records;
    if (dump.empty()) {
        throw DumpError(0, "empty dump");
    }
    if (dump.back() != '\n') {
        // The unterminated line is the last record.
        throw DumpError(static_cast<std::uint64_t>(std::count(dump.begin(), dump.end(), '\n')),
                        "dump must end with a newline");
    }
    dump.remove_suffix(1);
    Digest256 prev{};
    std::uint64_t expected_index = 0;
    for (const auto line : split(dump, '\n')) {
        const std::uint64_t at = expected_index;
        const auto fields = split(line, '\t');
        if (fields.size() != 9) {
            throw DumpError(at, "expected 9 fields, found " + std::to_string(fields.size()));
        }
        LedgerRecord r;
        try {
            r.index = parse_u64(fields[0]);
            r.gas_charged = parse_u64(fields[5]);
            r.outcome = Outcome::parse(fields[6]);
        } catch (const std::invalid_argument& e) {
            throw DumpError(at, e.what());
        }
        r.timestamp = parse_timestamp(fields[1], at);
        r.sender = parse_fixed<Address::kSize>(fields[2], at, "sender");
        r.method = std::string{fields[3]};
        r.payload = std::string{fields[4]};
        r.prev_hash = parse_fixed<Digest256::kSize>(fields[7], at, "prev_hash");
        r.record_hash = parse_fixed<Digest256::kSize>(fields[8], at, "record_hash");

        if (r.index != expected_index) {
            throw DumpError(at, "index out of sequence");
        }
        if (!records.empty() && r.timestamp < records.back().timestamp) {
            throw DumpError(at, "timestamp decreases");
        }
        // Hash the bytes as they appear in the dump, not a re-serialization.
        const std::string_view hashed = line.substr(0, line.size() - fields[8].size() - 1);
        if (crypto::keccak256(hashed) != r.record_hash) {
            throw DumpError(at, "record hash mismatch");
        }
        if (r.prev_hash != prev) {
            throw DumpError(at, "prev_hash does not link to the previous record");
        }
        prev = r.record_hash;
        records.push_back(std::move(r));
        ++expected_index;
    }
    return records;
}

}  // namespace fasten::ledger
