// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#include <fasten/harness/auditor.hpp>

#include <set>
#include <stdexcept>

#include <fasten/ledger/payload.hpp>
#include <fasten/ledger/record.hpp>

namespace fasten::harness {

using ledger::Payload;

namespace {

    constexpr std::string_view kMagic = "fasten-keys 1";

    // Fermat inverse route: s^-1 = s^(p-2) mod p. Deliberately not the
    // extended-Euclid path the crypto module uses.
    BigInt recover_plaintext(const crypto::GroupParams& group, const BigInt& x, const BigInt& beta,
                             const BigInt& gamma) {
        const BigInt s = boost::multiprecision::powm(beta, x, group.p);
        const BigInt s_inv = boost::multiprecision::powm(s, group.p - 2, group.p);
        return (gamma * s_inv) % group.p;
    }

}  // namespace

std::string DecryptionKeys::serialize() const {
    std::string out{kMagic};
    out += "\ngroup " + to_hex(group.p) + " " + to_hex(group.g) + "\n";
    for (std::size_t i = 0; i < keys.size(); ++i) {
        out += std::to_string(i + 1) + " " + (keys[i] ? to_hex(*keys[i]) : "-") + "\n";
    }
    return out;
}

DecryptionKeys DecryptionKeys::parse(std::string_view text) {
    auto lines = ledger::split(text, '\n');
    if (!lines.empty() && lines.back().empty()) {
        lines.pop_back();
    }
    if (lines.size() < 2 || lines[0] != kMagic) {
        throw std::invalid_argument("not a decryption key file");
    }
    DecryptionKeys out;
    const auto group = ledger::split(lines[1], ' ');
    if (group.size() != 3 || group[0] != "group") {
        throw std::invalid_argument("malformed group line in key file");
    }
    out.group = {parse_hex_bigint(group[1]), parse_hex_bigint(group[2])};
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto fields = ledger::split(lines[i], ' ');
        if (fields.size() != 2 || ledger::parse_u64(fields[0]) != i - 1) {
            throw std::invalid_argument("malformed key line " + std::to_string(i + 1));
        }
        if (fields[1] == "-") {
            out.keys.emplace_back(std::nullopt);
        } else {
            out.keys.emplace_back(parse_hex_bigint(fields[1]));
        }
    }
    return out;
}

AuditResult audit_tally(std::string_view dump, const DecryptionKeys& keys) {
    const auto records = ledger::parse_and_verify_dump(dump);
    if (records.front().method != ledger::method::kGenesis) {
        throw ledger::DumpError(0, "first record is not a genesis record");
    }
    contract::ContractGenesis genesis;
    try {
        genesis = contract::ContractGenesis::from_payload(Payload::parse(records.front().payload));
    } catch (const std::exception& e) {
        throw ledger::DumpError(0, std::string("unreadable genesis: ") + e.what());
    }
    if (keys.group != genesis.group) {
        throw std::invalid_argument("key file group does not match the election");
    }
    if (keys.keys.size() != genesis.num_keys) {
        throw std::invalid_argument("key file has the wrong number of keys");
    }

    const std::set<contract::CandidateId> valid(genesis.candidates.begin(), genesis.candidates.end());
    AuditResult out;
    for (const auto c : genesis.candidates) {
        out.tally.counts[c] = 0;
    }
    std::set<std::string> seen_tokens;
    for (const auto& r : records) {
        if (r.method != ledger::method::kCastVote || !r.outcome.accepted) {
            continue;
        }
        Payload args;
        contract::KeyId id = 0;
        BigInt beta;
        BigInt gamma;
        try {
            args = Payload::parse(r.payload);
            id = static_cast<contract::KeyId>(args.get_u64("id"));
            beta = args.get_hex("beta");
            gamma = args.get_hex("gamma");
            if (!seen_tokens.insert(std::string{args.get("token")}).second) {
                ++out.reused_tokens;
            }
        } catch (const std::exception& e) {
            throw ledger::DumpError(r.index, std::string("unreadable CastVote: ") + e.what());
        }
        if (id < 1 || id > genesis.num_keys) {
            throw ledger::DumpError(r.index, "accepted CastVote with an out-of-range key id");
        }
        ++out.accepted_casts;
        ++out.batch_sizes[id];
        const auto& key = keys.keys[id - 1];
        if (!key) {
            ++out.tally.undecryptable;
            continue;
        }
        const BigInt m = recover_plaintext(genesis.group, *key, beta, gamma);
        if (m <= BigInt{UINT32_MAX} && valid.contains(static_cast<contract::CandidateId>(m))) {
            ++out.tally.counts[static_cast<contract::CandidateId>(m)];
        } else {
            ++out.tally.spoiled;
        }
    }
    return out;
}

}  // namespace fasten::harness
