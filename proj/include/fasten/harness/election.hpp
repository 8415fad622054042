// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <fasten/actors/agents.hpp>
#include <fasten/harness/auditor.hpp>
#include <fasten/harness/scenario.hpp>

namespace fasten::harness {

using contract::CandidateId;
using contract::KeyId;

struct WardenReport {
    std::size_t index{0};
    KeyId key_id{0};
    Address address;
    actors::WardenBehavior behavior{actors::WardenBehavior::kHonest};
    Gas gas_spent{0};
    Amount fees;           // gas_spent * gas_price
    Amount balance_delta;  // final balance minus balance right after funding
    bool all_accepted{true};
};

//! What leaked keys reveal before casting closes.
struct ExposureReport {
    std::set<KeyId> leaked_keys;  // published strictly before t_evc
    //! Accepted casts in the leaked batches (the union of leaked batches).
    std::set<std::uint64_t> leaked_batch_records;
    //! Casts the adversary actually decrypted to their true plaintext with a
    //! leaked key before t_evc.
    std::set<std::uint64_t> decrypted_records;
    //! Casts outside the leaked batches that some leaked key nonetheless
    //! decrypted to their true plaintext. Only meaningful for large groups;
    //! in a toy group chance hits are expected.
    std::uint64_t cross_key_hits{0};
    double expected_size{0.0};  // k * n / |W|
};

struct ElectionReport {
    ScenarioConfig config;
    std::vector<CandidateId> candidates;

    contract::TallyResult contract_tally;
    contract::TallyResult contract_tally_repeat;
    contract::TallyResult ground_truth;
    AuditResult audit;
    std::set<KeyId> missing_keys;
    std::uint64_t decrypt_operations{0};

    std::uint64_t accepted_casts{0};  // ground-truth book entries
    std::uint64_t voters_cast{0};     // honest voters whose cast was accepted
    std::uint64_t voters_rejected{0};
    bool token_reissue_stable{true};  // a repeat GetToken returned the same token

    std::vector<actors::AttackReport> attacks;
    std::vector<WardenReport> wardens;
    ExposureReport exposure;

    Amount total_minted;
    Amount total_balance;

    std::string dump;
    DecryptionKeys keys;
    std::string contract_state;
    std::string commission_state;

    // Private to the harness; used only by the unlinkability scan.
    std::vector<commission::Credential> voter_identities;
    std::vector<Address> cast_addresses;
    std::vector<Token> tokens;
    std::vector<Address> warden_addresses;
    std::vector<Address> adversary_addresses;
    Address observer;

    [[nodiscard]] std::string summary_json() const;
    [[nodiscard]] std::string summary_table() const;
};

//! Runs one full election from candidature to tally. Throws
//! std::invalid_argument for an invalid config before anything executes.
ElectionReport run_election(const ScenarioConfig& config);

//! Writes ledger.dump, keys.txt, report.json, report.txt and
//! scenario.json into dir (created if missing).
void write_election_outputs(const ElectionReport& report, const std::string& dir);

}  // namespace fasten::harness
