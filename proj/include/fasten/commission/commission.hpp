// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <fasten/contract/timeline.hpp>
#include <fasten/contract/voting_contract.hpp>
#include <fasten/crypto/random.hpp>
#include <fasten/crypto/token.hpp>

namespace fasten::commission {

using contract::CandidateId;

//! Opaque credential of a real-world person (stands in for a biometric ID).
using Credential = std::string;

using EligibilityCheck = std::function<bool(const Credential&)>;

//! Off-chain request refused by the commission.
class CommissionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct CandidateRecord {
    CandidateId id{0};
    Credential identity;
    Timestamp registered_at{0};
    bool withdrawn{false};
};

struct TokenHashDatabase {
    std::vector<TokenDigest> digests;  // issuance order
};

//! The election commission: candidate registry, token issuance, and export
//! of the token hash database.
//!
//! While tokens are being handed out, a voter's token is kept under a salted
//! commitment of their identity so that a repeat request returns the same
//! token. Exporting the hash database wipes those commitments and the salt;
//! afterwards nothing held here links a token to an identity.
class Commission {
  public:
    Commission(const contract::ElectionTimeline& timeline, std::size_t token_bits, EligibilityCheck eligible,
               crypto::Rng rng);

    CandidateId register_candidate(const Credential& identity, Timestamp now);
    void backout(const Credential& identity, Timestamp now);

    //! Same identity always gets the same token within the window.
    Token issue_token(const Credential& identity, Timestamp now);

    TokenHashDatabase export_hash_database(Timestamp now);

    //! Registered, non-withdrawn candidates in registration order.
    [[nodiscard]] std::vector<CandidateId> candidate_list() const;
    [[nodiscard]] const std::vector<CandidateRecord>& candidates() const { return candidates_; }

    [[nodiscard]] std::size_t issued_count() const;
    [[nodiscard]] bool exported() const;

    //! The only linking query the commission can answer; always empty once
    //! the hash database has been exported.
    [[nodiscard]] std::optional<Token> token_for(const Credential& identity) const;

    //! Full dump of commission state, for unlinkability checks.
    [[nodiscard]] std::string state_dump() const;

    [[nodiscard]] std::size_t token_bits() const { return token_bits_; }

  private:
    void require_window(contract::GatedOp op, Timestamp now) const;
    [[nodiscard]] Digest256 commitment(const Credential& identity) const;

    contract::ElectionTimeline timeline_;
    std::size_t token_bits_;
    EligibilityCheck eligible_;
    crypto::Rng rng_;
    Bytes salt_;

    std::vector<CandidateRecord> candidates_;
    std::map<Credential, std::size_t> candidate_index_;

    std::map<Digest256, Token> commitments_;  // purged at export
    std::set<TokenDigest> issued_digests_;
    std::vector<TokenDigest> issued_order_;
    bool exported_{false};

    mutable std::mutex mutex_;
};

}  // namespace fasten::commission
