// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <fasten/common/bigint.hpp>
#include <fasten/contract/timeline.hpp>
#include <fasten/crypto/elgamal.hpp>
#include <fasten/crypto/token.hpp>
#include <fasten/ledger/ledger.hpp>

namespace fasten::contract {

using CandidateId = std::uint32_t;
using KeyId = std::uint32_t;

//! Everything fixed when the contract is deployed.
struct ContractGenesis {
    ElectionTimeline timeline;
    crypto::GroupParams group;
    std::vector<CandidateId> candidates;
    KeyId num_keys{0};
    Amount security_amount{0};
    Amount reward{0};
    //! Plaintexts used to verify a submitted decryption key. The first is
    //! the contract's sampleText; any further entries are extra checks.
    std::vector<BigInt> sample_texts;
    std::map<Address, KeyId> wardens;
    std::vector<TokenDigest> hash_database;

    void validate() const;

    [[nodiscard]] ledger::Payload to_payload() const;
    static ContractGenesis from_payload(const ledger::Payload& payload);
};

struct TallyResult {
    std::map<CandidateId, std::uint64_t> counts;
    std::uint64_t spoiled{0};
    std::uint64_t undecryptable{0};

    [[nodiscard]] std::uint64_t total() const;

    [[nodiscard]] ledger::Payload to_payload() const;
    static TallyResult from_payload(const ledger::Payload& payload);

    bool operator==(const TallyResult&) const = default;
};

//! The voting contract: a deterministic state machine over the ledger.
//!
//! Every public method checks all of its preconditions before touching any
//! state and throws ledger::Revert on failure, so a reverted call leaves the
//! state exactly as it was.
class VotingContract final : public ledger::ContractHost {
  public:
    explicit VotingContract(const ContractGenesis& genesis);

    // General public methods.
    [[nodiscard]] std::vector<CandidateId> get_candidate_list(Timestamp now) const;
    std::pair<KeyId, crypto::PublicKey> get_encryption_key(Timestamp now);
    void cast_vote(const Token& token, KeyId id, const crypto::VoteCiphertext& ev, Timestamp now);
    [[nodiscard]] std::vector<std::optional<BigInt>> get_decryption_keys(Timestamp now) const;
    TallyResult tally_vote(Timestamp now);

    // Warden methods.
    void deposit_security(const Address& sender, const Amount& value, Timestamp now);
    void submit_encryption_key(const Address& sender, const BigInt& ek, Timestamp now);
    void submit_decryption_key(const Address& sender, const BigInt& dk, Timestamp now);
    //! Returns the amount to pay out to sender (possibly zero).
    Amount withdraw_reward(const Address& sender, Timestamp now, const Amount& contract_balance);

    //! The validation half of cast_vote; empty when the vote would be accepted.
    [[nodiscard]] std::optional<std::string> check_cast_vote(const Token& token, KeyId id,
                                                             const crypto::VoteCiphertext& ev,
                                                             Timestamp now) const;

    ledger::Execution execute(const ledger::CallContext& ctx, std::string_view method,
                              const ledger::Payload& args) override;
    ledger::Payload simulate(const ledger::CallContext& ctx, std::string_view method,
                             const ledger::Payload& args) const override;
    [[nodiscard]] std::string serialize_state() const override;

    // Read-only inspection for tests and the harness.
    [[nodiscard]] const ContractGenesis& genesis() const { return genesis_; }
    [[nodiscard]] KeyId id_counter() const { return id_counter_; }
    [[nodiscard]] const std::vector<crypto::VoteCiphertext>& batch(KeyId id) const;
    [[nodiscard]] Amount refund_amount(const Address& warden) const;
    [[nodiscard]] bool token_unspent(const TokenDigest& digest) const;
    [[nodiscard]] bool tally_done() const { return tally_done_; }
    [[nodiscard]] std::optional<BigInt> encryption_key(KeyId id) const;
    //! Decryptions performed so far; not part of contract state.
    [[nodiscard]] std::uint64_t decrypt_operations() const { return decrypt_ops_; }

  private:
    void require_window(GatedOp op, Timestamp now) const;
    KeyId require_warden(const Address& sender) const;
    [[nodiscard]] TallyResult compute_tally() const;

    ContractGenesis genesis_;
    KeyId id_counter_{0};
    std::vector<std::optional<BigInt>> en_keys_;  // 1-indexed, slot 0 unused
    std::vector<std::optional<BigInt>> de_keys_;  // 1-indexed, slot 0 unused
    std::map<Digest256, bool> hash_database_;
    std::vector<std::vector<crypto::VoteCiphertext>> vote_batch_;  // 1-indexed
    std::map<Address, Amount> refund_amt_;
    bool tally_done_{false};
    TallyResult cand_tally_;
    mutable std::uint64_t decrypt_ops_{0};
};

//! Ephemeral exponent the contract uses when re-encrypting a sample text to
//! check a decryption key. Coprime to p-1, so exactly one key in [1, p-2]
//! passes the round trip.
BigInt key_check_ephemeral(const crypto::GroupParams& group, KeyId id, std::size_t sample_index);

//! Factory for Ledger::replay.
std::unique_ptr<ledger::ContractHost> make_voting_contract(const ledger::Payload& genesis);

}  // namespace fasten::contract
