// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <fasten/commission/commission.hpp>
#include <fasten/contract/voting_contract.hpp>
#include <fasten/crypto/elgamal.hpp>
#include <fasten/crypto/random.hpp>
#include <fasten/ledger/ledger.hpp>

namespace fasten::actors {

using commission::Credential;
using contract::CandidateId;
using contract::KeyId;

// ---------------------------------------------------------------------------
// Ground truth

//! One accepted cast, as seen by the test instrumentation.
struct CastEntry {
    std::uint64_t record_index{0};
    Address cast_address;
    KeyId key_id{0};
    crypto::VoteCiphertext ciphertext;
    BigInt plaintext;
};

//! Sealed book of what every accepted ciphertext really encrypts. Only the
//! test harness reads it; it is not part of the protocol.
class GroundTruthBook {
  public:
    void record(CastEntry entry);

    [[nodiscard]] std::vector<CastEntry> entries() const;
    [[nodiscard]] std::optional<CastEntry> find(std::uint64_t record_index) const;
    [[nodiscard]] std::size_t size() const;

    //! The tally an honest count must produce given which key ids never had
    //! their decryption key published.
    [[nodiscard]] contract::TallyResult expected_tally(const std::vector<CandidateId>& candidates,
                                                        const std::set<KeyId>& missing_keys) const;

  private:
    std::vector<CastEntry> entries_;
    mutable std::mutex mutex_;
};

// ---------------------------------------------------------------------------
// Voters

struct VoterAgent {
    Credential identity;
    CandidateId preference{0};
    //! When set, the voter encrypts this value instead of its preference
    //! (a spoiled ballot).
    std::optional<BigInt> plaintext_override;
    std::optional<Token> token;
    //! Fresh address used only for this voter's casting transactions.
    Address cast_address;
    //! Filled by read_candidate_list.
    std::vector<CandidateId> candidate_list;

    [[nodiscard]] BigInt plaintext() const { return plaintext_override ? *plaintext_override : BigInt{preference}; }
};

struct CastOutcome {
    bool accepted{false};
    std::string reason;
    KeyId key_id{0};
    std::uint64_t record_index{0};
    Gas gas_spent{0};
};

//! GetCandidateList from the voter's casting address.
CastOutcome read_candidate_list(VoterAgent& agent, ledger::Ledger& ledger);

//! GetEncryptionKey, off-chain encryption, then CastVote. Accepted casts are
//! written to the book.
CastOutcome cast_ballot(VoterAgent& agent, ledger::Ledger& ledger, crypto::Rng& rng, GroundTruthBook& book);

struct VoterSchedule {
    Timestamp list_at{0};  // inside the GetCandidateList window
    Timestamp cast_at{0};  // inside the casting window
};

//! The full voter walk-through: read the candidate list, fetch a key,
//! encrypt, cast. Advances the ledger clock to each scheduled time.
CastOutcome run_voter(VoterAgent& agent, ledger::Ledger& ledger, const VoterSchedule& schedule, crypto::Rng& rng,
                      GroundTruthBook& book);

// ---------------------------------------------------------------------------
// Wardens

enum class WardenBehavior { kHonest, kAbort, kLeak };

std::string_view name(WardenBehavior b);
WardenBehavior parse_warden_behavior(std::string_view text);

struct WardenAgent {
    Address address;
    KeyId key_id{0};
    crypto::ElGamalKeyPair keys;
    WardenBehavior behavior{WardenBehavior::kHonest};
    //! For kLeak: first time at which the key is handed to the adversary.
    Timestamp leak_at{0};
    //! Value sent with DepositSecurity; must exceed securityAmt.
    Amount deposit{0};
    bool leaked{false};
};

struct LeakedKey {
    KeyId key_id{0};
    crypto::SecretKey key;
    Timestamp at{0};
};

//! Everything dishonest wardens have handed to the adversary.
class AdversaryLog {
  public:
    void publish(LeakedKey key);
    [[nodiscard]] std::vector<LeakedKey> leaked_keys() const;
    //! Keys that were available strictly before t.
    [[nodiscard]] std::vector<LeakedKey> leaked_before(Timestamp t) const;

  private:
    std::vector<LeakedKey> keys_;
    mutable std::mutex mutex_;
};

enum class WardenPhase {
    kSetup,       // DepositSecurity + SubmitEncryptionKey, before t_bvc
    kLeakCheck,   // leakers publish once their leak time has come
    kKeyRelease,  // SubmitDecryptionKey in (t_evc, t_bvt)
    kWithdraw,    // WithdrawReward after t_bvt
};

struct WardenOutcome {
    std::vector<ledger::Receipt> receipts;
    Gas gas_spent{0};
    bool all_accepted{true};
};

//! Runs the warden's duties for one phase. Aborting wardens stop after
//! submitting their encryption key; leakers also behave honestly on-chain.
WardenOutcome run_warden(WardenAgent& agent, ledger::Ledger& ledger, WardenPhase phase, AdversaryLog& log);

// ---------------------------------------------------------------------------
// Adversaries

//! Random l-bit guesses submitted as tokens. In probe mode each guess is
//! evaluated as a read-only call against current state, so the guessed
//! population stays fixed; in submit mode guesses are real transactions.
struct TokenGuessing {
    std::uint64_t attempts{0};
    bool submit{false};
};

//! A voter who already cast tries to cast again with the same token.
struct DoubleVote {
    std::uint64_t attempts{1};
    std::size_t voter_index{0};
};

using AttackStrategy = std::variant<TokenGuessing, DoubleVote>;

struct AdversaryAgent {
    AttackStrategy strategy;
    Address address;
};

struct AttackReport {
    std::string strategy;
    std::uint64_t attempts{0};
    std::uint64_t successes{0};
    //! Binomial model for guessing; zero for double voting.
    double success_probability{0.0};
    double expected_successes{0.0};
    double sigma{0.0};
};

struct AttackContext {
    std::size_t token_bits{256};
    //! Unspent tokens when the attack starts (the guessed population).
    std::uint64_t issued_tokens{0};
    //! For DoubleVote: the spent token being replayed.
    std::optional<Token> own_token;
    CandidateId vote_for{1};
};

AttackReport run_adversary(AdversaryAgent& agent, ledger::Ledger& ledger, const AttackContext& ctx,
                           crypto::Rng& rng, GroundTruthBook& book);

}  // namespace fasten::actors
