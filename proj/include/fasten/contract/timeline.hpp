// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <string_view>

#include <fasten/common/bytes.hpp>

namespace fasten::contract {

//! Phase boundaries of one election, in ledger seconds.
struct ElectionTimeline {
    Timestamp t_bcr{0};  // candidature registration opens
    Timestamp t_ecr{0};  // candidature registration closes
    Timestamp t_btd{0};  // token distribution opens
    Timestamp t_etd{0};  // token distribution closes
    Timestamp t_bvc{0};  // vote casting opens
    Timestamp t_evc{0};  // vote casting closes
    Timestamp t_bvt{0};  // tally opens

    //! t_bcr < t_ecr <= t_btd < t_etd <= t_bvc < t_evc < t_bvt, and the key
    //! release window (t_evc, t_bvt) holds at least one whole second.
    void validate() const;

    static ElectionTimeline standard();

    bool operator==(const ElectionTimeline&) const = default;
};

//! Every time-gated operation, on-chain and off-chain.
enum class GatedOp {
    kApplyForCandidature,
    kBackout,
    kGetToken,
    kExportHashDatabase,
    kGetCandidateList,
    kGetEncryptionKey,
    kCastVote,
    kGetDecryptionKeys,
    kTallyVote,
    kDepositSecurity,
    kSubmitEncryptionKey,
    kSubmitDecryptionKey,
    kWithdrawReward,
};

inline constexpr std::array kAllGatedOps{
    GatedOp::kApplyForCandidature, GatedOp::kBackout,           GatedOp::kGetToken,
    GatedOp::kExportHashDatabase,  GatedOp::kGetCandidateList,  GatedOp::kGetEncryptionKey,
    GatedOp::kCastVote,            GatedOp::kGetDecryptionKeys, GatedOp::kTallyVote,
    GatedOp::kDepositSecurity,     GatedOp::kSubmitEncryptionKey, GatedOp::kSubmitDecryptionKey,
    GatedOp::kWithdrawReward,
};

std::string_view name(GatedOp op);

//! Half-open integer window [begin, end). A missing bound is unbounded.
struct Window {
    std::optional<Timestamp> begin;
    std::optional<Timestamp> end;

    [[nodiscard]] bool contains(Timestamp t) const {
        return (!begin || t >= *begin) && (!end || t < *end);
    }
};

//! The single gating table.
//!
//!   operation             window
//!   ApplyForCandidature   [t_bcr, t_ecr)
//!   Backout               [t_bcr, t_ecr)
//!   GetToken              [t_btd, t_etd)
//!   ExportHashDatabase    [t_etd, inf)
//!   GetCandidateList      [t_ecr, t_bvc)
//!   GetEncryptionKey      [t_bvc, t_evc)
//!   CastVote              [t_bvc, t_evc)
//!   DepositSecurity       (-inf, t_bvc)
//!   SubmitEncryptionKey   (-inf, t_bvc)
//!   SubmitDecryptionKey   (t_evc, t_bvt)  = [t_evc + 1, t_bvt)
//!   GetDecryptionKeys     (t_bvt, inf)    = [t_bvt + 1, inf)
//!   TallyVote             (t_bvt, inf)
//!   WithdrawReward        (t_bvt, inf)
Window window_for(GatedOp op, const ElectionTimeline& timeline);

}  // namespace fasten::contract
