// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#include <fasten/contract/timeline.hpp>

#include <stdexcept>

namespace fasten::contract {

void ElectionTimeline::validate() const {
    const bool ordered = t_bcr < t_ecr && t_ecr <= t_btd && t_btd < t_etd && t_etd <= t_bvc && t_bvc < t_evc &&
                         t_evc < t_bvt;
    if (!ordered) {
        throw std::invalid_argument(
            "timeline must satisfy t_bcr < t_ecr <= t_btd < t_etd <= t_bvc < t_evc < t_bvt");
    }
    if (t_bvt - t_evc < 2) {
        throw std::invalid_argument("key release window (t_evc, t_bvt) is empty");
    }
}

ElectionTimeline ElectionTimeline::standard() {
    return {.t_bcr = 0,
            .t_ecr = 1'000,
            .t_btd = 1'000,
            .t_etd = 2'000,
            .t_bvc = 3'000,
            .t_evc = 13'000,
            .t_bvt = 14'000};
}

std::string_view name(GatedOp op) {
    switch (op) {
        case GatedOp::kApplyForCandidature: return "ApplyForCandidature";
        case GatedOp::kBackout: return "Backout";
        case GatedOp::kGetToken: return "GetToken";
        case GatedOp::kExportHashDatabase: return "ExportHashDatabase";
        case GatedOp::kGetCandidateList: return "GetCandidateList";
        case GatedOp::kGetEncryptionKey: return "GetEncryptionKey";
        case GatedOp::kCastVote: return "CastVote";
        case GatedOp::kGetDecryptionKeys: return "GetDecryptionKeys";
        case GatedOp::kTallyVote: return "TallyVote";
        case GatedOp::kDepositSecurity: return "DepositSecurity";
        case GatedOp::kSubmitEncryptionKey: return "SubmitEncryptionKey";
        case GatedOp::kSubmitDecryptionKey: return "SubmitDecryptionKey";
        case GatedOp::kWithdrawReward: return "WithdrawReward";
    }
    return "?";
}

Window window_for(GatedOp op, const ElectionTimeline& t) {
    switch (op) {
        case GatedOp::kApplyForCandidature:
        case GatedOp::kBackout: return {t.t_bcr, t.t_ecr};
        case GatedOp::kGetToken: return {t.t_btd, t.t_etd};
        case GatedOp::kExportHashDatabase: return {t.t_etd, std::nullopt};
        case GatedOp::kGetCandidateList: return {t.t_ecr, t.t_bvc};
        case GatedOp::kGetEncryptionKey:
        case GatedOp::kCastVote: return {t.t_bvc, t.t_evc};
        case GatedOp::kDepositSecurity:
        case GatedOp::kSubmitEncryptionKey: return {std::nullopt, t.t_bvc};
        case GatedOp::kSubmitDecryptionKey: return {t.t_evc + 1, t.t_bvt};
        case GatedOp::kGetDecryptionKeys:
        case GatedOp::kTallyVote:
        case GatedOp::kWithdrawReward: return {t.t_bvt + 1, std::nullopt};
    }
    throw std::logic_error("unhandled gated operation");
}

}  // namespace fasten::contract
