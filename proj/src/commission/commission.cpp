// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#include <fasten/commission/commission.hpp>

#include <fasten/crypto/keccak.hpp>

namespace fasten::commission {

using contract::GatedOp;

Commission::Commission(const contract::ElectionTimeline& timeline, std::size_t token_bits,
                       EligibilityCheck eligible, crypto::Rng rng)
    : timeline_{timeline}, token_bits_{token_bits}, eligible_{std::move(eligible)}, rng_{std::move(rng)} {
    timeline_.validate();
    if (token_bits_ == 0) {
        throw std::invalid_argument("token length must be positive");
    }
    if (!eligible_) {
        throw std::invalid_argument("an eligibility check is required");
    }
    salt_ = rng_.bytes(32);
}

void Commission::require_window(GatedOp op, Timestamp now) const {
    if (!contract::window_for(op, timeline_).contains(now)) {
        throw CommissionError(std::string(contract::name(op)) + ": outside its time window");
    }
}

Digest256 Commission::commitment(const Credential& identity) const {
    Bytes material = salt_;
    material.insert(material.end(), identity.begin(), identity.end());
    return crypto::keccak256(ByteView{material});
}

CandidateId Commission::register_candidate(const Credential& identity, Timestamp now) {
    std::lock_guard lock{mutex_};
    require_window(GatedOp::kApplyForCandidature, now);
    if (!eligible_(identity)) {
        throw CommissionError("candidate failed identity verification");
    }
    if (candidate_index_.contains(identity)) {
        throw CommissionError("identity already applied for candidature");
    }
    const auto id = static_cast<CandidateId>(candidates_.size() + 1);
    candidate_index_.emplace(identity, candidates_.size());
    candidates_.push_back({id, identity, now, false});
    return id;
}

void Commission::backout(const Credential& identity, Timestamp now) {
    std::lock_guard lock{mutex_};
    require_window(GatedOp::kBackout, now);
    const auto it = candidate_index_.find(identity);
    if (it == candidate_index_.end()) {
        throw CommissionError("identity is not a registered candidate");
    }
    auto& record = candidates_[it->second];
    if (record.withdrawn) {
        throw CommissionError("candidate already withdrew");
    }
    record.withdrawn = true;
}

Token Commission::issue_token(const Credential& identity, Timestamp now) {
    std::lock_guard lock{mutex_};
    require_window(GatedOp::kGetToken, now);
    if (!eligible_(identity)) {
        throw CommissionError("voter failed identity verification");
    }
    const Digest256 key = commitment(identity);
    if (const auto it = commitments_.find(key); it != commitments_.end()) {
        return it->second;
    }
    if (token_bits_ < 64 && issued_digests_.size() >= (std::uint64_t{1} << token_bits_)) {
        throw CommissionError("token space exhausted");
    }
    Token token;
    TokenDigest digest;
    do {
        token.value = rng_.bits(token_bits_);
        digest = crypto::hash_token(token);
    } while (issued_digests_.contains(digest));
    issued_digests_.insert(digest);
    issued_order_.push_back(digest);
    commitments_.emplace(key, token);
    return token;
}

TokenHashDatabase Commission::export_hash_database(Timestamp now) {
    std::lock_guard lock{mutex_};
    require_window(GatedOp::kExportHashDatabase, now);
    commitments_.clear();
    std::fill(salt_.begin(), salt_.end(), 0);
    salt_.clear();
    exported_ = true;
    return TokenHashDatabase{issued_order_};
}

std::vector<CandidateId> Commission::candidate_list() const {
    std::lock_guard lock{mutex_};
    std::vector<CandidateId> out;
    for (const auto& c : candidates_) {
        if (!c.withdrawn) {
            out.push_back(c.id);
        }
    }
    return out;
}

std::size_t Commission::issued_count() const {
    std::lock_guard lock{mutex_};
    return issued_order_.size();
}

bool Commission::exported() const {
    std::lock_guard lock{mutex_};
    return exported_;
}

std::optional<Token> Commission::token_for(const Credential& identity) const {
    std::lock_guard lock{mutex_};
    if (exported_) {
        return std::nullopt;
    }
    const auto it = commitments_.find(commitment(identity));
    if (it == commitments_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::string Commission::state_dump() const {
    std::lock_guard lock{mutex_};
    std::string out;
    out += "exported=" + std::string(exported_ ? "1" : "0") + "\n";
    out += "salt=" + to_hex(salt_) + "\n";
    for (const auto& c : candidates_) {
        out += "candidate=" + std::to_string(c.id) + ":" + c.identity + (c.withdrawn ? ":withdrawn" : "") + "\n";
    }
    for (const auto& [key, token] : commitments_) {
        out += "commitment=" + key.hex() + ":" + to_hex(token.value) + "\n";
    }
    for (const auto& d : issued_order_) {
        out += "digest=" + d.digest.hex() + "\n";
    }
    return out;
}

}  // namespace fasten::commission
