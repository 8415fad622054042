// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <fasten/actors/agents.hpp>
#include <fasten/contract/timeline.hpp>
#include <fasten/crypto/elgamal.hpp>

namespace fasten::harness {

struct WardenSpec {
    std::size_t index{0};  // 0-based warden index; key id is index + 1
    actors::WardenBehavior behavior{actors::WardenBehavior::kHonest};
    std::optional<Timestamp> leak_at;
};

struct AdversarySpec {
    enum class Kind { kTokenGuessing, kDoubleVote };
    Kind kind{Kind::kTokenGuessing};
    std::uint64_t attempts{0};
    bool submit{false};           // token guessing only
    std::size_t voter_index{0};   // double vote only
};

//! Everything that determines one election run. Same config and seed give
//! byte-identical outputs.
struct ScenarioConfig {
    std::size_t voters{100};
    std::size_t wardens{5};
    std::size_t candidates{3};
    std::size_t candidate_backouts{0};
    std::size_t spoiled_votes{0};
    contract::ElectionTimeline timeline = contract::ElectionTimeline::standard();
    crypto::GroupParams group = crypto::GroupParams::default_160();
    std::size_t token_bits{256};
    std::map<std::string, Gas> gas_overrides;
    Amount gas_price{40'000'000'000};
    Amount security_amount{1'000'000'000'000'000'000};
    Amount reward{100'000'000'000'000'000};
    //! Deposit sent by each warden beyond securityAmt.
    Amount deposit_excess{10'000'000'000'000'000};
    std::size_t key_checks{1};
    std::vector<WardenSpec> warden_behaviors;
    std::vector<AdversarySpec> adversaries;
    std::uint64_t seed{1};

    //! Throws std::invalid_argument naming the first violated constraint.
    void validate() const;

    //! Strict JSON reader: unknown keys are errors.
    static ScenarioConfig from_json_text(std::string_view text);
    static ScenarioConfig load(const std::string& path);
    [[nodiscard]] std::string to_json_text() const;

    [[nodiscard]] actors::WardenBehavior behavior_of(std::size_t warden_index) const;
};

}  // namespace fasten::harness
