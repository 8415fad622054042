// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include <fasten/contract/timeline.hpp>
#include <fasten/contract/voting_contract.hpp>
#include <fasten/harness/scenario.hpp>
#include <fasten/ledger/ledger.hpp>

namespace fasten::test {

//! Timeline starting well above zero so that every "start - 1" is positive.
contract::ElectionTimeline sweep_timeline();

//! Tiny-group scenario with the standard timeline.
harness::ScenarioConfig tiny_scenario(std::size_t voters, std::size_t wardens, std::size_t candidates,
                                      std::uint64_t seed);

//! Hand-written gating table: is op open at t? Kept separate from
//! contract::window_for so the sweep checks one against the other.
bool expected_open(contract::GatedOp op, Timestamp t, const contract::ElectionTimeline& tl);

struct GatingProbe {
    contract::GatedOp op;
    Timestamp at{0};
    bool expected_open{false};
    bool accepted{false};
    //! For a rejected call: state and balances other than the fee unchanged.
    bool no_side_effects{true};
    std::string reason;

    [[nodiscard]] bool ok() const { return accepted == expected_open && (accepted || no_side_effects); }
};

//! One probe of op at time t against freshly prepared state.
GatingProbe probe_gated(contract::GatedOp op, Timestamp t, const contract::ElectionTimeline& tl);

//! Submits every gated operation at start - 1, start, end - 1 and end of
//! its window (finite bounds only), each against freshly prepared state.
std::vector<GatingProbe> gating_sweep(const contract::ElectionTimeline& tl);

}  // namespace fasten::test
