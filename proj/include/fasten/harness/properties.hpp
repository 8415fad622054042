// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include <fasten/harness/election.hpp>

namespace fasten::harness {

struct PropertyResult {
    std::string name;
    bool passed{false};
    std::string detail;
};

struct PropertySuite {
    std::vector<PropertyResult> results;

    [[nodiscard]] bool all_passed() const;
    [[nodiscard]] const PropertyResult& get(std::string_view name) const;
    [[nodiscard]] std::string to_text() const;
};

//! Security properties of a finished election:
//!   VA   voter anonymity: no identity bytes on the ledger, no address or
//!        token linking two casts, guessing successes within the binomial
//!        bound
//!   VC   vote concealment: what is decryptable before casting closes is
//!        exactly the union of the leaked batches
//!   VI   vote immutability: the dump verifies and replays to the same
//!        contract state
//!   DVI  double-vote inhibition: at most one accepted cast per token
//! and the bookkeeping checks tally, conservation, phase, warden_economics.
PropertySuite property_suite(const ElectionReport& report);

//! Individual checks, exposed for targeted tests.
PropertyResult check_anonymity(const ElectionReport& report);
PropertyResult check_concealment(const ElectionReport& report);
PropertyResult check_immutability(const ElectionReport& report);
PropertyResult check_double_vote(const ElectionReport& report);
PropertyResult check_tally(const ElectionReport& report);
PropertyResult check_conservation(const ElectionReport& report);
PropertyResult check_phases(const ElectionReport& report);
PropertyResult check_warden_economics(const ElectionReport& report);

//! Guessing bound: successes <= expected + 3 sigma.
bool within_guessing_bound(const actors::AttackReport& attack);

}  // namespace fasten::harness
