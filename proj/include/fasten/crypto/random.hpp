// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include <fasten/common/bigint.hpp>
#include <fasten/common/bytes.hpp>

namespace fasten::crypto {

//! Seeded randomness source. Every draw is a pure function of the seed and
//! the draw sequence, independent of platform and standard library, so runs
//! are reproducible bit for bit.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_{seed}, engine_{seed} {}

    //! Independent child stream keyed by label; does not advance this stream.
    [[nodiscard]] Rng fork(std::string_view label) const;

    std::uint64_t next_u64() { return engine_(); }

    //! Uniform in [0, bound). bound must be positive.
    std::uint64_t uniform_u64(std::uint64_t bound);
    BigInt uniform_below(const BigInt& bound);

    //! Uniform in [lo, hi], inclusive.
    BigInt uniform_in(const BigInt& lo, const BigInt& hi);

    Bytes bytes(std::size_t count);

    //! ceil(bits / 8) bytes with the unused high bits of the first byte zero.
    Bytes bits(std::size_t bits);

    Address address();

    [[nodiscard]] std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace fasten::crypto
