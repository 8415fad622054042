// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fasten {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

//! Logical ledger time in seconds.
using Timestamp = std::int64_t;

//! Gas units.
using Gas = std::uint64_t;

std::string to_hex(ByteView bytes);

//! Decodes lowercase or uppercase hex, with or without a 0x prefix.
//! Throws std::invalid_argument on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

inline ByteView as_bytes(std::string_view s) {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

template <std::size_t N>
struct FixedBytes {
    std::array<std::uint8_t, N> bytes{};

    static constexpr std::size_t kSize = N;

    static FixedBytes from_hex(std::string_view hex);

    [[nodiscard]] std::string hex() const { return to_hex(bytes); }
    [[nodiscard]] ByteView view() const { return bytes; }
    [[nodiscard]] bool is_zero() const {
        for (auto b : bytes) {
            if (b != 0) {
                return false;
            }
        }
        return true;
    }

    auto operator<=>(const FixedBytes&) const = default;
};

template <std::size_t N>
FixedBytes<N> FixedBytes<N>::from_hex(std::string_view hex) {
    const Bytes raw = fasten::from_hex(hex);
    if (raw.size() != N) {
        throw std::invalid_argument("expected " + std::to_string(N) + " bytes, got " + std::to_string(raw.size()));
    }
    FixedBytes out;
    std::copy(raw.begin(), raw.end(), out.bytes.begin());
    return out;
}

//! 256-bit hash output.
using Digest256 = FixedBytes<32>;

//! Opaque 160-bit account address.
using Address = FixedBytes<20>;

}  // namespace fasten
