// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <fasten/common/bigint.hpp>
#include <fasten/common/bytes.hpp>

namespace fasten::ledger {

//! Ordered key/value argument list; serializes as "k=v;k=v".
//!
//! Keys and values are restricted to [A-Za-z0-9_.,:-] so a serialized
//! payload never contains the dump's field or record separators.
class Payload {
  public:
    Payload() = default;

    Payload& set(std::string key, std::string value);
    Payload& set_hex(std::string key, const BigInt& value) { return set(std::move(key), to_hex(value)); }
    Payload& set_u64(std::string key, std::uint64_t value) { return set(std::move(key), std::to_string(value)); }
    Payload& set_bytes(std::string key, ByteView value);

    [[nodiscard]] std::optional<std::string_view> find(std::string_view key) const;

    //! Required-field accessors; throw std::invalid_argument when missing or malformed.
    [[nodiscard]] std::string_view get(std::string_view key) const;
    [[nodiscard]] BigInt get_hex(std::string_view key) const;
    [[nodiscard]] std::uint64_t get_u64(std::string_view key) const;
    [[nodiscard]] Bytes get_bytes(std::string_view key) const;
    [[nodiscard]] Address get_address(std::string_view key) const;

    [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
    [[nodiscard]] bool empty() const { return entries_.empty(); }

    [[nodiscard]] std::string serialize() const;
    static Payload parse(std::string_view text);

    bool operator==(const Payload&) const = default;

  private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

std::vector<std::string_view> split(std::string_view text, char sep);

std::uint64_t parse_u64(std::string_view text);

}  // namespace fasten::ledger
