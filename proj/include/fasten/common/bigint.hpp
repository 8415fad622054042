// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fasten {

using BigInt = boost::multiprecision::cpp_int;

//! Currency in wei. Always non-negative where the ledger holds it.
using Amount = BigInt;

//! Lowercase hex without prefix; zero encodes as "0".
std::string to_hex(const BigInt& value);

std::string to_decimal(const BigInt& value);

//! Parses "0x..." as hex and anything else as decimal. Rejects signs,
//! whitespace and empty input with std::invalid_argument.
BigInt parse_bigint(std::string_view text);

//! Parses bare hex (no prefix), as written in ledger dumps.
BigInt parse_hex_bigint(std::string_view hex);

}  // namespace fasten
