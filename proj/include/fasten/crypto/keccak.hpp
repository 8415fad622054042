// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <fasten/common/bytes.hpp>

namespace fasten::crypto {

//! Keccak-256 with the original 0x01 domain padding (Ethereum's sha3).
Digest256 keccak256(ByteView data);

//! FIPS 202 SHA3-256; same sponge as keccak256 with 0x06 padding.
Digest256 sha3_256(ByteView data);

inline Digest256 keccak256(std::string_view s) { return keccak256(as_bytes(s)); }

}  // namespace fasten::crypto
