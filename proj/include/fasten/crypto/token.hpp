// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <fasten/common/bytes.hpp>
#include <fasten/crypto/keccak.hpp>

namespace fasten {

//! Anonymous single-use voting credential.
struct Token {
    Bytes value;

    auto operator<=>(const Token&) const = default;
};

//! 256-bit digest of a token; the only form in which tokens reach genesis.
struct TokenDigest {
    Digest256 digest;

    static constexpr std::size_t kBits = 256;

    auto operator<=>(const TokenDigest&) const = default;
};

namespace crypto {

    inline TokenDigest hash_token(const Token& t) { return {keccak256(ByteView{t.value})}; }

}  // namespace crypto

}  // namespace fasten
