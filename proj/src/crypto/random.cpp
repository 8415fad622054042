// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#include <fasten/crypto/keccak.hpp>
#include <fasten/crypto/random.hpp>

#include <stdexcept>
#include <string>

namespace fasten::crypto {

Rng Rng::fork(std::string_view label) const {
    std::string material = std::to_string(seed_);
    material.push_back('/');
    material.append(label);
    const Digest256 d = keccak256(material);
    std::uint64_t child = 0;
    for (int i = 0; i < 8; ++i) {
        child = (child << 8) | d.bytes[i];
    }
    return Rng{child};
}

std::uint64_t Rng::uniform_u64(std::uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("uniform_u64 bound must be positive");
    }
    // Rejection sampling keeps the draw exactly uniform.
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    std::uint64_t v = 0;
    do {
        v = engine_();
    } while (v >= limit);
    return v % bound;
}

BigInt Rng::uniform_below(const BigInt& bound) {
    if (bound <= 0) {
        throw std::invalid_argument("uniform_below bound must be positive");
    }
    const std::size_t nbits = boost::multiprecision::msb(bound) + 1;
    const std::size_t words = (nbits + 63) / 64;
    const std::size_t excess = words * 64 - nbits;
    while (true) {
        BigInt candidate = 0;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t word = engine_();
            if (w == 0 && excess > 0) {
                word >>= excess;
            }
            candidate <<= 64;
            candidate += word;
        }
        if (candidate < bound) {
            return candidate;
        }
    }
}

BigInt Rng::uniform_in(const BigInt& lo, const BigInt& hi) {
    if (hi < lo) {
        throw std::invalid_argument("uniform_in: empty range");
    }
    return lo + uniform_below(hi - lo + 1);
}

Bytes Rng::bytes(std::size_t count) {
    Bytes out(count);
    std::size_t i = 0;
    while (i < count) {
        std::uint64_t word = engine_();
        for (int b = 0; b < 8 && i < count; ++b, ++i) {
            out[i] = static_cast<std::uint8_t>(word & 0xff);
            word >>= 8;
        }
    }
    return out;
}

Bytes Rng::bits(std::size_t bits) {
    if (bits == 0) {
        throw std::invalid_argument("bit length must be positive");
    }
    Bytes out = bytes((bits + 7) / 8);
    if (const std::size_t spare = out.size() * 8 - bits; spare > 0) {
        out[0] &= static_cast<std::uint8_t>(0xff >> spare);
    }
    return out;
}

Address Rng::address() {
    Address a;
    const Bytes raw = bytes(Address::kSize);
    std::copy(raw.begin(), raw.end(), a.bytes.begin());
    return a;
}

}  // namespace fasten::crypto
