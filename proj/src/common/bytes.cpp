// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#include <fasten/common/bigint.hpp>
#include <fasten/common/bytes.hpp>

#include <stdexcept>

namespace fasten {

namespace {

    constexpr char kHexDigits[] = "0123456789abcdef";

    int hex_value(char c) {
        if (c >= '0' && c <= '9') {
            return c - '0';
        }
        if (c >= 'a' && c <= 'f') {
            return c - 'a' + 10;
        }
        if (c >= 'A' && c <= 'F') {
            return c - 'A' + 10;
        }
        return -1;
    }

    std::string_view strip_prefix(std::string_view hex) {
        if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) {
            hex.remove_prefix(2);
        }
        return hex;
    }

}  // namespace

std::string to_hex(ByteView bytes) {
    std::string out;
    out.reserve(bytes.size() * 2);
    for (const auto b : bytes) {
        out.push_back(kHexDigits[b >> 4]);
        out.push_back(kHexDigits[b & 0x0f]);
    }
    return out;
}

Bytes from_hex(std::string_view hex) {
    hex = strip_prefix(hex);
    if (hex.size() % 2 != 0) {
        throw std::invalid_argument("hex string has odd length");
    }
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int hi = hex_value(hex[2 * i]);
        const int lo = hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) {
            throw std::invalid_argument("invalid hex character");
        }
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

std::string to_hex(const BigInt& value) {
    if (value < 0) {
        throw std::invalid_argument("negative big integer has no hex encoding");
    }
    if (value == 0) {
        return "0";
    }
    std::string out;
    BigInt v = value;
    while (v > 0) {
        out.push_back(kHexDigits[static_cast<unsigned>(v & 0x0f)]);
        v >>= 4;
    }
    return {out.rbegin(), out.rend()};
}

std::string to_decimal(const BigInt& value) { return value.str(); }

BigInt parse_hex_bigint(std::string_view hex) {
    if (hex.empty()) {
        throw std::invalid_argument("empty hex integer");
    }
    BigInt out = 0;
    for (const char c : hex) {
        const int d = hex_value(c);
        if (d < 0) {
            throw std::invalid_argument("invalid hex digit in integer");
        }
        out <<= 4;
        out += d;
    }
    return out;
}

BigInt parse_bigint(std::string_view text) {
    if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        return parse_hex_bigint(text.substr(2));
    }
    if (text.empty()) {
        throw std::invalid_argument("empty integer");
    }
    BigInt out = 0;
    for (const char c : text) {
        if (c < '0' || c > '9') {
            throw std::invalid_argument("invalid decimal digit in integer: " + std::string(text));
        }
        out *= 10;
        out += c - '0';
    }
    return out;
}

}  // namespace fasten
