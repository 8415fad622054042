// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#include <fasten/ledger/payload.hpp>

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace fasten::ledger {

namespace {

    bool allowed(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '.' ||
               c == ',' || c == ':' || c == '-';
    }

    void check_text(std::string_view text, const char* what) {
        if (!std::all_of(text.begin(), text.end(), allowed)) {
            throw std::invalid_argument(std::string("payload ") + what + " contains a reserved character: " +
                                        std::string(text));
        }
    }

}  // namespace

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

std::uint64_t parse_u64(std::string_view text) {
    std::uint64_t v = 0;
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw std::invalid_argument("not an unsigned integer: " + std::string(text));
    }
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("unsigned integer out of range: " + std::string(text));
    }
    return v;
}

Payload& Payload::set(std::string key, std::string value) {
    if (key.empty()) {
        throw std::invalid_argument("payload key must not be empty");
    }
    check_text(key, "key");
    check_text(value, "value");
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = std::move(value);
            return *this;
        }
    }
    entries_.emplace_back(std::move(key), std::move(value));
    return *this;
}

Payload& Payload::set_bytes(std::string key, ByteView value) { return set(std::move(key), to_hex(value)); }

std::optional<std::string_view> Payload::find(std::string_view key) const {
    for (const auto& [k, v] : entries_) {
        if (k == key) {
            return v;
        }
    }
    return std::nullopt;
}

std::string_view Payload::get(std::string_view key) const {
    const auto v = find(key);
    if (!v) {
        throw std::invalid_argument("payload is missing field '" + std::string(key) + "'");
    }
    return *v;
}

BigInt Payload::get_hex(std::string_view key) const { return parse_hex_bigint(get(key)); }

std::uint64_t Payload::get_u64(std::string_view key) const { return parse_u64(get(key)); }

Bytes Payload::get_bytes(std::string_view key) const { return from_hex(get(key)); }

Address Payload::get_address(std::string_view key) const { return Address::from_hex(get(key)); }

std::string Payload::serialize() const {
    std::string out;
    for (const auto& [k, v] : entries_) {
        if (!out.empty()) {
            out.push_back(';');
        }
        out += k;
        out.push_back('=');
        out += v;
    }
    return out;
}

Payload Payload::parse(std::string_view text) {
    Payload out;
    if (text.empty()) {
        return out;
    }
    for (const auto item : split(text, ';')) {
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("payload entry without '=': " + std::string(item));
        }
        std::string key{item.substr(0, eq)};
        if (out.find(key)) {
            throw std::invalid_argument("duplicate payload key: " + key);
        }
        out.set(std::move(key), std::string{item.substr(eq + 1)});
    }
    return out;
}

}  // namespace fasten::ledger
