// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

#include <fasten/common/bigint.hpp>
#include <fasten/common/bytes.hpp>
#include <fasten/crypto/random.hpp>

namespace fasten::crypto {

class CryptoError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

//! Multiplicative group modulo a prime p with generator g.
struct GroupParams {
    BigInt p;
    BigInt g;

    //! p = 23, g = 5. Small enough for exhaustive checks.
    static GroupParams tiny();

    //! 160-bit safe prime p = 2q + 1 with primitive root g = 2.
    static GroupParams default_160();

    //! Throws CryptoError unless p is prime and g generates Z_p^*.
    void validate() const;

    [[nodiscard]] std::size_t bits() const;

    bool operator==(const GroupParams&) const = default;
};

struct PublicKey {
    GroupParams group;
    BigInt h;

    bool operator==(const PublicKey&) const = default;
};

struct SecretKey {
    GroupParams group;
    BigInt x;

    bool operator==(const SecretKey&) const = default;
};

struct ElGamalKeyPair {
    PublicKey pub;
    SecretKey secret;
};

struct VoteCiphertext {
    BigInt beta;
    BigInt gamma;

    bool operator==(const VoteCiphertext&) const = default;
};

//! Uniform secret x in [1, p-2], h = g^x mod p.
ElGamalKeyPair keygen(const GroupParams& params, Rng& rng);

//! Deterministic variant for fixtures; x must lie in [1, p-2].
ElGamalKeyPair keypair_from_secret(const GroupParams& params, const BigInt& x);

//! Fresh ephemeral r uniform in [1, p-2]. Requires 1 <= m <= p-1.
VoteCiphertext encrypt(const PublicKey& pk, const BigInt& m, Rng& rng);

//! beta = g^r, gamma = m * h^r (mod p) for a caller-chosen r in [1, p-2].
VoteCiphertext encrypt_with_ephemeral(const PublicKey& pk, const BigInt& m, const BigInt& r);

//! m = s^{-1} * gamma with s = beta^x (mod p).
BigInt decrypt(const SecretKey& sk, const VoteCiphertext& ct);

//! Inverse of a modulo the prime p via the extended Euclidean algorithm.
BigInt mod_inverse(const BigInt& a, const BigInt& p);

BigInt mod_pow(const BigInt& base, const BigInt& exp, const BigInt& mod);

//! Miller-Rabin with a fixed witness schedule, so results are deterministic.
bool is_probable_prime(const BigInt& n);

}  // namespace fasten::crypto
