// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#include <fasten/crypto/elgamal.hpp>

#include <vector>

#include <boost/multiprecision/miller_rabin.hpp>
#include <boost/random/mersenne_twister.hpp>

namespace fasten::crypto {

namespace {

    constexpr std::uint64_t kTrialDivisionBound = 1u << 20;

    // Distinct prime factors of n. Trial division covers the small part; the
    // remaining cofactor must itself be prime or the factorization is rejected.
    std::vector<BigInt> distinct_prime_factors(BigInt n) {
        std::vector<BigInt> factors;
        for (std::uint64_t d = 2; d < kTrialDivisionBound && BigInt{d} * d <= n; ++d) {
            if (n % d == 0) {
                factors.emplace_back(d);
                while (n % d == 0) {
                    n /= d;
                }
            }
        }
        if (n > 1) {
            if (!is_probable_prime(n)) {
                throw CryptoError("cannot factor p-1 to verify the generator (cofactor is composite)");
            }
            factors.push_back(n);
        }
        return factors;
    }

    void check_message(const GroupParams& group, const BigInt& m) {
        if (m < 1 || m > group.p - 1) {
            throw CryptoError("message out of range [1, p-1]");
        }
    }

}  // namespace

GroupParams GroupParams::tiny() { return {BigInt{23}, BigInt{5}}; }

GroupParams GroupParams::default_160() {
    return {parse_hex_bigint("dbeff12842edc5b10ba69473fab4dd0397b7dbfb"), BigInt{2}};
}

std::size_t GroupParams::bits() const { return p > 0 ? boost::multiprecision::msb(p) + 1 : 0; }

void GroupParams::validate() const {
    if (p < 5 || !is_probable_prime(p)) {
        throw CryptoError("group modulus p must be a prime >= 5");
    }
    if (g < 2 || g > p - 1) {
        throw CryptoError("generator g must lie in [2, p-1]");
    }
    const BigInt order = p - 1;
    for (const BigInt& f : distinct_prime_factors(order)) {
        if (mod_pow(g, order / f, p) == 1) {
            throw CryptoError("g does not generate Z_p^*");
        }
    }
}

bool is_probable_prime(const BigInt& n) {
    if (n < 2) {
        return false;
    }
    boost::random::mt19937 gen{0x5eed};
    return boost::multiprecision::miller_rabin_test(n, 32, gen);
}

BigInt mod_pow(const BigInt& base, const BigInt& exp, const BigInt& mod) {
    return boost::multiprecision::powm(base, exp, mod);
}

BigInt mod_inverse(const BigInt& a, const BigInt& p) {
    BigInt old_r = a % p;
    BigInt r = p;
    BigInt old_s = 1;
    BigInt s = 0;
    while (r != 0) {
        const BigInt q = old_r / r;
        BigInt tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) {
        throw CryptoError("element has no inverse");
    }
    BigInt inv = old_s % p;
    if (inv < 0) {
        inv += p;
    }
    return inv;
}

ElGamalKeyPair keypair_from_secret(const GroupParams& params, const BigInt& x) {
    if (x < 1 || x > params.p - 2) {
        throw CryptoError("secret exponent out of range [1, p-2]");
    }
    return {PublicKey{params, mod_pow(params.g, x, params.p)}, SecretKey{params, x}};
}

ElGamalKeyPair keygen(const GroupParams& params, Rng& rng) {
    params.validate();
    return keypair_from_secret(params, rng.uniform_in(1, params.p - 2));
}

VoteCiphertext encrypt_with_ephemeral(const PublicKey& pk, const BigInt& m, const BigInt& r) {
    const auto& group = pk.group;
    check_message(group, m);
    if (r < 1 || r > group.p - 2) {
        throw CryptoError("ephemeral exponent out of range [1, p-2]");
    }
    if (pk.h < 1 || pk.h > group.p - 1) {
        throw CryptoError("public key element out of range");
    }
    return {mod_pow(group.g, r, group.p), (m * mod_pow(pk.h, r, group.p)) % group.p};
}

VoteCiphertext encrypt(const PublicKey& pk, const BigInt& m, Rng& rng) {
    check_message(pk.group, m);
    return encrypt_with_ephemeral(pk, m, rng.uniform_in(1, pk.group.p - 2));
}

BigInt decrypt(const SecretKey& sk, const VoteCiphertext& ct) {
    const BigInt& p = sk.group.p;
    if (ct.beta == 0 || ct.gamma == 0) {
        throw CryptoError("ciphertext component is zero");
    }
    if (ct.beta < 0 || ct.beta > p - 1 || ct.gamma < 0 || ct.gamma > p - 1) {
        throw CryptoError("ciphertext component out of range [1, p-1]");
    }
    const BigInt s = mod_pow(ct.beta, sk.x, p);
    return (mod_inverse(s, p) * ct.gamma) % p;
}

}  // namespace fasten::crypto
