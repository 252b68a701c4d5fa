#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cryptkit/arith.hpp"
#include "cryptkit/bignat.hpp"
#include "cryptkit/errors.hpp"
#include "cryptkit/primes.hpp"
#include "cryptkit/random.hpp"

namespace cryptkit {

// Textbook RSA: deterministic, unpadded. Fine for studying the mathematics,
// NOT semantically secure; nothing here is safe for real traffic.

struct PublicKey {
    BigNat n;  // modulus
    BigNat e;  // public exponent

    friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct PrivateKey {
    BigNat n;
    BigNat d;      // private exponent
    BigNat p;      // prime factor
    BigNat q;      // prime factor
    BigNat d_p;    // d mod p-1
    BigNat d_q;    // d mod q-1
    BigNat q_inv;  // q^-1 mod p

    friend bool operator==(const PrivateKey&, const PrivateKey&) = default;
};

struct FactorPair {
    BigNat p;
    BigNat q;
    BigNat phi;  // (p-1)*(q-1)

    friend bool operator==(const FactorPair&, const FactorPair&) = default;
};

struct KeyPair {
    PublicKey pub;
    PrivateKey priv;
};

inline constexpr std::uint64_t kDefaultPublicExponent = 65537;

// Fills in the CRT residues from (n, d, p, q). p != q required so that
// q is invertible mod p.
inline PrivateKey make_private_key(const BigNat& p, const BigNat& q, const BigNat& d) {
    if (p == q) throw EqualPrimes("private key requires distinct primes");
    PrivateKey key;
    key.n = p * q;
    key.d = d;
    key.p = p;
    key.q = q;
    key.d_p = d % (p - BigNat(1));
    key.d_q = d % (q - BigNat(1));
    key.q_inv = mod_inverse(q, p);
    return key;
}

namespace detail {

// Smallest odd e >= first that is coprime to phi, stepping by 2.
inline BigNat next_coprime_exponent(BigNat e, const BigNat& phi) {
    while (!is_coprime(e, phi)) e += BigNat(2);
    return e;
}

// Public-exponent selection: the preferred value when it fits below phi,
// walking upward over odd values until coprime; at tiny key sizes where the
// preferred value is already >= phi, restart from 3 instead.
inline BigNat choose_public_exponent(const BigNat& preferred, const BigNat& phi) {
    if (preferred < phi) return next_coprime_exponent(preferred, phi);
    return next_coprime_exponent(BigNat(3), phi);
}

}  // namespace detail

// Deterministic tail of key generation with the primes supplied. Validates
// its inputs: both values must pass the primality test, p != q, e coprime to
// (p-1)(q-1) and 1 < e < p*q.
inline KeyPair keypair_from_primes(const BigNat& p, const BigNat& q, const BigNat& e) {
    if (p == q) throw EqualPrimes("keypair_from_primes: p == q");
    // Fixed-seed bases keep this function fully deterministic; the bases still
    // depend on the tested value, which is all Miller-Rabin needs for
    // non-adversarial input validation.
    SeededRng check_rng(0x636b707633313737ULL);
    if (!is_probable_prime(p, check_rng)) throw NotPrime("keypair_from_primes: p = " + p.to_decimal());
    if (!is_probable_prime(q, check_rng)) throw NotPrime("keypair_from_primes: q = " + q.to_decimal());

    const BigNat n = p * q;
    if (e <= BigNat(1) || e >= n) throw std::invalid_argument("keypair_from_primes: need 1 < e < p*q");
    const BigNat phi = (p - BigNat(1)) * (q - BigNat(1));
    if (!is_coprime(e, phi)) {
        throw NonCoprime("keypair_from_primes: e = " + e.to_decimal() + " shares a factor with phi");
    }

    KeyPair kp;
    kp.priv = make_private_key(p, q, mod_inverse(e, phi));
    kp.pub = PublicKey{n, e};
    return kp;
}

// Full key generation: two fresh random primes sized so the modulus has
// exactly `bits` bits, then the deterministic tail. preferred_e must be odd
// and >= 3; it is used as-is when coprime to phi, otherwise bumped to the
// next larger odd coprime value (or restarted from 3 at tiny sizes).
inline KeyPair generate_keypair(std::size_t bits, RandomSource& rng,
                                const BigNat& preferred_e = BigNat(kDefaultPublicExponent)) {
    if (bits < 16) throw std::invalid_argument("generate_keypair: bits must be >= 16");
    if (preferred_e < BigNat(3) || preferred_e.is_even())
        throw std::invalid_argument("generate_keypair: preferred_e must be odd and >= 3");

    const std::size_t p_bits = bits - bits / 2;
    const std::size_t q_bits = bits / 2;
    const BigNat p = gen_prime(p_bits, rng);
    BigNat q = gen_prime(q_bits, rng);
    while (q == p) q = gen_prime(q_bits, rng);

    const BigNat phi = (p - BigNat(1)) * (q - BigNat(1));
    const BigNat e = detail::choose_public_exponent(preferred_e, phi);

    KeyPair kp;
    kp.priv = make_private_key(p, q, mod_inverse(e, phi));
    kp.pub = PublicKey{kp.priv.n, e};
    return kp;
}

// d found by scanning x = 1, 2, ... until (x*phi + 1) is divisible by e:
// the search form of the key congruence. Always lands on the same least
// positive d that mod_inverse(e, phi) yields. The scan keeps a running
// residue of (x*phi + 1) mod e, so each step is one addition.
inline BigNat derive_d_alternate(const FactorPair& fp, const BigNat& e) {
    if (!is_coprime(e, fp.phi)) {
        throw NonCoprime("derive_d_alternate: e = " + e.to_decimal() + " shares a factor with phi");
    }
    const BigNat phi_mod_e = fp.phi % e;
    BigNat x(1);
    BigNat residue = (phi_mod_e + BigNat(1)) % e;
    while (!residue.is_zero()) {
        x += BigNat(1);
        residue += phi_mod_e;
        if (residue >= e) residue -= e;
    }
    return (x * fp.phi + BigNat(1)) / e;
}

inline BigNat encrypt_block(const BigNat& m, const PublicKey& key) {
    if (m >= key.n) throw MessageTooLarge("encrypt_block: m >= n");
    return mod_pow(m, key.e, key.n);
}

inline BigNat decrypt_block(const BigNat& c, const PrivateKey& key, bool use_crt = true) {
    if (c >= key.n) throw MessageTooLarge("decrypt_block: c >= n");
    if (!use_crt) return mod_pow(c, key.d, key.n);

    // Chinese-remainder recombination: exponentiate in the two prime fields,
    // then lift. Garner's form: m = m_q + q * (q_inv * (m_p - m_q) mod p).
    // A zero residue means (p-1) | d; the effective exponent is then p-1
    // (c^d == c^(p-1) mod p for every c, including c == 0, since d >= 1).
    const BigNat e_p = key.d_p.is_zero() ? key.p - BigNat(1) : key.d_p;
    const BigNat e_q = key.d_q.is_zero() ? key.q - BigNat(1) : key.d_q;
    const BigNat m_p = mod_pow(c, e_p, key.p);
    const BigNat m_q = mod_pow(c, e_q, key.q);
    const BigNat m_q_red = m_q % key.p;
    const BigNat diff = m_p >= m_q_red ? m_p - m_q_red : m_p + key.p - m_q_red;
    const BigNat h = (diff * key.q_inv) % key.p;
    return m_q + h * key.q;
}

inline BigNat sign_block(const BigNat& m, const PrivateKey& key) {
    if (m >= key.n) throw MessageTooLarge("sign_block: m >= n");
    return decrypt_block(m, key, /*use_crt=*/true);
}

inline bool verify_block(const BigNat& m, const BigNat& sig, const PublicKey& key) {
    if (m >= key.n) throw MessageTooLarge("verify_block: m >= n");
    if (sig >= key.n) throw MessageTooLarge("verify_block: sig >= n");
    return mod_pow(sig, key.e, key.n) == m;
}

// Block size in bytes for modulus n: the widest whole-byte chunk guaranteed
// below n.
inline std::size_t block_byte_size(const BigNat& n) {
    if (n < BigNat(257)) throw std::invalid_argument("block_byte_size: modulus must be >= 257");
    return (n.bit_length() - 1) / 8;
}

// Splits bytes into block-sized chunks, each read as a big-endian integer.
// The final chunk may be short; its value is the big-endian reading of the
// remaining bytes.
inline std::vector<BigNat> encode_message(std::span<const std::uint8_t> data, const BigNat& n) {
    const std::size_t k = block_byte_size(n);
    std::vector<BigNat> blocks;
    blocks.reserve((data.size() + k - 1) / k);
    for (std::size_t off = 0; off < data.size(); off += k) {
        const std::size_t len = std::min(k, data.size() - off);
        blocks.push_back(BigNat::from_bytes_be(data.subspan(off, len)));
    }
    return blocks;
}

// Inverse of encode_message. original_len pins the byte width of the final
// block, so leading zero bytes survive the round trip exactly.
inline std::vector<std::uint8_t> decode_message(std::span<const BigNat> blocks, const BigNat& n,
                                                std::size_t original_len) {
    const std::size_t k = block_byte_size(n);
    const std::size_t expected = original_len == 0 ? 0 : (original_len + k - 1) / k;
    if (blocks.size() != expected) {
        throw LengthMismatch("decode_message: " + std::to_string(blocks.size()) + " blocks for " +
                             std::to_string(original_len) + " bytes (expected " +
                             std::to_string(expected) + ")");
    }
    std::vector<std::uint8_t> out;
    out.reserve(original_len);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i] >= n) throw BlockOutOfRange("decode_message: block >= n");
        const std::size_t width = i + 1 < blocks.size() ? k : original_len - i * k;
        if (blocks[i].byte_length() > width) {
            throw BlockOutOfRange("decode_message: block wider than its slot");
        }
        const std::vector<std::uint8_t> bytes = blocks[i].to_bytes_be(width);
        out.insert(out.end(), bytes.begin(), bytes.end());
    }
    return out;
}

}  // namespace cryptkit
