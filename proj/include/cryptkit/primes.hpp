#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cryptkit/arith.hpp"
#include "cryptkit/bignat.hpp"
#include "cryptkit/errors.hpp"
#include "cryptkit/random.hpp"

namespace cryptkit {

// Miller-Rabin round count giving a composite-pass probability <= 4^-40.
inline constexpr int kDefaultPrimalityRounds = 40;

// All primes below 1000, used to screen candidates before Miller-Rabin.
inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> table = [] {
        std::vector<std::uint32_t> out;
        std::vector<bool> composite(1000, false);
        for (std::uint32_t i = 2; i < 1000; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint32_t j = i * i; j < 1000; j += i) composite[j] = true;
        }
        return out;
    }();
    return table;
}

// Probabilistic primality test: trial division by the small-prime table, then
// `rounds` Miller-Rabin rounds with uniformly random bases in [2, n-2].
// Never rejects a prime; accepts a composite with probability <= 4^-rounds.
inline bool is_probable_prime(const BigNat& n, RandomSource& rng, int rounds = kDefaultPrimalityRounds) {
    if (rounds < 1) throw std::invalid_argument("is_probable_prime: rounds must be >= 1");
    if (n < BigNat(2)) return false;
    for (std::uint32_t p : small_primes()) {
        if (n == BigNat(p)) return true;
        if (mod_u64(n, p) == 0) return false;
    }

    // n is odd with no factor below 1000 here. Write n-1 = d * 2^s.
    const BigNat n_minus_1 = n - BigNat(1);
    std::size_t s = 0;
    while (!n_minus_1.bit(s)) ++s;
    const BigNat d = n_minus_1 >> s;

    for (int round = 0; round < rounds; ++round) {
        const BigNat a = rng.in_range(BigNat(2), n - BigNat(2));
        BigNat x = mod_pow(a, d, n);
        if (x == BigNat(1) || x == n_minus_1) continue;
        bool witness = true;
        for (std::size_t i = 1; i < s; ++i) {
            x = (x * x) % n;
            if (x == n_minus_1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// Random probable prime with exactly `bits` significant bits. The top two
// bits are forced (so a product of two such primes has exactly 2*bits bits)
// and the bottom bit is forced. Candidates are drawn fresh on each failure
// rather than walking upward, which would bias toward primes after large gaps.
inline BigNat gen_prime(std::size_t bits, RandomSource& rng, int rounds = kDefaultPrimalityRounds) {
    if (bits < 2) throw std::invalid_argument("gen_prime: bits must be >= 2");
    const std::size_t max_attempts = 64 * bits;
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        BigNat candidate = rng.bits(bits);
        if (!candidate.bit(bits - 1)) candidate += BigNat(1) << (bits - 1);
        if (!candidate.bit(bits - 2)) candidate += BigNat(1) << (bits - 2);
        if (candidate.is_even()) candidate += BigNat(1);
        if (is_probable_prime(candidate, rng, rounds)) return candidate;
    }
    throw ExhaustedAttempts("gen_prime: no prime found in " + std::to_string(max_attempts) +
                            " attempts; RandomSource looks broken");
}

}  // namespace cryptkit
