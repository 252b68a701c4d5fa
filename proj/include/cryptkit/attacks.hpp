#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>

#include "cryptkit/arith.hpp"
#include "cryptkit/bignat.hpp"
#include "cryptkit/errors.hpp"
#include "cryptkit/primes.hpp"
#include "cryptkit/random.hpp"
#include "cryptkit/rsa.hpp"

namespace cryptkit {

// Desk-scale factoring attacks. Succeeding quickly on short moduli and
// stalling on long ones is the behavior under test: RSA's security claim is
// exactly the failure mode of these functions.

// Smallest nontrivial factor of n that is <= bound, if one exists.
inline std::optional<BigNat> trial_division(const BigNat& n, const BigNat& bound) {
    if (n < BigNat(2)) throw std::invalid_argument("trial_division: n must be >= 2");
    const std::uint64_t cap =
        bound.fits_u64() ? bound.to_u64() : ~std::uint64_t{0};
    const bool n_small = n.limb_count() <= 2;
    unsigned __int128 n128 = 0;
    if (n_small) n128 = (static_cast<unsigned __int128>(n.limb(1)) << 64) | n.limb(0);

    std::uint64_t d = 2;
    while (d <= cap) {
        if (n_small && static_cast<unsigned __int128>(d) * d > n128) return std::nullopt;  // n is prime
        if (mod_u64(n, d) == 0) return BigNat(d);
        d = d == 2 ? 3 : d + 2;
    }
    return std::nullopt;
}

namespace detail {

// One Pollard-rho run: Floyd cycle detection on x -> x^2 + c mod n, with the
// gcd taken over a 128-step product batch. Returns a nontrivial factor, or
// nullopt once the iteration budget is spent or the walk cycles.
inline std::optional<BigNat> rho_walk(const BigNat& n, const BigNat& c, const BigNat& x0,
                                      std::uint64_t max_steps, std::uint64_t& steps_used) {
    constexpr std::uint64_t kBatch = 128;
    const auto advance = [&](const BigNat& v) { return (v * v + c) % n; };

    BigNat x = x0, y = x0;
    while (steps_used < max_steps) {
        const BigNat batch_x = x, batch_y = y;
        BigNat acc(1);
        std::uint64_t in_batch = 0;
        bool cycled = false;
        while (in_batch < kBatch && steps_used < max_steps) {
            x = advance(x);
            y = advance(advance(y));
            ++in_batch;
            ++steps_used;
            const BigNat diff = x >= y ? x - y : y - x;
            if (diff.is_zero()) {
                cycled = true;
                break;
            }
            acc = (acc * diff) % n;
        }
        BigNat g = gcd(acc, n);
        if (g > BigNat(1) && g < n) return g;
        if (g == n) {
            // The batch collapsed; replay it one step at a time.
            BigNat rx = batch_x, ry = batch_y;
            for (std::uint64_t i = 0; i < in_batch; ++i) {
                rx = advance(rx);
                ry = advance(advance(ry));
                const BigNat diff = rx >= ry ? rx - ry : ry - rx;
                if (diff.is_zero()) break;
                g = gcd(diff, n);
                if (g > BigNat(1) && g < n) return g;
            }
            return std::nullopt;  // trivial collapse; caller restarts with a new c
        }
        if (cycled) return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace detail

// Pollard rho. Even n short-circuits to 2; probable primes short-circuit to
// NotFound. A returned factor f always satisfies 1 < f < n and f | n.
inline std::optional<BigNat> pollard_rho(const BigNat& n, RandomSource& rng,
                                         std::uint64_t max_iterations) {
    if (n < BigNat(2)) throw std::invalid_argument("pollard_rho: n must be >= 2");
    if (is_probable_prime(n, rng)) return std::nullopt;
    if (n.is_even()) return BigNat(2);

    std::uint64_t steps = 0;
    while (steps < max_iterations) {
        const BigNat c = rng.in_range(BigNat(1), n - BigNat(1));
        const BigNat x0 = rng.in_range(BigNat(2), n - BigNat(2));
        if (auto f = detail::rho_walk(n, c, x0, max_iterations, steps)) return f;
    }
    return std::nullopt;
}

inline constexpr std::uint64_t kTrialDivisionBound = 100000;

// Splits a semiprime n into (p, q, (p-1)(q-1)) with p <= q: trial division
// up to 10^5 first, then Pollard rho restarts until the deadline. Returns
// nullopt on budget exhaustion or when n is not a semiprime.
inline std::optional<FactorPair> factor_semiprime(const BigNat& n, RandomSource& rng,
                                                  std::chrono::milliseconds budget) {
    if (n < BigNat(4)) throw std::invalid_argument("factor_semiprime: n must be >= 4");
    const auto deadline = std::chrono::steady_clock::now() + budget;

    const auto to_pair = [&](const BigNat& f) -> std::optional<FactorPair> {
        BigNat p = f, q = n / f;
        if (p > q) std::swap(p, q);
        if (!is_probable_prime(p, rng) || !is_probable_prime(q, rng)) return std::nullopt;
        return FactorPair{p, q, (p - BigNat(1)) * (q - BigNat(1))};
    };

    if (auto f = trial_division(n, BigNat(kTrialDivisionBound))) return to_pair(*f);
    if (is_probable_prime(n, rng)) return std::nullopt;

    // 4096 rho steps per slice keeps the deadline check responsive even at
    // four-limb moduli.
    constexpr std::uint64_t kSlice = 4096;
    while (std::chrono::steady_clock::now() < deadline) {
        const BigNat c = rng.in_range(BigNat(1), n - BigNat(1));
        const BigNat x0 = rng.in_range(BigNat(2), n - BigNat(2));
        std::uint64_t steps = 0;
        if (auto f = detail::rho_walk(n, c, x0, kSlice, steps)) return to_pair(*f);
    }
    return std::nullopt;
}

// Rebuilds the full private key from the public key and the factorization of
// its modulus: whoever holds p and q can compute d from e.
inline PrivateKey recover_private_key(const PublicKey& pub, const FactorPair& fp) {
    if (fp.p * fp.q != pub.n) {
        throw FactorMismatch("recover_private_key: p*q = " + (fp.p * fp.q).to_decimal() +
                             " != n = " + pub.n.to_decimal());
    }
    const BigNat phi = (fp.p - BigNat(1)) * (fp.q - BigNat(1));
    const BigNat d = mod_inverse(pub.e, phi);  // NonCoprime when e is invalid for this phi
    return make_private_key(fp.p, fp.q, d);
}

// End-to-end break: factor the modulus, then derive the private key.
inline std::optional<PrivateKey> crack(const PublicKey& pub, RandomSource& rng,
                                       std::chrono::milliseconds budget) {
    auto factors = factor_semiprime(pub.n, rng, budget);
    if (!factors) return std::nullopt;
    return recover_private_key(pub, *factors);
}

}  // namespace cryptkit
