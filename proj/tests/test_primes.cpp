#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>

#include "cryptkit/primes.hpp"
#include "oracles.hpp"

using cryptkit::BigNat;
using cryptkit::gen_prime;
using cryptkit::is_probable_prime;
using cryptkit::SeededRng;

TEST_CASE("edge values") {
    SeededRng rng(1);
    CHECK_FALSE(is_probable_prime(BigNat(0), rng));
    CHECK_FALSE(is_probable_prime(BigNat(1), rng));
    CHECK(is_probable_prime(BigNat(2), rng));
    CHECK(is_probable_prime(BigNat(3), rng));
    CHECK_FALSE(is_probable_prime(BigNat(4), rng));
    CHECK(is_probable_prime(BigNat(7919), rng));
    CHECK_THROWS_AS(is_probable_prime(BigNat(7), rng, 0), std::invalid_argument);
}

TEST_CASE("Carmichael numbers are rejected") {
    SeededRng rng(2);
    for (std::uint64_t n : {561ULL, 1105ULL, 1729ULL, 2465ULL, 2821ULL, 6601ULL, 8911ULL}) {
        CAPTURE(n);
        CHECK_FALSE(is_probable_prime(BigNat(n), rng));
    }
    // 561 = 3 * 187: the smallest one, called out explicitly.
    CHECK(561 % 3 == 0);
}

TEST_CASE("agrees with sieve below 20000") {
    const auto sieve = oracles::prime_sieve(20000);
    SeededRng rng(3);
    for (std::uint64_t n = 0; n < 20000; ++n) {
        if (is_probable_prime(BigNat(n), rng) != sieve[n]) {
            CAPTURE(n);
            CHECK(false);
        }
    }
    CHECK(true);
}

TEST_CASE("large known primes and composites") {
    SeededRng rng(4);
    // 2^89 - 1 is a Mersenne prime; 2^87 - 1 = 3 * ... is composite.
    const BigNat m89 = (BigNat(1) << 89) - BigNat(1);
    const BigNat m87 = (BigNat(1) << 87) - BigNat(1);
    CHECK(is_probable_prime(m89, rng));
    CHECK_FALSE(is_probable_prime(m87, rng));
    // Product of two 64-bit-ish primes must be composite.
    const BigNat p(2305843009213693951ULL);  // 2^61 - 1, prime
    CHECK(is_probable_prime(p, rng));
    CHECK_FALSE(is_probable_prime(p * p, rng));
}

TEST_CASE("gen_prime smallest size") {
    SeededRng rng(5);
    CHECK(gen_prime(2, rng) == BigNat(3));
    CHECK_THROWS_AS(gen_prime(1, rng), std::invalid_argument);
}

namespace {

// A broken source that always yields zero, so every candidate is the same
// forced-bits value.
struct ZeroRng final : cryptkit::RandomSource {
    std::uint64_t next_u64() override { return 0; }
};

}  // namespace

TEST_CASE("gen_prime reports a broken RandomSource") {
    ZeroRng rng;
    // With all-zero draws the 9-bit candidate is always 0b110000001 = 385,
    // which is 5 * 7 * 11; the attempt budget must run out.
    CHECK_THROWS_AS(gen_prime(9, rng), cryptkit::ExhaustedAttempts);
}

TEST_CASE("gen_prime shape: exact bit length, top two bits, odd") {
    SeededRng rng(6);
    for (std::size_t bits : {3, 4, 5, 8, 12, 16, 24, 48, 64, 96, 128}) {
        for (int i = 0; i < 5; ++i) {
            const BigNat p = gen_prime(bits, rng);
            CAPTURE(bits);
            CHECK(p.bit_length() == bits);
            CHECK(p.bit(bits - 1));
            CHECK(p.bit(bits - 2));
            CHECK(p.is_odd());
        }
    }
}

TEST_CASE("gen_prime outputs pass a full sieve check for bits <= 16") {
    const auto sieve = oracles::prime_sieve(1 << 16);
    SeededRng rng(7);
    for (std::size_t bits : {4, 8, 11, 13, 16}) {
        for (int i = 0; i < 40; ++i) {
            const std::uint64_t p = gen_prime(bits, rng).to_u64();
            CAPTURE(bits);
            CAPTURE(p);
            CHECK(sieve[p]);
        }
    }
}

TEST_CASE("gen_prime is deterministic under a fixed seed") {
    SeededRng a(99), b(99);
    for (int i = 0; i < 5; ++i) {
        CHECK(gen_prime(48, a) == gen_prime(48, b));
    }
    SeededRng c(100);
    bool all_equal = true;
    SeededRng a2(99);
    for (int i = 0; i < 5; ++i) {
        if (gen_prime(48, a2) != gen_prime(48, c)) all_equal = false;
    }
    CHECK_FALSE(all_equal);  // different seed, different stream
}

TEST_CASE("product of two gen_prime outputs has exactly 2*bits bits") {
    SeededRng rng(8);
    for (std::size_t bits : {8, 16, 32}) {
        const BigNat p = gen_prime(bits, rng);
        const BigNat q = gen_prime(bits, rng);
        CHECK((p * q).bit_length() == 2 * bits);
    }
}
