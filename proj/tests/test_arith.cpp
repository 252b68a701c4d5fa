#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <numeric>
#include <random>

#include "cryptkit/arith.hpp"
#include "oracles.hpp"

using cryptkit::BigNat;
using cryptkit::extended_gcd;
using cryptkit::gcd;
using cryptkit::is_coprime;
using cryptkit::mod_inverse;
using cryptkit::mod_pow;
using cryptkit::NonCoprime;
using cryptkit::SignedBigNat;

namespace {

// Checks a*x + b*y == g in 64-bit signed arithmetic (inputs small enough
// that nothing overflows).
void check_bezout(std::int64_t a, std::int64_t b) {
    auto res = extended_gcd(BigNat(static_cast<std::uint64_t>(a)), BigNat(static_cast<std::uint64_t>(b)));
    const std::int64_t g = static_cast<std::int64_t>(res.g.to_u64());
    std::int64_t x = static_cast<std::int64_t>(res.x.magnitude.to_u64());
    if (res.x.negative) x = -x;
    std::int64_t y = static_cast<std::int64_t>(res.y.magnitude.to_u64());
    if (res.y.negative) y = -y;
    CHECK(a * x + b * y == g);
    CHECK(g == std::gcd(a, b));
}

}  // namespace

TEST_CASE("gcd fixtures") {
    CHECK(gcd(BigNat(12), BigNat(18)).to_u64() == oracles::gcd_by_scan(12, 18));
    CHECK(gcd(BigNat(12), BigNat(18)) == BigNat(6));
    CHECK(gcd(BigNat(42), BigNat(0)) == BigNat(42));
    CHECK(gcd(BigNat(0), BigNat(42)) == BigNat(42));
    CHECK(gcd(BigNat(1), BigNat(999983)) == BigNat(1));
    CHECK(gcd(BigNat(0), BigNat(0)) == BigNat(0));
}

TEST_CASE("gcd agrees with divisor scan") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 400; ++i) {
        const std::uint64_t a = rng() % 500;
        const std::uint64_t b = rng() % 500;
        CHECK(gcd(BigNat(a), BigNat(b)).to_u64() == oracles::gcd_by_scan(a, b));
    }
}

TEST_CASE("gcd divides both inputs and dominates common divisors") {
    std::mt19937_64 rng(103);
    for (int i = 0; i < 300; ++i) {
        const std::uint64_t d = 1 + rng() % 1000;
        const std::uint64_t a = d * (rng() % 10000);
        const std::uint64_t b = d * (rng() % 10000);
        BigNat g = gcd(BigNat(a), BigNat(b));
        if (a != 0) CHECK(mod_u64(BigNat(a), g.to_u64()) == 0);
        if (b != 0) CHECK(mod_u64(BigNat(b), g.to_u64()) == 0);
        CHECK(g.to_u64() % d == 0);  // d is a common divisor, so it divides g
    }
}

TEST_CASE("extended_gcd fixtures") {
    auto r1 = extended_gcd(BigNat(240), BigNat(46));
    CHECK(r1.g == BigNat(2));
    CHECK(r1.x == SignedBigNat(-9));
    CHECK(r1.y == SignedBigNat(47));
    CHECK(r1.x.to_string() == "-9");

    auto r2 = extended_gcd(BigNat(99), BigNat(0));
    CHECK(r2.g == BigNat(99));
    CHECK(r2.x == SignedBigNat(1));
    CHECK(r2.y == SignedBigNat(0));

    auto r3 = extended_gcd(BigNat(7), BigNat(3));
    CHECK(r3.g == BigNat(1));
    CHECK(r3.x == SignedBigNat(1));
    CHECK(r3.y == SignedBigNat(-2));

    auto r4 = extended_gcd(BigNat(0), BigNat(0));
    CHECK(r4.g == BigNat(0));
}

TEST_CASE("extended_gcd Bezout identity over small grid") {
    for (std::int64_t a = 0; a <= 120; ++a)
        for (std::int64_t b = 0; b <= 120; ++b) check_bezout(a, b);
}

TEST_CASE("extended_gcd Bezout identity on random pairs up to 10^4") {
    std::mt19937_64 rng(107);
    for (int i = 0; i < 4000; ++i) check_bezout(rng() % 10001, rng() % 10001);
}

TEST_CASE("extended_gcd on multi-limb values") {
    std::mt19937_64 rng(109);
    for (int i = 0; i < 200; ++i) {
        // Verify the identity with BigNat arithmetic, splitting by sign.
        BigNat a = BigNat(rng()) * BigNat(rng()) + BigNat(rng());
        BigNat b = BigNat(rng()) * BigNat(rng()) + BigNat(rng());
        auto res = extended_gcd(a, b);
        BigNat pos, neg;
        if (!res.x.negative) pos += a * res.x.magnitude; else neg += a * res.x.magnitude;
        if (!res.y.negative) pos += b * res.y.magnitude; else neg += b * res.y.magnitude;
        CHECK(pos - neg == res.g);
        CHECK(res.g == gcd(a, b));
    }
}

TEST_CASE("mod_inverse fixtures") {
    CHECK(mod_inverse(BigNat(17), BigNat(3120)) == BigNat(2753));
    CHECK((BigNat(17) * BigNat(2753)) % BigNat(3120) == BigNat(1));
    CHECK(mod_inverse(BigNat(3), BigNat(7)).to_u64() == oracles::inverse_by_scan(3, 7).value());
    CHECK(mod_inverse(BigNat(3), BigNat(7)) == BigNat(5));
    CHECK_THROWS_AS(mod_inverse(BigNat(2), BigNat(4)), NonCoprime);
    CHECK_THROWS_AS(mod_inverse(BigNat(0), BigNat(5)), NonCoprime);
    CHECK_THROWS_AS(mod_inverse(BigNat(3), BigNat(1)), std::invalid_argument);
    // Inputs larger than the modulus reduce first.
    CHECK(mod_inverse(BigNat(10), BigNat(7)) == BigNat(5));
}

TEST_CASE("mod_inverse exhaustive for m in [2, 500]") {
    for (std::uint64_t m = 2; m <= 500; ++m) {
        for (std::uint64_t a = 1; a < m; ++a) {
            if (std::gcd(a, m) != 1) continue;
            const std::uint64_t u = mod_inverse(BigNat(a), BigNat(m)).to_u64();
            CHECK(u > 0);
            CHECK(u < m);
            CHECK((a * u) % m == 1);
        }
    }
}

TEST_CASE("mod_pow fixtures") {
    CHECK(mod_pow(BigNat(4), BigNat(13), BigNat(497)).to_u64() == oracles::pow_then_reduce(4, 13, 497));
    CHECK(mod_pow(BigNat(4), BigNat(13), BigNat(497)) == BigNat(445));
    CHECK(mod_pow(BigNat(12345), BigNat(0), BigNat(99)) == BigNat(1));
    CHECK(mod_pow(BigNat(0), BigNat(5), BigNat(7)) == BigNat(0));
    CHECK(mod_pow(BigNat(5), BigNat(99), BigNat(1)) == BigNat(0));
    CHECK_THROWS_AS(mod_pow(BigNat(2), BigNat(3), BigNat(0)), std::invalid_argument);
}

TEST_CASE("mod_pow equals materialize-then-reduce on the full small grid") {
    for (std::uint64_t b = 0; b <= 20; ++b)
        for (std::uint64_t e = 0; e <= 20; ++e)
            for (std::uint64_t m = 1; m <= 50; ++m)
                CHECK(mod_pow(BigNat(b), BigNat(e), BigNat(m)).to_u64() ==
                      oracles::pow_then_reduce(b, e, m));
}

TEST_CASE("mod_pow exponent additivity") {
    std::mt19937_64 rng(113);
    for (int i = 0; i < 1000; ++i) {
        const BigNat b(rng() % 100000);
        const BigNat e1(rng() % 1000);
        const BigNat e2(rng() % 1000);
        const BigNat m(2 + rng() % 100000);
        const BigNat lhs = mod_pow(b, e1 + e2, m);
        const BigNat rhs = (mod_pow(b, e1, m) * mod_pow(b, e2, m)) % m;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("mod_pow multi-limb path agrees with the single-limb path") {
    // Same computation done mod m (single limb) and mod m shifted into a
    // two-limb modulus, reduced back.
    std::mt19937_64 rng(127);
    for (int i = 0; i < 50; ++i) {
        const BigNat b(rng());
        const BigNat e(rng() % 10000);
        const BigNat m(2 + rng() % 1000000);
        const BigNat big_m = m * (BigNat(1) << 64);
        CHECK(mod_pow(b, e, big_m) % m == mod_pow(b % m, e, m));
    }
}

TEST_CASE("is_coprime") {
    CHECK(is_coprime(BigNat(17), BigNat(3120)));
    CHECK_FALSE(is_coprime(BigNat(2), BigNat(4)));
    CHECK(is_coprime(BigNat(1), BigNat(999983)));
    CHECK(is_coprime(BigNat(1), BigNat(0)));
}

TEST_CASE("SignedBigNat basics") {
    CHECK(SignedBigNat(-5).to_string() == "-5");
    CHECK(SignedBigNat(5).to_string() == "5");
    CHECK(SignedBigNat(0).to_string() == "0");
    CHECK((SignedBigNat(3) - SignedBigNat(5)) == SignedBigNat(-2));
    CHECK((SignedBigNat(-3) - SignedBigNat(-5)) == SignedBigNat(2));
    CHECK((SignedBigNat(3) - SignedBigNat(3)) == SignedBigNat(0));
    CHECK((SignedBigNat(3) - SignedBigNat(3)).negative == false);
    CHECK((BigNat(4) * SignedBigNat(-2)) == SignedBigNat(-8));
    CHECK((BigNat(0) * SignedBigNat(-2)) == SignedBigNat(0));
}
