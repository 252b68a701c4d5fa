#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "cryptkit/bignat.hpp"
#include "cryptkit/errors.hpp"

namespace cryptkit {

// Signed value used only for the Bezout cofactors of extended_gcd. Everything
// else in the toolkit is nonnegative; signedness stays confined here.
struct SignedBigNat {
    BigNat magnitude;
    bool negative = false;  // never set for zero

    SignedBigNat() = default;
    SignedBigNat(BigNat mag, bool neg) : magnitude(std::move(mag)), negative(neg && !magnitude.is_zero()) {}
    SignedBigNat(std::int64_t v)
        : magnitude(v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v)),
          negative(v < 0) {}

    std::string to_string() const { return (negative ? "-" : "") + magnitude.to_decimal(); }

    friend bool operator==(const SignedBigNat& a, const SignedBigNat& b) {
        return a.negative == b.negative && a.magnitude == b.magnitude;
    }

    friend SignedBigNat operator-(const SignedBigNat& a, const SignedBigNat& b) {
        if (a.negative != b.negative) return {a.magnitude + b.magnitude, a.negative};
        if (a.magnitude >= b.magnitude) return {a.magnitude - b.magnitude, a.negative};
        return {b.magnitude - a.magnitude, !a.negative};
    }

    friend SignedBigNat operator*(const BigNat& k, const SignedBigNat& x) {
        return {k * x.magnitude, x.negative};
    }
};

struct ExtendedGcdResult {
    BigNat g;
    SignedBigNat x;
    SignedBigNat y;
};

inline BigNat gcd(BigNat a, BigNat b) {
    while (!b.is_zero()) {
        BigNat r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline bool is_coprime(const BigNat& a, const BigNat& b) { return gcd(a, b) == BigNat(1); }

// Returns (g, x, y) with a*x + b*y == g == gcd(a, b).
inline ExtendedGcdResult extended_gcd(const BigNat& a, const BigNat& b) {
    BigNat old_r = a, r = b;
    SignedBigNat old_x(1), x(0);
    SignedBigNat old_y(0), y(1);
    while (!r.is_zero()) {
        auto [q, rem] = BigNat::divmod(old_r, r);
        old_r = std::move(r);
        r = std::move(rem);
        SignedBigNat nx = old_x - q * x;
        old_x = std::move(x);
        x = std::move(nx);
        SignedBigNat ny = old_y - q * y;
        old_y = std::move(y);
        y = std::move(ny);
    }
    return {std::move(old_r), std::move(old_x), std::move(old_y)};
}

// Least positive u with a*u == 1 (mod m). Throws NonCoprime when no inverse
// exists.
inline BigNat mod_inverse(const BigNat& a, const BigNat& m) {
    if (m < BigNat(2)) throw std::invalid_argument("mod_inverse: modulus must be >= 2");
    const BigNat reduced = a % m;
    ExtendedGcdResult eg = extended_gcd(reduced, m);
    if (eg.g != BigNat(1)) {
        throw NonCoprime("mod_inverse: gcd(" + a.to_decimal() + ", " + m.to_decimal() + ") = " +
                         eg.g.to_decimal() + ", no inverse exists");
    }
    BigNat u = eg.x.magnitude % m;
    if (eg.x.negative && !u.is_zero()) u = m - u;
    return u;
}

// base^exp mod modulus via left-to-right binary square-and-multiply; never
// materializes base^exp. Not constant-time.
inline BigNat mod_pow(const BigNat& base, const BigNat& exp, const BigNat& modulus) {
    if (modulus.is_zero()) throw std::invalid_argument("mod_pow: modulus must be >= 1");
    if (modulus == BigNat(1)) return BigNat{};

    if (modulus.fits_u64()) {
        // Single-limb fast path: same scan order, machine arithmetic.
        const std::uint64_t m = modulus.to_u64();
        const std::uint64_t b = mod_u64(base, m);
        unsigned __int128 result = 1;
        for (std::size_t i = exp.bit_length(); i-- > 0;) {
            result = (result * result) % m;
            if (exp.bit(i)) result = (result * b) % m;
        }
        return BigNat(static_cast<std::uint64_t>(result));
    }

    const BigNat b = base % modulus;
    BigNat result(1);
    for (std::size_t i = exp.bit_length(); i-- > 0;) {
        result = (result * result) % modulus;
        if (exp.bit(i)) result = (result * b) % modulus;
    }
    return result;
}

}  // namespace cryptkit
