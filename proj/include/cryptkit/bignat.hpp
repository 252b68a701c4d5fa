#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cryptkit {

// Arbitrary-precision nonnegative integer.
//
// Stored as little-endian 64-bit limbs with no trailing zero limbs; an empty
// limb vector is zero. Every operation keeps that canonical form, so equality
// is plain limb-vector equality. Subtraction below zero and division by zero
// throw; nothing here ever yields a negative value.
class BigNat {
public:
    using Limb = std::uint64_t;
    using DoubleLimb = unsigned __int128;

    BigNat() = default;
    BigNat(std::uint64_t value) {  // implicit: lets literals mix into expressions
        if (value != 0) limbs_.push_back(value);
    }

    static BigNat from_hex(std::string_view text) {
        if (text.empty()) throw std::invalid_argument("BigNat::from_hex: empty string");
        BigNat out;
        out.limbs_.assign((text.size() + 15) / 16, 0);
        std::size_t bit = 0;
        for (std::size_t i = text.size(); i-- > 0; bit += 4) {
            const int v = hex_digit(text[i]);
            if (v < 0) throw std::invalid_argument("BigNat::from_hex: invalid hex digit");
            out.limbs_[bit / 64] |= static_cast<Limb>(v) << (bit % 64);
        }
        out.trim();
        return out;
    }

    static BigNat from_decimal(std::string_view text) {
        if (text.empty()) throw std::invalid_argument("BigNat::from_decimal: empty string");
        BigNat out;
        for (char c : text) {
            if (c < '0' || c > '9') throw std::invalid_argument("BigNat::from_decimal: invalid digit");
            out = out * BigNat(10) + BigNat(static_cast<Limb>(c - '0'));
        }
        return out;
    }

    // Big-endian bytes; leading zero bytes are allowed and ignored.
    static BigNat from_bytes_be(std::span<const std::uint8_t> bytes) {
        BigNat out;
        out.limbs_.assign((bytes.size() + 7) / 8, 0);
        std::size_t shift = 0;
        for (std::size_t i = bytes.size(); i-- > 0; shift += 8) {
            out.limbs_[shift / 64] |= static_cast<Limb>(bytes[i]) << (shift % 64);
        }
        out.trim();
        return out;
    }

    // Lowercase, minimal digits, "0" for zero.
    std::string to_hex() const {
        if (is_zero()) return "0";
        static constexpr char digits[] = "0123456789abcdef";
        std::string out;
        out.reserve(limbs_.size() * 16);
        bool leading = true;
        for (std::size_t i = limbs_.size(); i-- > 0;) {
            for (int nib = 15; nib >= 0; --nib) {
                const unsigned d = (limbs_[i] >> (nib * 4)) & 0xf;
                if (leading && d == 0) continue;
                leading = false;
                out.push_back(digits[d]);
            }
        }
        return out;
    }

    std::string to_decimal() const;

    // Minimal big-endian bytes; empty for zero.
    std::vector<std::uint8_t> to_bytes_be() const {
        std::vector<std::uint8_t> out;
        if (is_zero()) return out;
        const std::size_t n = byte_length();
        out.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t shift = 8 * (n - 1 - i);
            out[i] = static_cast<std::uint8_t>(limbs_[shift / 64] >> (shift % 64));
        }
        return out;
    }

    // Big-endian bytes left-padded with zeros to exactly `width` bytes.
    // Throws if the value does not fit.
    std::vector<std::uint8_t> to_bytes_be(std::size_t width) const {
        std::vector<std::uint8_t> minimal = to_bytes_be();
        if (minimal.size() > width) throw std::overflow_error("BigNat: value does not fit requested byte width");
        std::vector<std::uint8_t> out(width - minimal.size(), 0);
        out.insert(out.end(), minimal.begin(), minimal.end());
        return out;
    }

    bool is_zero() const { return limbs_.empty(); }
    bool is_odd() const { return !limbs_.empty() && (limbs_[0] & 1u); }
    bool is_even() const { return !is_odd(); }

    std::size_t bit_length() const {
        if (is_zero()) return 0;
        return 64 * (limbs_.size() - 1) + (64 - std::countl_zero(limbs_.back()));
    }

    std::size_t byte_length() const { return (bit_length() + 7) / 8; }

    bool bit(std::size_t index) const {
        const std::size_t limb = index / 64;
        if (limb >= limbs_.size()) return false;
        return (limbs_[limb] >> (index % 64)) & 1u;
    }

    std::uint64_t to_u64() const {
        if (limbs_.size() > 1) throw std::overflow_error("BigNat: value exceeds 64 bits");
        return limbs_.empty() ? 0 : limbs_[0];
    }

    bool fits_u64() const { return limbs_.size() <= 1; }

    friend bool operator==(const BigNat& a, const BigNat& b) { return a.limbs_ == b.limbs_; }

    friend std::strong_ordering operator<=>(const BigNat& a, const BigNat& b) {
        if (a.limbs_.size() != b.limbs_.size())
            return a.limbs_.size() <=> b.limbs_.size();
        for (std::size_t i = a.limbs_.size(); i-- > 0;) {
            if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
        }
        return std::strong_ordering::equal;
    }

    friend BigNat operator+(const BigNat& a, const BigNat& b) {
        const BigNat& big = a.limbs_.size() >= b.limbs_.size() ? a : b;
        const BigNat& small = a.limbs_.size() >= b.limbs_.size() ? b : a;
        BigNat out;
        out.limbs_.resize(big.limbs_.size() + 1, 0);
        DoubleLimb carry = 0;
        for (std::size_t i = 0; i < big.limbs_.size(); ++i) {
            DoubleLimb s = static_cast<DoubleLimb>(big.limbs_[i]) + carry;
            if (i < small.limbs_.size()) s += small.limbs_[i];
            out.limbs_[i] = static_cast<Limb>(s);
            carry = s >> 64;
        }
        out.limbs_.back() = static_cast<Limb>(carry);
        out.trim();
        return out;
    }

    // Throws std::domain_error if b > a: BigNat values cannot go negative.
    friend BigNat operator-(const BigNat& a, const BigNat& b) {
        if (a < b) throw std::domain_error("BigNat: subtraction underflow");
        BigNat out;
        out.limbs_.resize(a.limbs_.size());
        Limb borrow = 0;
        for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
            const Limb sub = i < b.limbs_.size() ? b.limbs_[i] : 0;
            const Limb ai = a.limbs_[i];
            const Limb res = ai - sub - borrow;
            borrow = (static_cast<DoubleLimb>(sub) + borrow > ai) ? 1 : 0;
            out.limbs_[i] = res;
        }
        out.trim();
        return out;
    }

    friend BigNat operator*(const BigNat& a, const BigNat& b) {
        if (a.is_zero() || b.is_zero()) return BigNat{};
        BigNat out;
        out.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
            DoubleLimb carry = 0;
            for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
                DoubleLimb cur = static_cast<DoubleLimb>(out.limbs_[i + j]) +
                                 static_cast<DoubleLimb>(a.limbs_[i]) * b.limbs_[j] + carry;
                out.limbs_[i + j] = static_cast<Limb>(cur);
                carry = cur >> 64;
            }
            out.limbs_[i + b.limbs_.size()] = static_cast<Limb>(carry);
        }
        out.trim();
        return out;
    }

    struct DivModResult;

    // Schoolbook long division (Knuth algorithm D for multi-limb divisors).
    static DivModResult divmod(const BigNat& a, const BigNat& b);

    friend BigNat operator/(const BigNat& a, const BigNat& b);
    friend BigNat operator%(const BigNat& a, const BigNat& b);

    BigNat operator<<(std::size_t bits) const {
        if (is_zero()) return BigNat{};
        const std::size_t limb_shift = bits / 64;
        const unsigned bit_shift = bits % 64;
        BigNat out;
        out.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            out.limbs_[i + limb_shift] |= bit_shift == 0 ? limbs_[i] : (limbs_[i] << bit_shift);
            if (bit_shift != 0) out.limbs_[i + limb_shift + 1] |= limbs_[i] >> (64 - bit_shift);
        }
        out.trim();
        return out;
    }

    BigNat operator>>(std::size_t bits) const {
        const std::size_t limb_shift = bits / 64;
        if (limb_shift >= limbs_.size()) return BigNat{};
        const unsigned bit_shift = bits % 64;
        BigNat out;
        out.limbs_.assign(limbs_.size() - limb_shift, 0);
        for (std::size_t i = 0; i < out.limbs_.size(); ++i) {
            out.limbs_[i] = bit_shift == 0 ? limbs_[i + limb_shift] : (limbs_[i + limb_shift] >> bit_shift);
            if (bit_shift != 0 && i + limb_shift + 1 < limbs_.size())
                out.limbs_[i] |= limbs_[i + limb_shift + 1] << (64 - bit_shift);
        }
        out.trim();
        return out;
    }

    BigNat& operator+=(const BigNat& o) { return *this = *this + o; }
    BigNat& operator-=(const BigNat& o) { return *this = *this - o; }
    BigNat& operator*=(const BigNat& o) { return *this = *this * o; }
    BigNat& operator/=(const BigNat& o) { return *this = *this / o; }
    BigNat& operator%=(const BigNat& o) { return *this = *this % o; }

    std::size_t limb_count() const { return limbs_.size(); }

    // Little-endian limb access; indices past the end read as zero.
    Limb limb(std::size_t i) const { return i < limbs_.size() ? limbs_[i] : 0; }

private:
    std::vector<Limb> limbs_;

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }

    static int hex_digit(char c) {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    }

    static void divmod_knuth(const BigNat& a, const BigNat& b, BigNat& q_out, BigNat& r_out) {
        const std::size_t n = b.limbs_.size();
        const std::size_t m = a.limbs_.size() - n;
        const unsigned shift = std::countl_zero(b.limbs_.back());

        // Normalized copies: top limb of v has its high bit set.
        std::vector<Limb> u(a.limbs_.size() + 1, 0);
        std::vector<Limb> v(n, 0);
        if (shift == 0) {
            std::copy(a.limbs_.begin(), a.limbs_.end(), u.begin());
            std::copy(b.limbs_.begin(), b.limbs_.end(), v.begin());
        } else {
            Limb carry = 0;
            for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
                u[i] = (a.limbs_[i] << shift) | carry;
                carry = a.limbs_[i] >> (64 - shift);
            }
            u[a.limbs_.size()] = carry;
            carry = 0;
            for (std::size_t i = 0; i < n; ++i) {
                v[i] = (b.limbs_[i] << shift) | carry;
                carry = b.limbs_[i] >> (64 - shift);
            }
        }

        constexpr DoubleLimb base = static_cast<DoubleLimb>(1) << 64;
        const Limb vh = v[n - 1];
        const Limb vl = v[n - 2];

        BigNat q;
        q.limbs_.assign(m + 1, 0);
        for (std::size_t j = m + 1; j-- > 0;) {
            const DoubleLimb num = (static_cast<DoubleLimb>(u[j + n]) << 64) | u[j + n - 1];
            DoubleLimb qhat = num / vh;
            DoubleLimb rhat = num % vh;
            while (qhat >= base ||
                   qhat * vl > ((rhat << 64) | u[j + n - 2])) {
                --qhat;
                rhat += vh;
                if (rhat >= base) break;
            }

            // u[j .. j+n] -= qhat * v
            DoubleLimb borrow = 0;
            const Limb qh = static_cast<Limb>(qhat);
            for (std::size_t i = 0; i < n; ++i) {
                const DoubleLimb p = static_cast<DoubleLimb>(qh) * v[i] + borrow;
                const Limb plo = static_cast<Limb>(p);
                borrow = p >> 64;
                if (u[j + i] < plo) ++borrow;
                u[j + i] -= plo;
            }
            const bool went_negative = borrow > u[j + n];
            u[j + n] -= static_cast<Limb>(borrow);

            Limb qdigit = qh;
            if (went_negative) {
                // qhat was one too large; add v back.
                --qdigit;
                DoubleLimb carry = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    const DoubleLimb s = static_cast<DoubleLimb>(u[j + i]) + v[i] + carry;
                    u[j + i] = static_cast<Limb>(s);
                    carry = s >> 64;
                }
                u[j + n] += static_cast<Limb>(carry);
            }
            q.limbs_[j] = qdigit;
        }
        q.trim();

        BigNat r;
        r.limbs_.assign(n, 0);
        if (shift == 0) {
            std::copy(u.begin(), u.begin() + n, r.limbs_.begin());
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                r.limbs_[i] = u[i] >> shift;
                if (i + 1 < n + 1) r.limbs_[i] |= u[i + 1] << (64 - shift);
            }
        }
        r.trim();
        q_out = std::move(q);
        r_out = std::move(r);
    }
};

struct BigNat::DivModResult {
    BigNat quot;
    BigNat rem;
};

inline BigNat::DivModResult BigNat::divmod(const BigNat& a, const BigNat& b) {
    if (b.is_zero()) throw std::domain_error("BigNat: division by zero");
    if (a < b) return {BigNat{}, a};
    if (b.limbs_.size() == 1) {
        const Limb d = b.limbs_[0];
        BigNat q;
        q.limbs_.resize(a.limbs_.size());
        DoubleLimb r = 0;
        for (std::size_t i = a.limbs_.size(); i-- > 0;) {
            const DoubleLimb cur = (r << 64) | a.limbs_[i];
            q.limbs_[i] = static_cast<Limb>(cur / d);
            r = cur % d;
        }
        q.trim();
        return {std::move(q), BigNat(static_cast<Limb>(r))};
    }
    DivModResult out;
    divmod_knuth(a, b, out.quot, out.rem);
    return out;
}

inline BigNat operator/(const BigNat& a, const BigNat& b) { return BigNat::divmod(a, b).quot; }
inline BigNat operator%(const BigNat& a, const BigNat& b) { return BigNat::divmod(a, b).rem; }

inline std::string BigNat::to_decimal() const {
    if (is_zero()) return "0";
    // Peel 19 decimal digits at a time (10^19 is the largest power of ten below 2^64).
    constexpr Limb chunk = 10000000000000000000ULL;
    std::vector<std::string> groups;
    BigNat rest = *this;
    while (!rest.is_zero()) {
        auto [q, r] = divmod(rest, BigNat(chunk));
        groups.push_back(std::to_string(r.to_u64()));
        rest = std::move(q);
    }
    std::string out = groups.back();
    for (std::size_t i = groups.size() - 1; i-- > 0;) {
        out += std::string(19 - groups[i].size(), '0');
        out += groups[i];
    }
    return out;
}

// Remainder of n by a machine-word modulus, without allocating.
inline std::uint64_t mod_u64(const BigNat& n, std::uint64_t m) {
    if (m == 0) throw std::domain_error("mod_u64: division by zero");
    BigNat::DoubleLimb r = 0;
    for (std::size_t i = n.limb_count(); i-- > 0;) {
        r = ((r << 64) | n.limb(i)) % m;
    }
    return static_cast<std::uint64_t>(r);
}

}  // namespace cryptkit
