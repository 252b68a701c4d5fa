#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "cryptkit/bignat.hpp"

namespace cryptkit {

// Uniform random source. Two implementations: SeededRng (deterministic,
// identical stream for identical seed on every platform) and SystemRng
// (OS entropy, for real key material).
//
// All derived draws (bytes, bounded integers) are built here from raw 64-bit
// outputs rather than std::uniform_int_distribution, whose output is not
// specified portably.
class RandomSource {
public:
    virtual ~RandomSource() = default;

    virtual std::uint64_t next_u64() = 0;

    std::uint8_t next_byte() { return static_cast<std::uint8_t>(next_u64() & 0xff); }

    std::vector<std::uint8_t> bytes(std::size_t len) {
        std::vector<std::uint8_t> out(len);
        for (auto& b : out) b = next_byte();
        return out;
    }

    // Uniform value in [0, 2^bit_count).
    BigNat bits(std::size_t bit_count) {
        if (bit_count == 0) return BigNat{};
        std::vector<std::uint8_t> be((bit_count + 7) / 8);
        for (std::size_t i = be.size(); i-- > 0;) be[i] = next_byte();
        const unsigned spare = static_cast<unsigned>(be.size() * 8 - bit_count);
        be[0] &= static_cast<std::uint8_t>(0xff >> spare);
        return BigNat::from_bytes_be(be);
    }

    // Uniform value in [0, bound) by rejection sampling.
    BigNat below(const BigNat& bound) {
        if (bound.is_zero()) throw std::invalid_argument("RandomSource::below: zero bound");
        const std::size_t k = bound.bit_length();
        for (;;) {
            BigNat v = bits(k);
            if (v < bound) return v;
        }
    }

    // Uniform value in [lo, hi], both ends inclusive.
    BigNat in_range(const BigNat& lo, const BigNat& hi) {
        if (hi < lo) throw std::invalid_argument("RandomSource::in_range: empty range");
        return lo + below(hi - lo + BigNat(1));
    }
};

// Deterministic source: same seed, same stream, every platform (mt19937_64's
// output sequence is pinned by the standard).
class SeededRng final : public RandomSource {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() override { return engine_(); }

private:
    std::mt19937_64 engine_;
};

// OS entropy source for real key generation.
class SystemRng final : public RandomSource {
public:
    std::uint64_t next_u64() override {
        return (static_cast<std::uint64_t>(device_()) << 32) ^ device_();
    }

private:
    std::random_device device_;
};

}  // namespace cryptkit
