#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cryptkit/errors.hpp"
#include "cryptkit/random.hpp"

namespace cryptkit {

// One-time pad key material. Usable against a message only when it is at
// least as long as that message. Single use is a convention the caller must
// uphold; the math cannot enforce it.
struct OtpKey {
    std::vector<std::uint8_t> bytes;
};

// XOR the data against the key, byte for byte. Self-inverse: applying twice
// with the same key returns the original.
inline std::vector<std::uint8_t> otp_apply(std::span<const std::uint8_t> data, const OtpKey& key) {
    if (key.bytes.size() < data.size()) {
        throw KeyTooShort("otp_apply: key covers " + std::to_string(key.bytes.size()) +
                          " of " + std::to_string(data.size()) + " bytes");
    }
    std::vector<std::uint8_t> out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) out[i] = data[i] ^ key.bytes[i];
    return out;
}

inline OtpKey gen_otp_key(std::size_t len, RandomSource& rng) { return OtpKey{rng.bytes(len)}; }

}  // namespace cryptkit
