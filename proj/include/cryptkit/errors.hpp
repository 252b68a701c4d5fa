#pragma once

#include <stdexcept>
#include <string>

namespace cryptkit {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No modular inverse exists: gcd(a, m) != 1.
struct NonCoprime : Error {
    using Error::Error;
};

// Key generation was given p == q.
struct EqualPrimes : Error {
    using Error::Error;
};

// A supplied factor failed the primality check.
struct NotPrime : Error {
    using Error::Error;
};

// Block value is >= the modulus (or does not fit its slot in a message).
struct MessageTooLarge : Error {
    using Error::Error;
};

// One-time pad key is shorter than the data it must cover.
struct KeyTooShort : Error {
    using Error::Error;
};

// Random prime search ran out of attempts (signals a broken RandomSource).
struct ExhaustedAttempts : Error {
    using Error::Error;
};

// Decoder was handed a block outside the valid range for its position.
struct BlockOutOfRange : Error {
    using Error::Error;
};

// Block count is inconsistent with the declared byte length.
struct LengthMismatch : Error {
    using Error::Error;
};

// Claimed factors do not multiply to the target modulus.
struct FactorMismatch : Error {
    using Error::Error;
};

// Scenario configuration violates a simulator invariant.
struct InvalidConfig : Error {
    using Error::Error;
};

// A key/ciphertext/signature file does not match its on-disk format.
struct FormatError : Error {
    using Error::Error;
};

// Filesystem failure (unreadable input, unwritable output).
struct IoError : Error {
    using Error::Error;
};

}  // namespace cryptkit
