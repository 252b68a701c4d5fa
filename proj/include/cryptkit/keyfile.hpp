#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "cryptkit/bignat.hpp"
#include "cryptkit/errors.hpp"
#include "cryptkit/rsa.hpp"

namespace cryptkit {

// On-disk formats. All text files are ASCII with LF line endings and a
// trailing LF; integers are lowercase minimal hex ("0" for zero). Parsers are
// strict: wrong header, wrong field order, extra lines, CRLF, or non-minimal
// hex all reject the file.
//
//   public key:   CRYPTKIT-PUBLIC-V1 / n=<hex> / e=<hex>
//   private key:  CRYPTKIT-PRIVATE-V1 / n= / d= / p= / q=   (CRT fields are
//                 recomputed on load)
//   ciphertext:   CRYPTKIT-CT-V1 / len=<dec> / blocks=<dec> / one hex block
//                 per line
//   signature:    CRYPTKIT-SIG-V1, same body as ciphertext
//   OTP key:      raw bytes, no header

inline constexpr std::string_view kPublicKeyHeader = "CRYPTKIT-PUBLIC-V1";
inline constexpr std::string_view kPrivateKeyHeader = "CRYPTKIT-PRIVATE-V1";
inline constexpr std::string_view kCiphertextHeader = "CRYPTKIT-CT-V1";
inline constexpr std::string_view kSignatureHeader = "CRYPTKIT-SIG-V1";

struct BlockFile {
    std::size_t original_len = 0;
    std::vector<BigNat> blocks;
};

namespace detail {

inline std::string read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed for " + path.string());
    return data;
}

// Splits strictly LF-terminated text into lines; the final line must end
// with LF and no line may contain CR.
inline std::vector<std::string> split_strict_lines(const std::string& data, const std::string& what) {
    if (data.empty() || data.back() != '\n') {
        throw FormatError(what + ": missing trailing newline");
    }
    std::vector<std::string> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (data[i] == '\r') throw FormatError(what + ": CR line endings are not accepted");
        if (data[i] == '\n') {
            lines.emplace_back(data, start, i - start);
            start = i + 1;
        }
    }
    return lines;
}

inline BigNat parse_minimal_hex(std::string_view text, const std::string& what) {
    if (text.empty()) throw FormatError(what + ": empty hex value");
    if (text.size() > 1 && text.front() == '0') throw FormatError(what + ": non-minimal hex value");
    for (char c : text) {
        const bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
        if (!ok) throw FormatError(what + ": invalid hex value");
    }
    return BigNat::from_hex(text);
}

inline std::uint64_t parse_minimal_decimal(std::string_view text, const std::string& what) {
    if (text.empty()) throw FormatError(what + ": empty decimal value");
    if (text.size() > 1 && text.front() == '0') throw FormatError(what + ": non-minimal decimal value");
    std::uint64_t value = 0;
    for (char c : text) {
        if (c < '0' || c > '9') throw FormatError(what + ": invalid decimal value");
        const std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
        if (value > (~std::uint64_t{0} - digit) / 10) throw FormatError(what + ": value too large");
        value = value * 10 + digit;
    }
    return value;
}

inline std::string_view expect_field(const std::string& line, std::string_view name,
                                     const std::string& what) {
    if (line.size() < name.size() + 1 || line.compare(0, name.size(), name) != 0 ||
        line[name.size()] != '=') {
        throw FormatError(what + ": expected '" + std::string(name) + "=' line");
    }
    return std::string_view(line).substr(name.size() + 1);
}

}  // namespace detail

// Writes content to a temporary file in the same directory, then renames it
// over the target, so a killed process never leaves a half-written file.
inline void atomic_write_file(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot rename into place: " + path.string());
    }
}

inline std::string format_public_key(const PublicKey& key) {
    return std::string(kPublicKeyHeader) + "\nn=" + key.n.to_hex() + "\ne=" + key.e.to_hex() + "\n";
}

inline std::string format_private_key(const PrivateKey& key) {
    return std::string(kPrivateKeyHeader) + "\nn=" + key.n.to_hex() + "\nd=" + key.d.to_hex() +
           "\np=" + key.p.to_hex() + "\nq=" + key.q.to_hex() + "\n";
}

inline std::string format_block_file(std::string_view header, const BlockFile& file) {
    std::string out = std::string(header) + "\nlen=" + std::to_string(file.original_len) +
                      "\nblocks=" + std::to_string(file.blocks.size()) + "\n";
    for (const BigNat& b : file.blocks) {
        out += b.to_hex();
        out += "\n";
    }
    return out;
}

inline void write_public_key(const std::filesystem::path& path, const PublicKey& key) {
    atomic_write_file(path, format_public_key(key));
}

inline void write_private_key(const std::filesystem::path& path, const PrivateKey& key) {
    atomic_write_file(path, format_private_key(key));
}

inline void write_block_file(const std::filesystem::path& path, std::string_view header,
                             const BlockFile& file) {
    atomic_write_file(path, format_block_file(header, file));
}

inline PublicKey parse_public_key(const std::string& data, const std::string& what) {
    const auto lines = detail::split_strict_lines(data, what);
    if (lines.size() != 3 || lines[0] != kPublicKeyHeader) {
        throw FormatError(what + ": not a " + std::string(kPublicKeyHeader) + " file");
    }
    PublicKey key;
    key.n = detail::parse_minimal_hex(detail::expect_field(lines[1], "n", what), what);
    key.e = detail::parse_minimal_hex(detail::expect_field(lines[2], "e", what), what);
    return key;
}

inline PublicKey read_public_key(const std::filesystem::path& path) {
    return parse_public_key(detail::read_file_bytes(path), path.string());
}

// Rebuilds the CRT fields from (p, q, d) and cross-checks n == p*q.
inline PrivateKey parse_private_key(const std::string& data, const std::string& what) {
    const auto lines = detail::split_strict_lines(data, what);
    if (lines.size() != 5 || lines[0] != kPrivateKeyHeader) {
        throw FormatError(what + ": not a " + std::string(kPrivateKeyHeader) + " file");
    }
    const BigNat n = detail::parse_minimal_hex(detail::expect_field(lines[1], "n", what), what);
    const BigNat d = detail::parse_minimal_hex(detail::expect_field(lines[2], "d", what), what);
    const BigNat p = detail::parse_minimal_hex(detail::expect_field(lines[3], "p", what), what);
    const BigNat q = detail::parse_minimal_hex(detail::expect_field(lines[4], "q", what), what);
    if (p * q != n) throw FormatError(what + ": n does not equal p*q");
    if (p == q) throw FormatError(what + ": p == q");
    try {
        return make_private_key(p, q, d);
    } catch (const Error& e) {
        // e.g. gcd(p, q) > 1 leaves q non-invertible mod p: the file does not
        // describe a usable key.
        throw FormatError(what + ": " + e.what());
    }
}

inline PrivateKey read_private_key(const std::filesystem::path& path) {
    return parse_private_key(detail::read_file_bytes(path), path.string());
}

inline BlockFile parse_block_file(const std::string& data, std::string_view header,
                                  const std::string& what) {
    const auto lines = detail::split_strict_lines(data, what);
    if (lines.size() < 3 || lines[0] != header) {
        throw FormatError(what + ": not a " + std::string(header) + " file");
    }
    BlockFile file;
    file.original_len = detail::parse_minimal_decimal(detail::expect_field(lines[1], "len", what), what);
    const std::uint64_t count =
        detail::parse_minimal_decimal(detail::expect_field(lines[2], "blocks", what), what);
    if (lines.size() != 3 + count) {
        throw FormatError(what + ": expected " + std::to_string(count) + " block line(s), found " +
                          std::to_string(lines.size() - 3));
    }
    file.blocks.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        file.blocks.push_back(detail::parse_minimal_hex(lines[3 + i], what));
    }
    return file;
}

inline BlockFile read_block_file(const std::filesystem::path& path, std::string_view header) {
    return parse_block_file(detail::read_file_bytes(path), header, path.string());
}

inline std::vector<std::uint8_t> read_raw_file(const std::filesystem::path& path) {
    const std::string data = detail::read_file_bytes(path);
    return {data.begin(), data.end()};
}

inline void write_raw_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    atomic_write_file(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

}  // namespace cryptkit
