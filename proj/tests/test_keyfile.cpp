#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <string>

#include "cryptkit/keyfile.hpp"

using namespace cryptkit;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("cryptkit-keyfile-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
    static int& counter() { static int c = 0; return c; }
};

KeyPair fixture_keypair() { return keypair_from_primes(BigNat(61), BigNat(53), BigNat(17)); }

}  // namespace

TEST_CASE("public key file is bit-exact") {
    const KeyPair kp = fixture_keypair();
    CHECK(format_public_key(kp.pub) == "CRYPTKIT-PUBLIC-V1\nn=ca1\ne=11\n");
}

TEST_CASE("private key file is bit-exact") {
    const KeyPair kp = fixture_keypair();
    CHECK(format_private_key(kp.priv) == "CRYPTKIT-PRIVATE-V1\nn=ca1\nd=ac1\np=3d\nq=35\n");
}

TEST_CASE("ciphertext file is bit-exact") {
    BlockFile file;
    file.original_len = 2;
    file.blocks = {BigNat(2790), BigNat(0)};
    CHECK(format_block_file(kCiphertextHeader, file) ==
          "CRYPTKIT-CT-V1\nlen=2\nblocks=2\nae6\n0\n");
}

TEST_CASE("write and read round trips") {
    TempDir dir;
    const KeyPair kp = fixture_keypair();

    write_public_key(dir.path / "k.pub", kp.pub);
    CHECK(read_public_key(dir.path / "k.pub") == kp.pub);

    write_private_key(dir.path / "k.priv", kp.priv);
    CHECK(read_private_key(dir.path / "k.priv") == kp.priv);

    BlockFile file;
    file.original_len = 5;
    file.blocks = {BigNat(1), BigNat(2790), BigNat(0), BigNat(3232), BigNat(17)};
    write_block_file(dir.path / "m.ct", kCiphertextHeader, file);
    const BlockFile back = read_block_file(dir.path / "m.ct", kCiphertextHeader);
    CHECK(back.original_len == file.original_len);
    CHECK(back.blocks == file.blocks);

    // No temp file left behind.
    CHECK_FALSE(fs::exists(dir.path / "k.pub.tmp"));
}

TEST_CASE("round trip at 512 bits") {
    TempDir dir;
    SeededRng rng(4001);
    const KeyPair kp = generate_keypair(512, rng);
    write_private_key(dir.path / "big.priv", kp.priv);
    const PrivateKey back = read_private_key(dir.path / "big.priv");
    CHECK(back == kp.priv);  // CRT fields recomputed on load must match
}

TEST_CASE("parser rejects malformed public keys") {
    const std::string good = "CRYPTKIT-PUBLIC-V1\nn=ca1\ne=11\n";
    CHECK(parse_public_key(good, "t").n == BigNat(3233));

    // Wrong header.
    CHECK_THROWS_AS(parse_public_key("CRYPTKIT-PUBLIC-V2\nn=ca1\ne=11\n", "t"), FormatError);
    // Unknown trailing line.
    CHECK_THROWS_AS(parse_public_key(good + "extra=1\n", "t"), FormatError);
    // Missing trailing newline.
    CHECK_THROWS_AS(parse_public_key("CRYPTKIT-PUBLIC-V1\nn=ca1\ne=11", "t"), FormatError);
    // CRLF endings.
    CHECK_THROWS_AS(parse_public_key("CRYPTKIT-PUBLIC-V1\r\nn=ca1\r\ne=11\r\n", "t"), FormatError);
    // Wrong field order.
    CHECK_THROWS_AS(parse_public_key("CRYPTKIT-PUBLIC-V1\ne=11\nn=ca1\n", "t"), FormatError);
    // Uppercase or prefixed hex.
    CHECK_THROWS_AS(parse_public_key("CRYPTKIT-PUBLIC-V1\nn=CA1\ne=11\n", "t"), FormatError);
    CHECK_THROWS_AS(parse_public_key("CRYPTKIT-PUBLIC-V1\nn=0xca1\ne=11\n", "t"), FormatError);
    // Non-minimal hex.
    CHECK_THROWS_AS(parse_public_key("CRYPTKIT-PUBLIC-V1\nn=0ca1\ne=11\n", "t"), FormatError);
    // Empty value.
    CHECK_THROWS_AS(parse_public_key("CRYPTKIT-PUBLIC-V1\nn=\ne=11\n", "t"), FormatError);
    // Truncated.
    CHECK_THROWS_AS(parse_public_key("CRYPTKIT-PUBLIC-V1\nn=ca1\n", "t"), FormatError);
}

TEST_CASE("parser rejects malformed private keys") {
    const std::string good = "CRYPTKIT-PRIVATE-V1\nn=ca1\nd=ac1\np=3d\nq=35\n";
    CHECK(parse_private_key(good, "t").d == BigNat(2753));

    // n != p*q.
    CHECK_THROWS_AS(parse_private_key("CRYPTKIT-PRIVATE-V1\nn=ca2\nd=ac1\np=3d\nq=35\n", "t"),
                    FormatError);
    // p == q.
    CHECK_THROWS_AS(parse_private_key("CRYPTKIT-PRIVATE-V1\nn=e89\nd=ac1\np=3d\nq=3d\n", "t"),
                    FormatError);
    // Public header on a private parse.
    CHECK_THROWS_AS(parse_private_key("CRYPTKIT-PUBLIC-V1\nn=ca1\ne=11\n", "t"), FormatError);
    // p*q == n but gcd(p, q) > 1: no CRT inverse exists, still a format error.
    CHECK_THROWS_AS(parse_private_key("CRYPTKIT-PRIVATE-V1\nn=18\nd=1\np=4\nq=6\n", "t"),
                    FormatError);
}

TEST_CASE("parser rejects malformed block files") {
    const std::string good = "CRYPTKIT-CT-V1\nlen=2\nblocks=2\nae6\n0\n";
    CHECK(parse_block_file(good, kCiphertextHeader, "t").blocks.size() == 2);

    // Truncated block list.
    CHECK_THROWS_AS(parse_block_file("CRYPTKIT-CT-V1\nlen=2\nblocks=2\nae6\n", kCiphertextHeader, "t"),
                    FormatError);
    // Extra block line.
    CHECK_THROWS_AS(parse_block_file(good + "5\n", kCiphertextHeader, "t"), FormatError);
    // Signature header is not a ciphertext header.
    CHECK_THROWS_AS(parse_block_file("CRYPTKIT-SIG-V1\nlen=2\nblocks=2\nae6\n0\n",
                                     kCiphertextHeader, "t"),
                    FormatError);
    CHECK(parse_block_file("CRYPTKIT-SIG-V1\nlen=2\nblocks=2\nae6\n0\n", kSignatureHeader, "t")
              .original_len == 2);
    // Non-minimal decimal.
    CHECK_THROWS_AS(parse_block_file("CRYPTKIT-CT-V1\nlen=02\nblocks=2\nae6\n0\n",
                                     kCiphertextHeader, "t"),
                    FormatError);
    // Garbage decimal.
    CHECK_THROWS_AS(parse_block_file("CRYPTKIT-CT-V1\nlen=2x\nblocks=2\nae6\n0\n",
                                     kCiphertextHeader, "t"),
                    FormatError);
    // Empty file.
    CHECK_THROWS_AS(parse_block_file("", kCiphertextHeader, "t"), FormatError);
}

TEST_CASE("io errors") {
    CHECK_THROWS_AS(read_public_key("/nonexistent-dir/k.pub"), IoError);
    const KeyPair kp = fixture_keypair();
    CHECK_THROWS_AS(write_public_key("/nonexistent-dir/k.pub", kp.pub), IoError);
}

TEST_CASE("raw byte files") {
    TempDir dir;
    const std::vector<std::uint8_t> key{0x00, 0xff, 0x10, 0x80};
    write_raw_file(dir.path / "pad.key", key);
    CHECK(read_raw_file(dir.path / "pad.key") == key);
    write_raw_file(dir.path / "empty.key", std::vector<std::uint8_t>{});
    CHECK(read_raw_file(dir.path / "empty.key").empty());
}
