// cryptkit: educational RSA / one-time-pad toolkit.
//
// Exit codes: 0 success, 1 negative-but-valid result (invalid signature,
// factoring/crack gave up), 2 usage or precondition error, 3 file-format or
// filesystem error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cryptkit/cryptkit.hpp"

namespace fs = std::filesystem;
using namespace cryptkit;

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFile = 3;

constexpr const char* kTextbookWarning =
    "warning: textbook RSA (no padding) is deterministic and not semantically "
    "secure; this is an educational toolkit";

// Usage errors for missing input files, format/IO errors otherwise: a path
// that is not there is the caller's mistake, a file that is there but wrong
// is a data problem.
void require_input_file(const fs::path& path) {
    if (!fs::exists(path)) {
        throw std::invalid_argument("input file does not exist: " + path.string());
    }
}

std::unique_ptr<RandomSource> make_rng(const std::optional<std::uint64_t>& seed) {
    if (seed) return std::make_unique<SeededRng>(*seed);
    return std::make_unique<SystemRng>();
}

std::chrono::milliseconds seconds_to_budget(double seconds) {
    return std::chrono::milliseconds(static_cast<std::int64_t>(seconds * 1000.0));
}

struct KeygenArgs {
    std::size_t bits = 1024;
    std::string out_prefix;
    std::uint64_t e = kDefaultPublicExponent;
    std::optional<std::uint64_t> seed;
    bool insecure = false;
};

int cmd_keygen(const KeygenArgs& args) {
    if (args.bits < 512 && !args.insecure) {
        std::cerr << "error: " << args.bits << "-bit keys are trivially breakable; pass --insecure "
                  << "to generate one anyway (library floor: 16 bits)\n";
        return kExitUsage;
    }
    std::cerr << kTextbookWarning << "\n";
    auto rng = make_rng(args.seed);
    const KeyPair kp = generate_keypair(args.bits, *rng, BigNat(args.e));
    write_public_key(args.out_prefix + ".pub", kp.pub);
    write_private_key(args.out_prefix + ".priv", kp.priv);
    std::cout << "wrote " << args.out_prefix << ".pub and " << args.out_prefix << ".priv ("
              << args.bits << "-bit modulus, e=" << kp.pub.e.to_decimal() << ")\n";
    return kExitSuccess;
}

struct CryptArgs {
    std::string key_path;
    std::string in_path;
    std::string out_path;
    bool no_crt = false;
};

int cmd_encrypt(const CryptArgs& args) {
    std::cerr << kTextbookWarning << "\n";
    require_input_file(args.key_path);
    require_input_file(args.in_path);
    const PublicKey pub = read_public_key(args.key_path);
    const std::vector<std::uint8_t> data = read_raw_file(args.in_path);

    BlockFile file;
    file.original_len = data.size();
    file.blocks = encode_message(data, pub.n);
    for (auto& b : file.blocks) b = encrypt_block(b, pub);
    write_block_file(args.out_path, kCiphertextHeader, file);
    std::cout << "encrypted " << data.size() << " byte(s) into " << file.blocks.size()
              << " block(s)\n";
    return kExitSuccess;
}

int cmd_decrypt(const CryptArgs& args) {
    std::cerr << kTextbookWarning << "\n";
    require_input_file(args.key_path);
    require_input_file(args.in_path);
    const PrivateKey priv = read_private_key(args.key_path);
    BlockFile file = read_block_file(args.in_path, kCiphertextHeader);

    // Decode errors on a parsed file mean the file is inconsistent, so they
    // map to the file-format exit code below.
    try {
        for (auto& b : file.blocks) b = decrypt_block(b, priv, !args.no_crt);
        const auto data = decode_message(file.blocks, priv.n, file.original_len);
        write_raw_file(args.out_path, data);
        std::cout << "decrypted " << file.blocks.size() << " block(s) into " << data.size()
                  << " byte(s)\n";
    } catch (const MessageTooLarge& e) {
        throw FormatError(std::string("ciphertext inconsistent with key: ") + e.what());
    } catch (const BlockOutOfRange& e) {
        throw FormatError(std::string("ciphertext inconsistent with key: ") + e.what());
    } catch (const LengthMismatch& e) {
        throw FormatError(std::string("ciphertext inconsistent with key: ") + e.what());
    }
    return kExitSuccess;
}

struct SignArgs {
    std::string key_path;
    std::string in_path;
    std::string sig_path;
};

int cmd_sign(const SignArgs& args) {
    std::cerr << kTextbookWarning << "\n";
    require_input_file(args.key_path);
    require_input_file(args.in_path);
    const PrivateKey priv = read_private_key(args.key_path);
    const std::vector<std::uint8_t> data = read_raw_file(args.in_path);

    BlockFile file;
    file.original_len = data.size();
    file.blocks = encode_message(data, priv.n);
    for (auto& b : file.blocks) b = sign_block(b, priv);
    write_block_file(args.sig_path, kSignatureHeader, file);
    std::cout << "signed " << data.size() << " byte(s)\n";
    return kExitSuccess;
}

int cmd_verify(const SignArgs& args) {
    std::cerr << kTextbookWarning << "\n";
    require_input_file(args.key_path);
    require_input_file(args.in_path);
    require_input_file(args.sig_path);
    const PublicKey pub = read_public_key(args.key_path);
    const std::vector<std::uint8_t> data = read_raw_file(args.in_path);
    const BlockFile sig = read_block_file(args.sig_path, kSignatureHeader);

    const std::vector<BigNat> blocks = encode_message(data, pub.n);
    bool valid = sig.original_len == data.size() && sig.blocks.size() == blocks.size();
    for (std::size_t i = 0; valid && i < blocks.size(); ++i) {
        if (sig.blocks[i] >= pub.n || !verify_block(blocks[i], sig.blocks[i], pub)) valid = false;
    }
    if (!valid) {
        std::cout << "signature INVALID\n";
        return kExitNegative;
    }
    std::cout << "signature valid\n";
    return kExitSuccess;
}

struct OtpKeygenArgs {
    std::size_t len = 0;
    std::string out_path;
    std::optional<std::uint64_t> seed;
};

int cmd_otp_keygen(const OtpKeygenArgs& args) {
    auto rng = make_rng(args.seed);
    const OtpKey key = gen_otp_key(args.len, *rng);
    write_raw_file(args.out_path, key.bytes);
    std::cout << "wrote " << args.len << " key byte(s) to " << args.out_path << "\n";
    return kExitSuccess;
}

struct OtpApplyArgs {
    std::string key_path;
    std::string in_path;
    std::string out_path;
    bool keep_key = false;
};

int cmd_otp_apply(const OtpApplyArgs& args) {
    require_input_file(args.key_path);
    require_input_file(args.in_path);
    const OtpKey key{read_raw_file(args.key_path)};
    const std::vector<std::uint8_t> data = read_raw_file(args.in_path);
    if (key.bytes.size() < data.size()) {
        std::cerr << "error: key (" << key.bytes.size() << " bytes) is shorter than the input ("
                  << data.size() << " bytes); a one-time pad needs a key at least as long as the "
                  << "message\n";
        return kExitUsage;
    }
    write_raw_file(args.out_path, otp_apply(data, key));
    if (!args.keep_key) {
        // One-time means one time: consume the key unless told otherwise.
        std::error_code ec;
        fs::remove(args.key_path, ec);
        if (ec) throw IoError("could not delete used key " + args.key_path);
        std::cout << "applied pad; deleted key " << args.key_path << " (use --keep-key to retain)\n";
    } else {
        std::cout << "applied pad; key retained\n";
    }
    return kExitSuccess;
}

struct FactorArgs {
    std::string n_decimal;
    std::string method = "auto";
    double timeout_seconds = 10.0;
    std::uint64_t trial_bound = 1000000;
    std::optional<std::uint64_t> seed;
};

int cmd_factor(const FactorArgs& args) {
    const BigNat n = BigNat::from_decimal(args.n_decimal);
    if (n < BigNat(2)) throw std::invalid_argument("factor: n must be >= 2");
    auto rng = make_rng(args.seed);
    const auto deadline = std::chrono::steady_clock::now() + seconds_to_budget(args.timeout_seconds);

    std::optional<BigNat> factor;
    if (args.method == "trial" || args.method == "auto") {
        factor = trial_division(n, BigNat(args.trial_bound));
    }
    if (!factor && (args.method == "rho" || args.method == "auto")) {
        SeededRng primality_rng(1);
        if (!is_probable_prime(n, primality_rng)) {
            while (!factor && std::chrono::steady_clock::now() < deadline) {
                factor = pollard_rho(n, *rng, 1 << 16);
            }
        }
    }
    if (!factor) {
        std::cerr << "no factor found\n";
        return kExitNegative;
    }
    BigNat p = *factor, q = n / *factor;
    if (p > q) std::swap(p, q);
    std::cout << p.to_decimal() << " " << q.to_decimal() << "\n";
    return kExitSuccess;
}

struct CrackArgs {
    std::string pub_path;
    std::string out_path;
    double timeout_seconds = 10.0;
    std::optional<std::uint64_t> seed;
};

int cmd_crack(const CrackArgs& args) {
    std::cerr << kTextbookWarning << "\n";
    require_input_file(args.pub_path);
    const PublicKey pub = read_public_key(args.pub_path);
    auto rng = make_rng(args.seed);
    auto priv = crack(pub, *rng, seconds_to_budget(args.timeout_seconds));
    if (!priv) {
        std::cerr << "crack failed: budget exhausted without factoring the modulus\n";
        return kExitNegative;
    }
    write_private_key(args.out_path, *priv);
    std::cout << "recovered private key: p=" << priv->p.to_decimal()
              << " q=" << priv->q.to_decimal() << " -> " << args.out_path << "\n";
    return kExitSuccess;
}

struct SimulateArgs {
    std::string scenario = "asymmetric-exchange";
    std::string adversary = "passive";
    std::vector<std::string> messages;
    std::size_t bits = 128;
    std::optional<std::uint64_t> seed;
};

int cmd_simulate(const SimulateArgs& args) {
    ScenarioConfig config;
    if (args.scenario == "symmetric-preshared") config.scenario = Scenario::SymmetricPreshared;
    else if (args.scenario == "symmetric-key-in-transit") config.scenario = Scenario::SymmetricKeyInTransit;
    else if (args.scenario == "asymmetric-exchange") config.scenario = Scenario::AsymmetricExchange;
    else throw std::invalid_argument("unknown scenario: " + args.scenario);

    if (args.adversary == "passive") config.adversary = AdversaryMode::Passive;
    else if (args.adversary == "mitm") config.adversary = AdversaryMode::Mitm;
    else throw std::invalid_argument("unknown adversary: " + args.adversary);

    for (const auto& m : args.messages) config.messages.emplace_back(m.begin(), m.end());
    config.key_bits = args.bits;
    config.seed = args.seed ? *args.seed : SystemRng().next_u64();

    std::cout << render_transcript(run_scenario(config));
    return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cryptkit: from-scratch RSA and one-time-pad toolkit with desk-scale attacks"};
    app.require_subcommand(1);

    KeygenArgs keygen_args;
    auto* keygen = app.add_subcommand("keygen", "Generate an RSA key pair");
    keygen->add_option("--bits", keygen_args.bits, "Modulus size in bits (default 1024)");
    keygen->add_option("--out-prefix", keygen_args.out_prefix, "Writes <prefix>.pub and <prefix>.priv")
        ->required();
    keygen->add_option("--e", keygen_args.e, "Preferred public exponent (odd, >= 3)");
    keygen->add_option("--seed", keygen_args.seed, "Deterministic randomness for reproducible keys");
    keygen->add_flag("--insecure", keygen_args.insecure, "Allow key sizes below 512 bits");

    CryptArgs encrypt_args;
    auto* encrypt = app.add_subcommand("encrypt", "Encrypt a file under a public key");
    encrypt->add_option("--key", encrypt_args.key_path, "Public key file (.pub)")->required();
    encrypt->add_option("--in", encrypt_args.in_path, "Plaintext input")->required();
    encrypt->add_option("--out", encrypt_args.out_path, "Ciphertext output")->required();

    CryptArgs decrypt_args;
    auto* decrypt = app.add_subcommand("decrypt", "Decrypt a ciphertext file with a private key");
    decrypt->add_option("--key", decrypt_args.key_path, "Private key file (.priv)")->required();
    decrypt->add_option("--in", decrypt_args.in_path, "Ciphertext input")->required();
    decrypt->add_option("--out", decrypt_args.out_path, "Plaintext output")->required();
    decrypt->add_flag("--no-crt", decrypt_args.no_crt, "Exponentiate mod n directly instead of via CRT");

    SignArgs sign_args;
    auto* sign = app.add_subcommand("sign", "Sign a file with a private key");
    sign->add_option("--key", sign_args.key_path, "Private key file (.priv)")->required();
    sign->add_option("--in", sign_args.in_path, "File to sign")->required();
    sign->add_option("--sig", sign_args.sig_path, "Signature output")->required();

    SignArgs verify_args;
    auto* verify = app.add_subcommand("verify", "Verify a signature against a public key");
    verify->add_option("--key", verify_args.key_path, "Public key file (.pub)")->required();
    verify->add_option("--in", verify_args.in_path, "Signed file")->required();
    verify->add_option("--sig", verify_args.sig_path, "Signature file")->required();

    auto* otp = app.add_subcommand("otp", "One-time pad operations");
    otp->require_subcommand(1);

    OtpKeygenArgs otp_keygen_args;
    auto* otp_keygen = otp->add_subcommand("keygen", "Write random pad key bytes");
    otp_keygen->add_option("--len", otp_keygen_args.len, "Key length in bytes")->required();
    otp_keygen->add_option("--out", otp_keygen_args.out_path, "Key file (raw bytes)")->required();
    otp_keygen->add_option("--seed", otp_keygen_args.seed, "Deterministic randomness");

    OtpApplyArgs otp_apply_args;
    auto* otp_apply_cmd = otp->add_subcommand("apply", "XOR a file with a pad key (self-inverse)");
    otp_apply_cmd->add_option("--key", otp_apply_args.key_path, "Pad key file")->required();
    otp_apply_cmd->add_option("--in", otp_apply_args.in_path, "Input file")->required();
    otp_apply_cmd->add_option("--out", otp_apply_args.out_path, "Output file")->required();
    otp_apply_cmd->add_flag("--keep-key", otp_apply_args.keep_key,
                            "Do not delete the key file after use");

    FactorArgs factor_args;
    auto* factor = app.add_subcommand("factor", "Factor an integer (trial division + Pollard rho)");
    factor->add_option("n", factor_args.n_decimal, "Integer to factor, decimal")->required();
    factor->add_option("--method", factor_args.method, "auto | trial | rho")
        ->check(CLI::IsMember({"auto", "trial", "rho"}));
    factor->add_option("--timeout", factor_args.timeout_seconds, "Budget in seconds");
    factor->add_option("--trial-bound", factor_args.trial_bound, "Trial division bound");
    factor->add_option("--seed", factor_args.seed, "Deterministic randomness");

    CrackArgs crack_args;
    auto* crack_cmd = app.add_subcommand("crack", "Recover a private key from a public key file");
    crack_cmd->add_option("--key", crack_args.pub_path, "Public key file (.pub)")->required();
    crack_cmd->add_option("--out", crack_args.out_path, "Recovered private key output")->required();
    crack_cmd->add_option("--timeout", crack_args.timeout_seconds, "Budget in seconds");
    crack_cmd->add_option("--seed", crack_args.seed, "Deterministic randomness");

    SimulateArgs simulate_args;
    auto* simulate = app.add_subcommand("simulate", "Run an Alice/Bob/Oscar channel scenario");
    simulate->add_option("--scenario", simulate_args.scenario,
                         "symmetric-preshared | symmetric-key-in-transit | asymmetric-exchange");
    simulate->add_option("--adversary", simulate_args.adversary, "passive | mitm");
    simulate->add_option("--message", simulate_args.messages, "Message text (repeatable)");
    simulate->add_option("--bits", simulate_args.bits, "RSA modulus size for asymmetric scenarios");
    simulate->add_option("--seed", simulate_args.seed, "Deterministic scenario randomness");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exits 0
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(keygen)) return cmd_keygen(keygen_args);
        if (app.got_subcommand(encrypt)) return cmd_encrypt(encrypt_args);
        if (app.got_subcommand(decrypt)) return cmd_decrypt(decrypt_args);
        if (app.got_subcommand(sign)) return cmd_sign(sign_args);
        if (app.got_subcommand(verify)) return cmd_verify(verify_args);
        if (app.got_subcommand(otp)) {
            if (otp->got_subcommand(otp_keygen)) return cmd_otp_keygen(otp_keygen_args);
            return cmd_otp_apply(otp_apply_args);
        }
        if (app.got_subcommand(factor)) return cmd_factor(factor_args);
        if (app.got_subcommand(crack_cmd)) return cmd_crack(crack_args);
        if (app.got_subcommand(simulate)) return cmd_simulate(simulate_args);
        std::cerr << "usage error: no subcommand\n";
        return kExitUsage;
    } catch (const FormatError& e) {
        std::cerr << "file format error: " << e.what() << "\n";
        return kExitFile;
    } catch (const IoError& e) {
        std::cerr << "file error: " << e.what() << "\n";
        return kExitFile;
    } catch (const InvalidConfig& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
