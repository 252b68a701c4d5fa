#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cryptkit/errors.hpp"
#include "cryptkit/otp.hpp"
#include "cryptkit/random.hpp"
#include "cryptkit/rsa.hpp"

namespace cryptkit {

// Scripted insecure-channel scenarios: Alice sends, Bob receives, Oscar sits
// on the wire. Each scenario is a fixed protocol schedule driven entirely by
// the config (including its seed), so a transcript is reproducible
// byte for byte.

enum class Party { Alice, Bob, Oscar };

enum class EventKind {
    PublicKeyPublished,
    KeySentInClear,
    MessageSent,
    Intercepted,
    KeySubstituted,
    ReEncrypted,
    Delivered,
    AdversaryLearned,
};

struct ChannelEvent {
    std::uint32_t sequence_no = 0;  // strictly increasing from 1
    EventKind kind{};
    Party sender{};
    Party receiver{};
    std::string payload;  // printable rendering of what crossed the wire
};

// Keys used during the run, kept so tests can independently re-derive every
// ciphertext that appears in the event log.
struct TranscriptAudit {
    std::optional<KeyPair> bob_rsa;
    std::optional<KeyPair> oscar_rsa;
    std::vector<OtpKey> otp_keys;
};

struct Transcript {
    std::vector<ChannelEvent> events;
    std::vector<std::vector<std::uint8_t>> alice_sent;
    std::vector<std::vector<std::uint8_t>> bob_received;
    std::vector<std::vector<std::uint8_t>> oscar_learned;
    TranscriptAudit audit;
};

enum class Scenario { SymmetricPreshared, SymmetricKeyInTransit, AsymmetricExchange };
enum class AdversaryMode { Passive, Mitm };

struct ScenarioConfig {
    Scenario scenario = Scenario::AsymmetricExchange;
    AdversaryMode adversary = AdversaryMode::Passive;
    std::vector<std::vector<std::uint8_t>> messages;
    std::size_t key_bits = 128;
    std::uint64_t seed = 0;
};

inline const char* to_string(Party p) {
    switch (p) {
        case Party::Alice: return "Alice";
        case Party::Bob: return "Bob";
        default: return "Oscar";
    }
}

inline const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::PublicKeyPublished: return "PublicKeyPublished";
        case EventKind::KeySentInClear: return "KeySentInClear";
        case EventKind::MessageSent: return "MessageSent";
        case EventKind::Intercepted: return "Intercepted";
        case EventKind::KeySubstituted: return "KeySubstituted";
        case EventKind::ReEncrypted: return "ReEncrypted";
        case EventKind::Delivered: return "Delivered";
        default: return "AdversaryLearned";
    }
}

inline const char* to_string(Scenario s) {
    switch (s) {
        case Scenario::SymmetricPreshared: return "symmetric-preshared";
        case Scenario::SymmetricKeyInTransit: return "symmetric-key-in-transit";
        default: return "asymmetric-exchange";
    }
}

inline const char* to_string(AdversaryMode a) {
    return a == AdversaryMode::Passive ? "passive" : "mitm";
}

namespace detail {

inline std::string hex_of(std::span<const std::uint8_t> bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

inline std::string describe_plain(std::span<const std::uint8_t> bytes) {
    bool printable = !bytes.empty();
    for (std::uint8_t b : bytes) {
        if (b < 0x20 || b > 0x7e) printable = false;
    }
    std::string out = "plain=" + hex_of(bytes);
    if (printable) {
        out += " (\"";
        out.append(bytes.begin(), bytes.end());
        out += "\")";
    }
    return out;
}

inline std::string describe_pubkey(const PublicKey& k) {
    return "n=" + k.n.to_hex() + " e=" + k.e.to_hex();
}

inline std::string describe_ciphertext(std::size_t len, std::span<const BigNat> blocks) {
    std::string out = "len=" + std::to_string(len) + " ct=";
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i) out.push_back(' ');
        out += blocks[i].to_hex();
    }
    return out;
}

class ScenarioScript {
public:
    explicit ScenarioScript(const ScenarioConfig& config) : config_(config), rng_(config.seed) {}

    Transcript run() {
        switch (config_.scenario) {
            case Scenario::SymmetricPreshared: symmetric_preshared(); break;
            case Scenario::SymmetricKeyInTransit: symmetric_key_in_transit(); break;
            case Scenario::AsymmetricExchange:
                config_.adversary == AdversaryMode::Passive ? asymmetric_passive()
                                                            : asymmetric_mitm();
                break;
        }
        return std::move(transcript_);
    }

private:
    ScenarioConfig config_;
    SeededRng rng_;
    Transcript transcript_;
    std::uint32_t next_seq_ = 1;

    void emit(EventKind kind, Party from, Party to, std::string payload) {
        transcript_.events.push_back(ChannelEvent{next_seq_++, kind, from, to, std::move(payload)});
    }

    // Alice and Bob already share pad keys; Oscar only ever sees ciphertext.
    void symmetric_preshared() {
        for (const auto& msg : config_.messages) {
            const OtpKey key = gen_otp_key(msg.size(), rng_);
            transcript_.audit.otp_keys.push_back(key);
            const auto ct = otp_apply(msg, key);
            transcript_.alice_sent.push_back(msg);
            emit(EventKind::MessageSent, Party::Alice, Party::Bob, "ct=" + hex_of(ct));
            emit(EventKind::Intercepted, Party::Alice, Party::Oscar, "ct=" + hex_of(ct));
            const auto plain = otp_apply(ct, key);
            transcript_.bob_received.push_back(plain);
            emit(EventKind::Delivered, Party::Alice, Party::Bob, describe_plain(plain));
        }
    }

    // The pad key itself crosses the channel in clear before use, so Oscar
    // copies it and reads everything that follows.
    void symmetric_key_in_transit() {
        std::size_t total = 0;
        for (const auto& msg : config_.messages) total += msg.size();
        const OtpKey key = gen_otp_key(total, rng_);
        transcript_.audit.otp_keys.push_back(key);
        emit(EventKind::KeySentInClear, Party::Alice, Party::Bob, "otp-key=" + hex_of(key.bytes));
        emit(EventKind::Intercepted, Party::Alice, Party::Oscar, "otp-key=" + hex_of(key.bytes));

        std::size_t offset = 0;
        for (const auto& msg : config_.messages) {
            OtpKey segment{{key.bytes.begin() + offset, key.bytes.begin() + offset + msg.size()}};
            offset += msg.size();
            const auto ct = otp_apply(msg, segment);
            transcript_.alice_sent.push_back(msg);
            emit(EventKind::MessageSent, Party::Alice, Party::Bob, "ct=" + hex_of(ct));
            emit(EventKind::Intercepted, Party::Alice, Party::Oscar, "ct=" + hex_of(ct));
            const auto oscar_plain = otp_apply(ct, segment);
            transcript_.oscar_learned.push_back(oscar_plain);
            emit(EventKind::AdversaryLearned, Party::Oscar, Party::Oscar, describe_plain(oscar_plain));
            const auto plain = otp_apply(ct, segment);
            transcript_.bob_received.push_back(plain);
            emit(EventKind::Delivered, Party::Alice, Party::Bob, describe_plain(plain));
        }
    }

    std::vector<BigNat> rsa_encrypt(std::span<const std::uint8_t> msg, const PublicKey& key) {
        std::vector<BigNat> blocks = encode_message(msg, key.n);
        for (auto& b : blocks) b = encrypt_block(b, key);
        return blocks;
    }

    std::vector<std::uint8_t> rsa_decrypt(std::span<const BigNat> ct, std::size_t len,
                                          const PrivateKey& key) {
        std::vector<BigNat> blocks(ct.begin(), ct.end());
        for (auto& b : blocks) b = decrypt_block(b, key);
        return decode_message(blocks, key.n, len);
    }

    void asymmetric_passive() {
        const KeyPair bob = generate_keypair(config_.key_bits, rng_);
        transcript_.audit.bob_rsa = bob;
        emit(EventKind::PublicKeyPublished, Party::Bob, Party::Alice, describe_pubkey(bob.pub));
        emit(EventKind::Intercepted, Party::Bob, Party::Oscar, describe_pubkey(bob.pub));

        for (const auto& msg : config_.messages) {
            const auto ct = rsa_encrypt(msg, bob.pub);
            transcript_.alice_sent.push_back(msg);
            emit(EventKind::MessageSent, Party::Alice, Party::Bob, describe_ciphertext(msg.size(), ct));
            emit(EventKind::Intercepted, Party::Alice, Party::Oscar, describe_ciphertext(msg.size(), ct));
            const auto plain = rsa_decrypt(ct, msg.size(), bob.priv);
            transcript_.bob_received.push_back(plain);
            emit(EventKind::Delivered, Party::Alice, Party::Bob, describe_plain(plain));
        }
    }

    // Oscar swaps in his own public key (same bit length, so size gives
    // nothing away), reads every message, and re-encrypts under Bob's true
    // key so neither endpoint notices.
    void asymmetric_mitm() {
        const KeyPair bob = generate_keypair(config_.key_bits, rng_);
        const KeyPair oscar = generate_keypair(config_.key_bits, rng_);
        transcript_.audit.bob_rsa = bob;
        transcript_.audit.oscar_rsa = oscar;

        emit(EventKind::PublicKeyPublished, Party::Bob, Party::Alice, describe_pubkey(bob.pub));
        emit(EventKind::Intercepted, Party::Bob, Party::Oscar, describe_pubkey(bob.pub));
        emit(EventKind::KeySubstituted, Party::Oscar, Party::Alice, describe_pubkey(oscar.pub));

        for (const auto& msg : config_.messages) {
            // Alice believes Oscar's key is Bob's.
            const auto ct_to_oscar = rsa_encrypt(msg, oscar.pub);
            transcript_.alice_sent.push_back(msg);
            emit(EventKind::MessageSent, Party::Alice, Party::Bob,
                 describe_ciphertext(msg.size(), ct_to_oscar));
            emit(EventKind::Intercepted, Party::Alice, Party::Oscar,
                 describe_ciphertext(msg.size(), ct_to_oscar));

            const auto oscar_plain = rsa_decrypt(ct_to_oscar, msg.size(), oscar.priv);
            transcript_.oscar_learned.push_back(oscar_plain);
            emit(EventKind::AdversaryLearned, Party::Oscar, Party::Oscar, describe_plain(oscar_plain));

            const auto ct_to_bob = rsa_encrypt(oscar_plain, bob.pub);
            emit(EventKind::ReEncrypted, Party::Oscar, Party::Bob,
                 describe_ciphertext(oscar_plain.size(), ct_to_bob));

            const auto plain = rsa_decrypt(ct_to_bob, oscar_plain.size(), bob.priv);
            transcript_.bob_received.push_back(plain);
            emit(EventKind::Delivered, Party::Alice, Party::Bob, describe_plain(plain));
        }
    }
};

}  // namespace detail

// Runs one scripted scenario. Throws InvalidConfig when the combination is
// meaningless: key substitution needs a public-key exchange to subvert, and
// RSA scenarios need key_bits >= 16.
inline Transcript run_scenario(const ScenarioConfig& config) {
    if (config.adversary == AdversaryMode::Mitm && config.scenario != Scenario::AsymmetricExchange) {
        throw InvalidConfig("run_scenario: a MitM adversary requires the asymmetric-exchange scenario");
    }
    if (config.key_bits < 16) throw InvalidConfig("run_scenario: key_bits must be >= 16");
    return detail::ScenarioScript(config).run();
}

// One line per event, stable across runs for equal transcripts.
inline std::string render_transcript(const Transcript& t) {
    std::string out = "=== channel transcript: " + std::to_string(t.events.size()) + " event(s) ===\n";
    for (const ChannelEvent& ev : t.events) {
        std::string line = std::to_string(ev.sequence_no);
        if (line.size() < 3) line.insert(0, 3 - line.size(), ' ');
        line += ". ";
        std::string kind = to_string(ev.kind);
        kind.resize(18, ' ');
        line += kind;
        line += " ";
        line += to_string(ev.sender);
        line += " -> ";
        line += to_string(ev.receiver);
        line += "  ";
        line += ev.payload;
        line += "\n";
        out += line;
    }
    return out;
}

}  // namespace cryptkit
