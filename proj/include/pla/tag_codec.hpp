#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <openssl/core_names.h>
#include <openssl/evp.h>

#include "pla/bits.hpp"
#include "pla/errors.hpp"
#include "pla/params.hpp"
#include "pla/rng.hpp"

namespace pla {

// Largest key length for which exhaustive key-space operations are allowed.
inline constexpr int kEnumerableKeyBits = 24;

// The tag map tau: (message, key) -> tag. Implementations must be
// deterministic and emit exactly params().l_t bits.
class TagFunction {
public:
    virtual ~TagFunction() = default;
    virtual const SystemParams& params() const = 0;
    virtual Tag encode(const Message& s, const Key& k) const = 0;
    virtual std::string name() const = 0;

    bool enumerable() const { return params().l_k <= kEnumerableKeyBits; }

protected:
    void check_lengths(const Message& s, const Key& k) const {
        if (static_cast<int>(s.bits.size()) != params().l_s)
            throw parameter_error("encode: message length does not match params");
        if (static_cast<int>(k.bits.size()) != params().l_k)
            throw parameter_error("encode: key length does not match params");
    }
};

inline std::uint64_t fnv1a64(const std::vector<std::uint8_t>& data) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (auto b : data) {
        h ^= b;
        h *= 0x100000001B3ULL;
    }
    return h;
}

// Ideal random-codebook model, enumerable by construction (l_k <= 24).
//
// Derivation, byte for byte:
//   input  = be64(seed) || canonical_bytes(s) || canonical_bytes(k)
//            (canonical_bytes = be64 bit length, then MSB-first packed bits)
//   digest = FNV-1a 64 over input
//   word_j = mix64(digest + (j + 1) * 0x9E3779B97F4A7C15),  j = 0, 1, ...
//   tag    = first l_t bits of word_0 || word_1 || ..., each word MSB-first.
class SeededRandomCodebook final : public TagFunction {
public:
    SeededRandomCodebook(std::uint64_t seed, SystemParams params)
        : seed_(seed), params_(std::move(params)) {
        params_.validate();
        if (params_.l_k > kEnumerableKeyBits)
            throw capability_error("SeededRandomCodebook: l_k exceeds the enumerable cap");
    }

    const SystemParams& params() const override { return params_; }
    std::uint64_t seed() const { return seed_; }
    std::string name() const override { return "seeded_codebook"; }

    Tag encode(const Message& s, const Key& k) const override {
        check_lengths(s, k);
        std::vector<std::uint8_t> input;
        append_be64(input, seed_);
        auto cs = canonical_bytes(s.bits);
        input.insert(input.end(), cs.begin(), cs.end());
        auto ck = canonical_bytes(k.bits);
        input.insert(input.end(), ck.begin(), ck.end());
        const std::uint64_t digest = fnv1a64(input);

        Tag t;
        t.bits.resize(params_.l_t);
        for (int i = 0; i < params_.l_t; ++i) {
            std::uint64_t word = mix64(digest + (static_cast<std::uint64_t>(i / 64) + 1) * kGolden);
            t.bits[i] = (word >> (63 - i % 64)) & 1u;
        }
        return t;
    }

private:
    std::uint64_t seed_;
    SystemParams params_;
};

// Keyed cryptographic hash tag: the first l_t bits of
//   HMAC-SHA256(key = canonical_bytes(k), data = canonical_bytes(s) || be32(block))
// for block = 0, 1, ... concatenated until l_t bits are available.
class KeyedHash final : public TagFunction {
public:
    explicit KeyedHash(SystemParams params) : params_(std::move(params)) { params_.validate(); }

    const SystemParams& params() const override { return params_; }
    std::string name() const override { return "keyed_hash"; }

    Tag encode(const Message& s, const Key& k) const override {
        check_lengths(s, k);
        const auto key_bytes = canonical_bytes(k.bits);
        const auto msg_bytes = canonical_bytes(s.bits);

        Tag t;
        t.bits.resize(params_.l_t);
        int produced = 0;
        for (std::uint32_t block = 0; produced < params_.l_t; ++block) {
            std::vector<std::uint8_t> data = msg_bytes;
            for (int i = 3; i >= 0; --i) data.push_back(static_cast<std::uint8_t>(block >> (8 * i)));
            auto mac = hmac_sha256(key_bytes, data);
            for (std::size_t i = 0; i < mac.size() * 8 && produced < params_.l_t; ++i, ++produced)
                t.bits[produced] = (mac[i / 8] >> (7 - i % 8)) & 1u;
        }
        return t;
    }

private:
    static std::vector<std::uint8_t> hmac_sha256(const std::vector<std::uint8_t>& key,
                                                 const std::vector<std::uint8_t>& data) {
        struct MacHandle {
            EVP_MAC* mac = EVP_MAC_fetch(nullptr, "HMAC", nullptr);
            ~MacHandle() { EVP_MAC_free(mac); }
        };
        static const MacHandle handle;
        if (!handle.mac) throw std::runtime_error("OpenSSL HMAC unavailable");

        EVP_MAC_CTX* ctx = EVP_MAC_CTX_new(handle.mac);
        if (!ctx) throw std::runtime_error("EVP_MAC_CTX_new failed");
        char digest_name[] = "SHA256";
        OSSL_PARAM mac_params[] = {
            OSSL_PARAM_construct_utf8_string(OSSL_MAC_PARAM_DIGEST, digest_name, 0),
            OSSL_PARAM_construct_end()};
        std::vector<std::uint8_t> out(32);
        std::size_t out_len = 0;
        bool ok = EVP_MAC_init(ctx, key.data(), key.size(), mac_params) &&
                  EVP_MAC_update(ctx, data.data(), data.size()) &&
                  EVP_MAC_final(ctx, out.data(), &out_len, out.size());
        EVP_MAC_CTX_free(ctx);
        if (!ok) throw std::runtime_error("HMAC-SHA256 computation failed");
        out.resize(out_len);
        return out;
    }

    SystemParams params_;
};

// Key bits per tag bit.
inline double code_rate(const SystemParams& params) {
    if (params.l_t < 1) throw parameter_error("code_rate: l_t must be positive");
    return static_cast<double>(params.l_k) / params.l_t;
}

inline int hamming_distance(const Tag& a, const Tag& b) {
    if (a.bits.size() != b.bits.size())
        throw parameter_error("hamming_distance: length mismatch");
    int d = 0;
    for (std::size_t i = 0; i < a.bits.size(); ++i) d += (a.bits[i] != b.bits[i]);
    return d;
}

struct MinDistanceResult {
    int d_min = 0;
    Message message;  // achieving message
    Key key_a;        // achieving key pair
    Key key_b;
};

// Exhaustive d_min over the ensemble: min over s and key pairs k != k' of
// d_H(tau(s,k), tau(s,k')).
inline MinDistanceResult ensemble_min_distance(const TagFunction& tf,
                                               const std::vector<Message>& messages) {
    if (!tf.enumerable())
        throw capability_error("ensemble_min_distance: key space not enumerable");
    if (messages.empty())
        throw parameter_error("ensemble_min_distance: at least one message required");
    const int l_k = tf.params().l_k;
    const std::uint64_t n_keys = 1ULL << l_k;
    if (n_keys < 2)
        throw parameter_error("ensemble_min_distance: need at least two keys");

    MinDistanceResult best;
    best.d_min = tf.params().l_t + 1;
    for (const auto& s : messages) {
        std::vector<Tag> tags(n_keys);
        for (std::uint64_t i = 0; i < n_keys; ++i)
            tags[i] = tf.encode(s, key_from_index(i, l_k));
        for (std::uint64_t i = 0; i < n_keys; ++i) {
            for (std::uint64_t j = i + 1; j < n_keys; ++j) {
                int d = hamming_distance(tags[i], tags[j]);
                if (d < best.d_min) {
                    best.d_min = d;
                    best.message = s;
                    best.key_a = key_from_index(i, l_k);
                    best.key_b = key_from_index(j, l_k);
                    if (d == 0) return best;
                }
            }
        }
    }
    return best;
}

}  // namespace pla
