#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pla/errors.hpp"

namespace pla {

// One element per bit, values 0 or 1.
using BitVec = std::vector<std::uint8_t>;

struct Key {
    BitVec bits;
};

struct Message {
    BitVec bits;
};

struct Tag {
    BitVec bits;
};

inline bool operator==(const Key& a, const Key& b) { return a.bits == b.bits; }
inline bool operator==(const Message& a, const Message& b) { return a.bits == b.bits; }
inline bool operator==(const Tag& a, const Tag& b) { return a.bits == b.bits; }

// Big-endian (MSB-first) packing of bits into bytes; the last byte is
// zero-padded in its low bits.
inline std::vector<std::uint8_t> pack_msb_first(const BitVec& bits) {
    std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    }
    return out;
}

inline void append_be64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 7; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

// Canonical bit-vector serialization: 8-byte big-endian length in bits,
// followed by MSB-first packed payload.
inline std::vector<std::uint8_t> canonical_bytes(const BitVec& bits) {
    std::vector<std::uint8_t> out;
    out.reserve(8 + (bits.size() + 7) / 8);
    append_be64(out, bits.size());
    auto packed = pack_msb_first(bits);
    out.insert(out.end(), packed.begin(), packed.end());
    return out;
}

// Inverse of canonical_bytes; consumes from data[pos] and advances pos.
inline BitVec parse_canonical(const std::vector<std::uint8_t>& data, std::size_t& pos) {
    if (pos + 8 > data.size()) throw parameter_error("canonical bit vector: truncated length prefix");
    std::uint64_t n = 0;
    for (int i = 0; i < 8; ++i) n = (n << 8) | data[pos++];
    std::size_t nbytes = (n + 7) / 8;
    if (pos + nbytes > data.size()) throw parameter_error("canonical bit vector: truncated payload");
    BitVec bits(n);
    for (std::uint64_t i = 0; i < n; ++i)
        bits[i] = (data[pos + i / 8] >> (7 - i % 8)) & 1u;
    pos += nbytes;
    return bits;
}

// Key whose bit pattern is the MSB-first binary expansion of idx.
inline Key key_from_index(std::uint64_t idx, int l_k) {
    Key k;
    k.bits.resize(l_k);
    for (int i = 0; i < l_k; ++i) k.bits[i] = (idx >> (l_k - 1 - i)) & 1u;
    return k;
}

inline std::uint64_t index_from_key(const Key& k) {
    std::uint64_t idx = 0;
    for (auto b : k.bits) idx = (idx << 1) | b;
    return idx;
}

inline std::string to_string(const BitVec& bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

}  // namespace pla
