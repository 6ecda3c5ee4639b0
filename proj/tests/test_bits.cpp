#include <doctest.h>

#include "pla/bits.hpp"
#include "pla/rng.hpp"

using namespace pla;

TEST_CASE("MSB-first packing") {
    BitVec bits = {1, 0, 1, 1, 0, 0, 1, 0, 1, 1};
    auto packed = pack_msb_first(bits);
    REQUIRE(packed.size() == 2);
    CHECK(packed[0] == 0xB2);
    CHECK(packed[1] == 0xC0);  // trailing bits zero-padded
}

TEST_CASE("canonical serialization golden bytes") {
    BitVec bits = {1, 0, 1};
    auto bytes = canonical_bytes(bits);
    std::vector<std::uint8_t> expect = {0, 0, 0, 0, 0, 0, 0, 3, 0xA0};
    CHECK(bytes == expect);
}

TEST_CASE("canonical serialization round trip") {
    RngStream rng(42, 0);
    for (int trial = 0; trial < 50; ++trial) {
        BitVec bits = rng.bit_vector(static_cast<int>(rng.below(65)));
        auto bytes = canonical_bytes(bits);
        std::size_t pos = 0;
        CHECK(parse_canonical(bytes, pos) == bits);
        CHECK(pos == bytes.size());
    }
}

TEST_CASE("canonical parse rejects truncation") {
    BitVec bits(12, 1);
    auto bytes = canonical_bytes(bits);
    bytes.pop_back();
    std::size_t pos = 0;
    CHECK_THROWS_AS(parse_canonical(bytes, pos), parameter_error);
}

TEST_CASE("key/index round trip is lexicographic MSB-first") {
    Key k = key_from_index(0b1010, 4);
    CHECK(k.bits == BitVec{1, 0, 1, 0});
    for (std::uint64_t i = 0; i < 32; ++i)
        CHECK(index_from_key(key_from_index(i, 5)) == i);
}
