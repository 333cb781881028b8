// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <uscscan/bytes.hpp>

#include <doctest.h>

#include <unordered_map>

using namespace uscscan;

TEST_CASE("hex round trip")
{
    const Bytes data{0x00, 0x1f, 0xab, 0xff};
    CHECK(to_hex(data) == "0x001fabff");
    CHECK(from_hex("0x001fabff") == data);
    CHECK(from_hex("001FABFF") == data);
    CHECK(to_hex_no_prefix(data) == "001fabff");
    CHECK(from_hex("").empty());
    CHECK(from_hex("0x").empty());
}

TEST_CASE("hex rejects malformed input")
{
    CHECK_THROWS_AS(from_hex("abc"), ParseError);
    CHECK_THROWS_AS(from_hex("0xzz"), ParseError);
    CHECK_THROWS_AS(from_hex("0x1"), ParseError);
}

TEST_CASE("fixed-width parsing enforces the width")
{
    const auto addr = Address::from_hex("0xdead00000000000000000000000000000000beef");
    CHECK(addr.bytes[0] == 0xde);
    CHECK(addr.bytes[19] == 0xef);
    CHECK(addr.to_hex() == "0xdead00000000000000000000000000000000beef");
    CHECK_THROWS_AS(Address::from_hex("0xdead"), ParseError);
    CHECK_THROWS_AS(Selector::from_hex("0x123456"), ParseError);
    CHECK(Selector::from_hex("a9059cbb").to_hex() == "0xa9059cbb");
}

TEST_CASE("zero check and ordering")
{
    Address a;
    CHECK(a.is_zero());
    a.bytes[19] = 1;
    CHECK_FALSE(a.is_zero());
    Address b;
    b.bytes[19] = 2;
    CHECK(a < b);
    CHECK(a == a);
}

TEST_CASE("word-address conversion keeps the low 20 bytes")
{
    Word32 word;
    word.bytes[0] = 0xaa;  // dirty high bytes must be dropped
    word.bytes[12] = 0x11;
    word.bytes[31] = 0x22;
    const Address addr = address_from_word(word);
    CHECK(addr.bytes[0] == 0x11);
    CHECK(addr.bytes[19] == 0x22);

    const Word32 back = word_from_address(addr);
    CHECK(back.bytes[0] == 0);
    CHECK(back.bytes[12] == 0x11);
    CHECK(back.bytes[31] == 0x22);
}

TEST_CASE("fixed bytes hash in unordered containers")
{
    std::unordered_map<Address, int> map;
    Address a;
    a.bytes[19] = 7;
    map[a] = 1;
    CHECK(map.contains(a));
    Address b;
    CHECK_FALSE(map.contains(b));
}
