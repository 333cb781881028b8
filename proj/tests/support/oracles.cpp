// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "oracles.hpp"

#include <uscscan/keccak.hpp>
#include <uscscan/opcodes.hpp>

#include <cstring>
#include <stdexcept>

namespace testsup
{
namespace
{
using Lanes = uint64_t[5][5];

uint64_t rol(uint64_t v, unsigned r)
{
    return r == 0 ? v : (v << r) | (v >> (64 - r));
}

void theta(Lanes a)
{
    uint64_t c[5];
    uint64_t d[5];
    for (int x = 0; x < 5; ++x)
        c[x] = a[x][0] ^ a[x][1] ^ a[x][2] ^ a[x][3] ^ a[x][4];
    for (int x = 0; x < 5; ++x)
        d[x] = c[(x + 4) % 5] ^ rol(c[(x + 1) % 5], 1);
    for (int x = 0; x < 5; ++x)
        for (int y = 0; y < 5; ++y)
            a[x][y] ^= d[x];
}

void rho_pi(Lanes a)
{
    // t-th step rotates by (t+1)(t+2)/2 while walking (x,y) -> (y, 2x+3y).
    int x = 1;
    int y = 0;
    uint64_t current = a[x][y];
    for (int t = 0; t < 24; ++t)
    {
        int nx = y;
        int ny = (2 * x + 3 * y) % 5;
        uint64_t next = a[nx][ny];
        a[nx][ny] = rol(current, static_cast<unsigned>(((t + 1) * (t + 2) / 2) % 64));
        current = next;
        x = nx;
        y = ny;
    }
}

void chi(Lanes a)
{
    for (int y = 0; y < 5; ++y)
    {
        uint64_t row[5];
        for (int x = 0; x < 5; ++x)
            row[x] = a[x][y];
        for (int x = 0; x < 5; ++x)
            a[x][y] = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5]);
    }
}

uint64_t iota_constant(int round)
{
    // LFSR over GF(2) per FIPS-202 rc(t); recomputed instead of tabulated.
    uint64_t rc = 0;
    uint8_t lfsr = 1;
    for (int bit = 0; bit < 7; ++bit)
    {
        int t = 7 * round + bit;
        for (int i = 0; i < t % 255; ++i)
            lfsr = static_cast<uint8_t>((lfsr << 1) ^ ((lfsr >> 7) * 0x71));
        if (lfsr & 1)
            rc |= uint64_t{1} << ((1 << bit) - 1);
        lfsr = 1;
    }
    return rc;
}

// rc(t) above restarts the LFSR per bit which is O(t); cache the 24 values.
const uint64_t* round_constants()
{
    static uint64_t table[24];
    static bool ready = false;
    if (!ready)
    {
        for (int r = 0; r < 24; ++r)
            table[r] = iota_constant(r);
        ready = true;
    }
    return table;
}

void permute(Lanes a)
{
    const uint64_t* rc = round_constants();
    for (int round = 0; round < 24; ++round)
    {
        theta(a);
        rho_pi(a);
        chi(a);
        a[0][0] ^= rc[round];
    }
}
}  // namespace

Hash32 naive_keccak256(BytesView data)
{
    constexpr size_t rate = 136;
    Lanes a = {};

    // Pad 0x01 .. 0x80 to a rate multiple, then absorb block by block.
    Bytes padded(data.begin(), data.end());
    padded.push_back(0x01);
    while (padded.size() % rate != 0)
        padded.push_back(0x00);
    padded.back() |= 0x80;

    for (size_t block = 0; block < padded.size(); block += rate)
    {
        for (size_t i = 0; i < rate / 8; ++i)
        {
            uint64_t lane = 0;
            for (size_t b = 0; b < 8; ++b)
                lane |= uint64_t{padded[block + i * 8 + b]} << (8 * b);
            a[i % 5][i / 5] ^= lane;
        }
        permute(a);
    }

    Hash32 digest;
    for (size_t i = 0; i < 4; ++i)
    {
        uint64_t lane = a[i % 5][i / 5];
        for (size_t b = 0; b < 8; ++b)
            digest.bytes[i * 8 + b] = static_cast<uint8_t>(lane >> (8 * b));
    }
    return digest;
}

Hash32 naive_keccak256(std::string_view text)
{
    return naive_keccak256(
        BytesView{reinterpret_cast<const uint8_t*>(text.data()), text.size()});
}

namespace
{
/// Validates a trailing CBOR map independently: a handful of major types is
/// enough for solc-style trailers, anything else fails the check.
bool cbor_map_exact(BytesView content)
{
    size_t pos = 0;
    if (content.empty() || (content[pos] >> 5) != 5)
        return false;
    uint64_t pairs = content[pos] & 0x1f;
    if (pairs >= 24)
        return false;  // indefinite or long counts don't appear in trailers
    ++pos;
    for (uint64_t i = 0; i < pairs * 2; ++i)
    {
        if (pos >= content.size())
            return false;
        uint8_t major = content[pos] >> 5;
        uint64_t info = content[pos] & 0x1f;
        ++pos;
        uint64_t length = info;
        if (info >= 24)
        {
            if (info > 27)
                return false;
            size_t extra = size_t{1} << (info - 24);
            if (pos + extra > content.size())
                return false;
            length = 0;
            for (size_t b = 0; b < extra; ++b)
                length = (length << 8) | content[pos + b];
            pos += extra;
        }
        switch (major)
        {
        case 0:
        case 1:
            break;
        case 2:
        case 3:
            if (pos + length > content.size())
                return false;
            pos += length;
            break;
        default:
            return false;
        }
    }
    return pos == content.size();
}

size_t ref_trailer(BytesView code)
{
    if (code.size() < 2)
        return 0;
    size_t declared = size_t{code[code.size() - 2]} << 8 | code[code.size() - 1];
    if (declared == 0 || declared + 2 > code.size())
        return 0;
    return cbor_map_exact(code.subspan(code.size() - 2 - declared, declared)) ? declared + 2
                                                                              : 0;
}
}  // namespace

RefFlags reference_flags(BytesView code)
{
    using uscscan::OpCode;
    RefFlags flags;
    size_t end = code.size() - ref_trailer(code);
    for (size_t i = 0; i < end; ++i)
    {
        uint8_t byte = code[i];
        if (byte >= uscscan::op(OpCode::PUSH1) && byte <= uscscan::op(OpCode::PUSH32))
        {
            i += byte - uscscan::op(OpCode::PUSH0);  // skip operand
            continue;
        }
        flags.has_call |= byte == uscscan::op(OpCode::CALL);
        flags.has_staticcall |= byte == uscscan::op(OpCode::STATICCALL);
        flags.has_delegatecall |= byte == uscscan::op(OpCode::DELEGATECALL);
        flags.has_selfdestruct |= byte == uscscan::op(OpCode::SELFDESTRUCT);
        flags.has_create2 |= byte == uscscan::op(OpCode::CREATE2);
    }
    return flags;
}

namespace
{
Bytes pad32(BytesView tail_aligned)
{
    Bytes word(32, 0);
    std::memcpy(word.data() + (32 - tail_aligned.size()), tail_aligned.data(),
                tail_aligned.size());
    return word;
}

bool is_dynamic(const AbiValue& value)
{
    return std::holds_alternative<AbiBytes>(value);
}

Bytes head_word(const AbiValue& value)
{
    if (const auto* address = std::get_if<Address>(&value))
        return pad32(BytesView{address->bytes.data(), address->bytes.size()});
    if (const auto* number = std::get_if<uint64_t>(&value))
    {
        Bytes be(8);
        for (size_t i = 0; i < 8; ++i)
            be[7 - i] = static_cast<uint8_t>(*number >> (8 * i));
        return pad32(be);
    }
    if (const auto* flag = std::get_if<bool>(&value))
    {
        Bytes word(32, 0);
        word[31] = *flag ? 1 : 0;
        return word;
    }
    if (const auto* word32 = std::get_if<Word32>(&value))
        return Bytes(word32->bytes.begin(), word32->bytes.end());
    throw std::logic_error{"head_word on dynamic value"};
}

Bytes tail_encoding(const AbiBytes& value)
{
    Bytes out;
    Bytes length(8);
    uint64_t n = value.data.size();
    for (size_t i = 0; i < 8; ++i)
        length[7 - i] = static_cast<uint8_t>(n >> (8 * i));
    Bytes word = pad32(length);
    out.insert(out.end(), word.begin(), word.end());
    out.insert(out.end(), value.data.begin(), value.data.end());
    while (out.size() % 32 != 0)
        out.push_back(0);
    return out;
}
}  // namespace

Bytes abi_call(std::string_view signature, const std::vector<AbiValue>& args)
{
    Hash32 digest = naive_keccak256(signature);
    Bytes out(digest.bytes.begin(), digest.bytes.begin() + 4);

    size_t head_size = args.size() * 32;
    std::vector<Bytes> tails;
    Bytes heads;
    size_t tail_offset = head_size;
    for (const AbiValue& value : args)
    {
        if (is_dynamic(value))
        {
            Bytes offset(8);
            for (size_t i = 0; i < 8; ++i)
                offset[7 - i] = static_cast<uint8_t>(uint64_t{tail_offset} >> (8 * i));
            Bytes word = pad32(offset);
            heads.insert(heads.end(), word.begin(), word.end());
            tails.push_back(tail_encoding(std::get<AbiBytes>(value)));
            tail_offset += tails.back().size();
        }
        else
        {
            Bytes word = head_word(value);
            heads.insert(heads.end(), word.begin(), word.end());
        }
    }
    out.insert(out.end(), heads.begin(), heads.end());
    for (const Bytes& tail : tails)
        out.insert(out.end(), tail.begin(), tail.end());
    return out;
}
}  // namespace testsup
