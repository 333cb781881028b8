// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <uscscan/keccak.hpp>

#include <bit>
#include <cstring>

namespace uscscan
{
namespace
{
constexpr uint64_t round_constants[24] = {
    0x0000000000000001, 0x0000000000008082, 0x800000000000808a, 0x8000000080008000,
    0x000000000000808b, 0x0000000080000001, 0x8000000080008081, 0x8000000000008009,
    0x000000000000008a, 0x0000000000000088, 0x0000000080008009, 0x000000008000000a,
    0x000000008000808b, 0x800000000000008b, 0x8000000000008089, 0x8000000000008003,
    0x8000000000008002, 0x8000000000000080, 0x000000000000800a, 0x800000008000000a,
    0x8000000080008081, 0x8000000000008080, 0x0000000080000001, 0x8000000080008008};

// Rotation offsets and the lane permutation of the rho+pi steps, flattened
// over the 5x5 state in x + 5*y order.
constexpr int rho_offsets[25] = {0, 1, 62, 28, 27, 36, 44, 6, 55, 20, 3, 10, 43,
    25, 39, 41, 45, 15, 21, 8, 18, 2, 61, 56, 14};

void keccak_f1600(uint64_t state[25]) noexcept
{
    for (int round = 0; round < 24; ++round)
    {
        // theta
        uint64_t c[5];
        for (int x = 0; x < 5; ++x)
            c[x] = state[x] ^ state[x + 5] ^ state[x + 10] ^ state[x + 15] ^ state[x + 20];
        for (int x = 0; x < 5; ++x)
        {
            const uint64_t d = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
            for (int y = 0; y < 5; ++y)
                state[x + 5 * y] ^= d;
        }

        // rho + pi
        uint64_t b[25];
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                b[y + 5 * ((2 * x + 3 * y) % 5)] = std::rotl(state[x + 5 * y], rho_offsets[x + 5 * y]);

        // chi
        for (int y = 0; y < 5; ++y)
            for (int x = 0; x < 5; ++x)
                state[x + 5 * y] = b[x + 5 * y] ^ (~b[(x + 1) % 5 + 5 * y] & b[(x + 2) % 5 + 5 * y]);

        // iota
        state[0] ^= round_constants[round];
    }
}

constexpr size_t rate_bytes = 136;  // 1600/8 - 2*256/8
}  // namespace

Hash32 keccak256(BytesView data)
{
    uint64_t state[25] = {};

    // Absorb all complete blocks.
    size_t offset = 0;
    while (data.size() - offset >= rate_bytes)
    {
        for (size_t i = 0; i < rate_bytes / 8; ++i)
        {
            uint64_t lane;
            std::memcpy(&lane, data.data() + offset + 8 * i, 8);
            state[i] ^= lane;  // little-endian host assumed, as everywhere in this codebase
        }
        keccak_f1600(state);
        offset += rate_bytes;
    }

    // Final block with 0x01 ... 0x80 padding.
    uint8_t block[rate_bytes] = {};
    const size_t remaining = data.size() - offset;
    if (remaining > 0)
        std::memcpy(block, data.data() + offset, remaining);
    block[remaining] = 0x01;
    block[rate_bytes - 1] |= 0x80;
    for (size_t i = 0; i < rate_bytes / 8; ++i)
    {
        uint64_t lane;
        std::memcpy(&lane, block + 8 * i, 8);
        state[i] ^= lane;
    }
    keccak_f1600(state);

    Hash32 out;
    std::memcpy(out.bytes.data(), state, 32);
    return out;
}

Selector selector_of(std::string_view canonical_signature)
{
    const Hash32 digest = keccak256(canonical_signature);
    Selector out;
    std::copy(digest.bytes.begin(), digest.bytes.begin() + 4, out.bytes.begin());
    return out;
}
}  // namespace uscscan
