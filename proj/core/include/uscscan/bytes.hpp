// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace uscscan
{
using Bytes = std::vector<uint8_t>;
using BytesView = std::span<const uint8_t>;

/// Raised when textual input (hex, signatures, fixture files) cannot be parsed.
class ParseError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Fixed-width byte string with lowercase 0x-hex round-trip.
template <size_t N>
struct FixedBytes
{
    std::array<uint8_t, N> bytes{};

    constexpr auto operator<=>(const FixedBytes&) const noexcept = default;

    [[nodiscard]] constexpr bool is_zero() const noexcept
    {
        for (const auto b : bytes)
            if (b != 0)
                return false;
        return true;
    }

    [[nodiscard]] constexpr uint8_t operator[](size_t i) const noexcept { return bytes[i]; }

    /// Accepts upper/lower/mixed case, with or without the 0x prefix.
    static FixedBytes from_hex(std::string_view hex);

    [[nodiscard]] std::string to_hex() const;
};

using Address = FixedBytes<20>;
using Hash32 = FixedBytes<32>;
using Word32 = FixedBytes<32>;
using Selector = FixedBytes<4>;

Bytes from_hex(std::string_view hex);
std::string to_hex(BytesView data);
std::string to_hex_no_prefix(BytesView data);

template <size_t N>
FixedBytes<N> FixedBytes<N>::from_hex(std::string_view hex)
{
    const Bytes raw = uscscan::from_hex(hex);
    if (raw.size() != N)
        throw ParseError{"expected " + std::to_string(N) + " bytes, got " +
                         std::to_string(raw.size()) + ": " + std::string{hex}};
    FixedBytes<N> out;
    std::copy(raw.begin(), raw.end(), out.bytes.begin());
    return out;
}

template <size_t N>
std::string FixedBytes<N>::to_hex() const
{
    return uscscan::to_hex(BytesView{bytes.data(), bytes.size()});
}

/// Low 20 bytes of a 32-byte word, the ABI encoding of an address argument.
inline Address address_from_word(const Word32& word) noexcept
{
    Address out;
    std::copy(word.bytes.begin() + 12, word.bytes.end(), out.bytes.begin());
    return out;
}

/// Left-pads an address to a 32-byte word.
inline Word32 word_from_address(const Address& addr) noexcept
{
    Word32 out;
    std::copy(addr.bytes.begin(), addr.bytes.end(), out.bytes.begin() + 12);
    return out;
}
}  // namespace uscscan

template <size_t N>
struct std::hash<uscscan::FixedBytes<N>>
{
    size_t operator()(const uscscan::FixedBytes<N>& v) const noexcept
    {
        // FNV-1a over the raw bytes; these keys are hashes or addresses already.
        size_t h = 14695981039346656037ull;
        for (const auto b : v.bytes)
            h = (h ^ b) * 1099511628211ull;
        return h;
    }
};
