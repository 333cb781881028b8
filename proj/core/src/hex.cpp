// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <uscscan/bytes.hpp>

namespace uscscan
{
namespace
{
constexpr int hex_digit(char c) noexcept
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

constexpr char hex_chars[] = "0123456789abcdef";
}  // namespace

Bytes from_hex(std::string_view hex)
{
    if (hex.starts_with("0x") || hex.starts_with("0X"))
        hex.remove_prefix(2);
    if (hex.size() % 2 != 0)
        throw ParseError{"odd-length hex string: " + std::string{hex}};

    Bytes out;
    out.reserve(hex.size() / 2);
    for (size_t i = 0; i < hex.size(); i += 2)
    {
        const int hi = hex_digit(hex[i]);
        const int lo = hex_digit(hex[i + 1]);
        if (hi < 0 || lo < 0)
            throw ParseError{"invalid hex digit in: " + std::string{hex.substr(i, 2)}};
        out.push_back(static_cast<uint8_t>((hi << 4) | lo));
    }
    return out;
}

std::string to_hex_no_prefix(BytesView data)
{
    std::string out;
    out.reserve(data.size() * 2);
    for (const auto b : data)
    {
        out.push_back(hex_chars[b >> 4]);
        out.push_back(hex_chars[b & 0x0f]);
    }
    return out;
}

std::string to_hex(BytesView data)
{
    return "0x" + to_hex_no_prefix(data);
}
}  // namespace uscscan
