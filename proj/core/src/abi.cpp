// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <uscscan/abi.hpp>

#include <cctype>
#include <charconv>

namespace uscscan
{
namespace
{
bool is_identifier(std::string_view s)
{
    if (s.empty() || (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_' && s[0] != '$'))
        return false;
    for (const char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '$')
            return false;
    return true;
}

std::optional<unsigned> parse_uint_suffix(std::string_view s)
{
    unsigned value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        return std::nullopt;
    return value;
}

std::string canonicalize_type(std::string_view raw)
{
    std::string type{raw};
    if (type == "uint")
        return "uint256";
    if (type == "int")
        return "int256";
    return type;
}
}  // namespace

bool is_valid_type(std::string_view t)
{
    if (t.ends_with("[]"))
        return is_valid_type(t.substr(0, t.size() - 2));
    if (t == "address" || t == "bool" || t == "bytes" || t == "string" || t == "function")
        return true;
    if (t.starts_with("uint") || t.starts_with("int"))
    {
        const auto bits = parse_uint_suffix(t.substr(t.starts_with("uint") ? 4 : 3));
        return bits && *bits >= 8 && *bits <= 256 && *bits % 8 == 0;
    }
    if (t.starts_with("bytes"))
    {
        const auto n = parse_uint_suffix(t.substr(5));
        return n && *n >= 1 && *n <= 32;
    }
    return false;
}

bool is_dynamic_type(std::string_view t)
{
    return t == "bytes" || t == "string" || t.ends_with("[]");
}

FunctionSignature FunctionSignature::parse(std::string_view text)
{
    const size_t open = text.find('(');
    if (open == std::string_view::npos || !text.ends_with(")"))
        throw ParseError{"malformed signature: " + std::string{text}};

    FunctionSignature sig;
    sig.name = std::string{text.substr(0, open)};
    if (!is_identifier(sig.name))
        throw ParseError{"bad function name in signature: " + std::string{text}};

    const std::string_view params = text.substr(open + 1, text.size() - open - 2);
    if (!params.empty())
    {
        size_t start = 0;
        while (true)
        {
            const size_t comma = params.find(',', start);
            const std::string_view raw = comma == std::string_view::npos ?
                                             params.substr(start) :
                                             params.substr(start, comma - start);
            const std::string type = canonicalize_type(raw);
            if (!is_valid_type(type))
                throw ParseError{"unsupported parameter type '" + std::string{raw} +
                                 "' in signature: " + std::string{text}};
            sig.param_types.push_back(type);
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
    }
    return sig;
}

std::string FunctionSignature::canonical() const
{
    std::string out = name + "(";
    for (size_t i = 0; i < param_types.size(); ++i)
    {
        if (i > 0)
            out += ",";
        out += param_types[i];
    }
    out += ")";
    return out;
}

std::vector<size_t> FunctionSignature::address_param_indices() const
{
    std::vector<size_t> out;
    for (size_t i = 0; i < param_types.size(); ++i)
        if (param_types[i] == "address")
            out.push_back(i);
    return out;
}
}  // namespace uscscan
