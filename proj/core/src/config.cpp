// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <uscscan/config.hpp>

#include <uscscan/features.hpp>
#include <uscscan/keccak.hpp>

#include <charconv>
#include <fstream>

namespace uscscan
{
namespace
{
std::string_view trimmed(std::string_view s)
{
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos)
        return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value)
{
    T out{};
    if constexpr (std::is_floating_point_v<T>)
    {
        try
        {
            size_t consumed = 0;
            out = std::stod(std::string{value}, &consumed);
            if (consumed != value.size())
                throw std::invalid_argument{""};
        }
        catch (const std::exception&)
        {
            throw ParseError{"bad numeric value for " + std::string{key} + ": " +
                             std::string{value}};
        }
    }
    else
    {
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
        if (ec != std::errc{} || ptr != value.data() + value.size())
            throw ParseError{"bad numeric value for " + std::string{key} + ": " +
                             std::string{value}};
    }
    return out;
}
}  // namespace

void ToolConfig::apply(std::string_view key, std::string_view value)
{
    if (key == "outbound_window")
        outbound_window = parse_number<size_t>(key, value);
    else if (key == "direction_threshold")
        direction_threshold = parse_number<double>(key, value);
    else if (key == "storage_probe_slots")
        storage_probe_slots = parse_number<size_t>(key, value);
    else if (key == "rpc_max_attempts")
        rpc_max_attempts = parse_number<int>(key, value);
    else if (key == "rpc_max_in_flight")
        rpc_max_in_flight = parse_number<int>(key, value);
    else
        throw ParseError{"unknown configuration key: " + std::string{key}};
}

ToolConfig ToolConfig::load(const std::filesystem::path& path)
{
    std::ifstream in{path};
    if (!in)
        throw ParseError{"cannot open config file: " + path.string()};

    ToolConfig config;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        const size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        const std::string_view text = trimmed(line);
        if (text.empty())
            continue;
        const size_t eq = text.find('=');
        if (eq == std::string_view::npos)
            throw ParseError{path.string() + ":" + std::to_string(line_no) +
                             ": expected key = value"};
        try
        {
            config.apply(trimmed(text.substr(0, eq)), trimmed(text.substr(eq + 1)));
        }
        catch (const ParseError& e)
        {
            throw ParseError{path.string() + ":" + std::to_string(line_no) + ": " + e.what()};
        }
    }
    return config;
}

std::string ToolConfig::fingerprint(std::string_view db_version) const
{
    std::string basis{dispatch_template_version};
    basis += ";db=" + std::string{db_version};
    basis += ";outbound_window=" + std::to_string(outbound_window);
    basis += ";direction_threshold=" + std::to_string(direction_threshold);
    basis += ";storage_probe_slots=" + std::to_string(storage_probe_slots);
    return to_hex_no_prefix(BytesView{keccak256(basis).bytes.data(), 8});
}
}  // namespace uscscan
