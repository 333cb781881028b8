// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <uscscan/sigdb.hpp>

#include <uscscan/keccak.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>

namespace uscscan
{
namespace
{
std::string lowercased(std::string_view s)
{
    std::string out{s};
    std::ranges::transform(out, out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

UpgradeKeyword keyword_at(size_t index)
{
    // Tracks the declaration order of KeywordRules::keywords.
    switch (index)
    {
    case 0:
        return UpgradeKeyword::Set;
    case 1:
        return UpgradeKeyword::Upgrade;
    case 2:
        return UpgradeKeyword::Update;
    case 3:
        return UpgradeKeyword::Change;
    default:
        return index == 4 ? UpgradeKeyword::Replace : UpgradeKeyword::Manual;
    }
}

std::string trimmed(std::string_view s)
{
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos)
        return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return std::string{s.substr(begin, end - begin + 1)};
}
}  // namespace

std::string_view to_string(UpgradeKeyword k) noexcept
{
    switch (k)
    {
    case UpgradeKeyword::Set:
        return "set";
    case UpgradeKeyword::Upgrade:
        return "upgrade";
    case UpgradeKeyword::Update:
        return "update";
    case UpgradeKeyword::Change:
        return "change";
    case UpgradeKeyword::Replace:
        return "replace";
    case UpgradeKeyword::Manual:
        return "manual";
    }
    return "manual";
}

std::optional<UpgradeKeyword> KeywordRules::classify_name(std::string_view name) const
{
    const std::string lower = lowercased(name);
    for (const auto& manual : manual_names)
        if (lower == lowercased(manual))
            return UpgradeKeyword::Manual;

    const bool related = std::ranges::any_of(related_words,
        [&](const std::string& w) { return lower.find(lowercased(w)) != std::string::npos; });
    if (!related)
        return std::nullopt;

    for (size_t i = 0; i < keywords.size(); ++i)
        if (lower.find(lowercased(keywords[i])) != std::string::npos)
            return keyword_at(i);
    return std::nullopt;
}

const DbEntry* UpgradeFunctionDb::find(const Selector& selector) const
{
    const auto it = entries_.find(selector);
    return it != entries_.end() ? &it->second : nullptr;
}

UpgradeFunctionDb compile_db(const std::vector<SignatureInput>& candidates, const KeywordRules& rules)
{
    UpgradeFunctionDb db;
    for (const auto& candidate : candidates)
    {
        const auto& sig = candidate.signature;
        std::optional<UpgradeKeyword> keyword;
        if (candidate.manual)
            keyword = UpgradeKeyword::Manual;
        else
            keyword = rules.classify_name(sig.name);
        if (!keyword)
        {
            db.dropped_.push_back(sig);
            continue;
        }

        const Selector selector = selector_of(sig.canonical());
        const auto [it, inserted] = db.entries_.try_emplace(
            selector, DbEntry{sig, *keyword, sig.address_param_indices()});
        if (!inserted)
        {
            if (it->second.signature == sig)
                continue;  // the same signature listed twice is harmless
            throw SelectorCollisionError{"selector " + selector.to_hex() + " maps to both '" +
                                         it->second.signature.canonical() + "' and '" +
                                         sig.canonical() + "'"};
        }
    }

    // Fingerprint the effective configuration: rules plus retained entries.
    std::string basis;
    for (const auto& k : rules.keywords)
        basis += k + "|";
    basis += ";";
    for (const auto& w : rules.related_words)
        basis += w + "|";
    basis += ";";
    for (const auto& [selector, entry] : db.entries_)
        basis += entry.signature.canonical() + "|";
    db.version_ = to_hex_no_prefix(BytesView{keccak256(basis).bytes.data(), 8});
    return db;
}

std::vector<SignatureInput> load_signature_file(const std::filesystem::path& path)
{
    std::ifstream in{path};
    if (!in)
        throw ParseError{"cannot open signature file: " + path.string()};

    std::vector<SignatureInput> out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        const size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        std::string text = trimmed(line);
        if (text.empty())
            continue;

        SignatureInput input;
        if (text.starts_with("!"))
        {
            input.manual = true;
            text = trimmed(text.substr(1));
        }
        try
        {
            input.signature = FunctionSignature::parse(text);
        }
        catch (const ParseError& e)
        {
            throw ParseError{path.string() + ":" + std::to_string(line_no) + ": " + e.what()};
        }
        out.push_back(std::move(input));
    }
    return out;
}

std::vector<SignatureInput> load_signature_jsonl(const std::filesystem::path& path)
{
    std::ifstream in{path};
    if (!in)
        throw ParseError{"cannot open signature dump: " + path.string()};

    std::vector<SignatureInput> out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (trimmed(line).empty())
            continue;
        const auto parsed = nlohmann::json::parse(line, nullptr, false);
        if (parsed.is_discarded() || !parsed.contains("signature"))
            throw ParseError{path.string() + ":" + std::to_string(line_no) +
                             ": expected {\"signature\": ...}"};
        try
        {
            out.push_back({FunctionSignature::parse(parsed["signature"].get<std::string>()), false});
        }
        catch (const ParseError& e)
        {
            throw ParseError{path.string() + ":" + std::to_string(line_no) + ": " + e.what()};
        }
    }
    return out;
}

DecodedUpgradeCall decode_upgrade_call(BytesView input, const UpgradeFunctionDb& db)
{
    if (input.size() < 4)
        throw CalldataError{"calldata shorter than a selector: " + std::to_string(input.size()) +
                            " bytes"};

    DecodedUpgradeCall out;
    std::copy(input.begin(), input.begin() + 4, out.selector.bytes.begin());

    const BytesView args = input.subspan(4);
    for (size_t offset = 0; offset + 32 <= args.size(); offset += 32)
    {
        Word32 word;
        std::copy(args.begin() + offset, args.begin() + offset + 32, word.bytes.begin());
        out.raw_words.push_back(word);
    }

    const DbEntry* entry = db.find(out.selector);
    if (entry == nullptr)
        return out;

    out.signature = entry->signature;
    // Every supported parameter owns exactly one head word: static types
    // inline, dynamic types as a tail offset.
    if (out.raw_words.size() < entry->signature.param_types.size())
        out.truncated = true;
    for (const size_t index : entry->address_param_indices)
    {
        if (index >= out.raw_words.size())
            break;
        out.new_logic_candidates.push_back(address_from_word(out.raw_words[index]));
    }
    return out;
}
}  // namespace uscscan
