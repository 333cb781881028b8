// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <uscscan/abi.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace uscscan
{
/// Raised when two retained signatures share a 4-byte selector.
class SelectorCollisionError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class UpgradeKeyword
{
    Set,
    Upgrade,
    Update,
    Change,
    Replace,
    Manual,
};

std::string_view to_string(UpgradeKeyword k) noexcept;

/// Retention rules for upgrade-function candidates: a name must pair an
/// upgrade verb with a word saying *what* is upgraded, or be allowlisted.
struct KeywordRules
{
    std::vector<std::string> keywords{"set", "upgrade", "update", "change", "replace"};
    std::vector<std::string> related_words{"contract", "implementation", "logic", "target",
        "code", "module", "address", "proxy", "delegate"};
    std::vector<std::string> manual_names;

    /// Keyword matched case-insensitively in `name`, in declaration order;
    /// nullopt when no keyword or no related word matches.
    [[nodiscard]] std::optional<UpgradeKeyword> classify_name(std::string_view name) const;
};

struct SignatureInput
{
    FunctionSignature signature;
    bool manual = false;  // retained regardless of the keyword rules
};

struct DbEntry
{
    FunctionSignature signature;
    UpgradeKeyword keyword = UpgradeKeyword::Manual;
    std::vector<size_t> address_param_indices;
};

class UpgradeFunctionDb
{
public:
    [[nodiscard]] const DbEntry* find(const Selector& selector) const;
    [[nodiscard]] bool contains(const Selector& selector) const { return find(selector) != nullptr; }
    [[nodiscard]] size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] const std::map<Selector, DbEntry>& entries() const noexcept { return entries_; }
    [[nodiscard]] const std::vector<FunctionSignature>& dropped() const noexcept { return dropped_; }

    /// Stable fingerprint over the rules and the retained signatures.
    [[nodiscard]] const std::string& version() const noexcept { return version_; }

    friend UpgradeFunctionDb compile_db(
        const std::vector<SignatureInput>& candidates, const KeywordRules& rules);

private:
    std::map<Selector, DbEntry> entries_;
    std::vector<FunctionSignature> dropped_;
    std::string version_;
};

/// Filters candidates through the keyword rules, computes selectors and
/// parameter layouts. Throws SelectorCollisionError if two different retained
/// signatures map to one selector.
UpgradeFunctionDb compile_db(
    const std::vector<SignatureInput>& candidates, const KeywordRules& rules = {});

/// One canonical signature per line; `#` starts a comment, a `!` prefix marks
/// a manually curated entry exempt from the keyword rules.
std::vector<SignatureInput> load_signature_file(const std::filesystem::path& path);

/// JSONL dump with one {"signature": "..."} object per line, the shape of a
/// public 4-byte directory export.
std::vector<SignatureInput> load_signature_jsonl(const std::filesystem::path& path);

/// Decoded upgrade-call payload. `truncated` marks calldata whose static
/// argument section is shorter than the signature requires; whatever words
/// were present are still decoded.
struct DecodedUpgradeCall
{
    Selector selector;
    std::optional<FunctionSignature> signature;
    std::vector<Address> new_logic_candidates;
    std::vector<Word32> raw_words;
    bool truncated = false;
};

/// Splits calldata into selector and static argument words and extracts the
/// address arguments of a known upgrade function. Dynamic parameters consume
/// exactly their one offset word. Throws CalldataError below four bytes.
DecodedUpgradeCall decode_upgrade_call(BytesView input, const UpgradeFunctionDb& db);
}  // namespace uscscan
