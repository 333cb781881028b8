// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <uscscan/features.hpp>
#include <uscscan/records.hpp>
#include <uscscan/rpc.hpp>
#include <uscscan/sigdb.hpp>

namespace uscscan
{
enum class Pattern
{
    Proxy,
    DataSeparation,
    Strategy,
    DataOrStrategy,  // strategy-shaped, caller direction unknown
    Mix,
    Metamorphic,
    Migration,
    NotUpgradeable,
};

std::string_view to_string(Pattern p) noexcept;
std::optional<Pattern> pattern_from_string(std::string_view s) noexcept;

/// All patterns in their canonical reporting order.
inline constexpr std::array<Pattern, 8> all_patterns{Pattern::Proxy, Pattern::DataSeparation,
    Pattern::Strategy, Pattern::DataOrStrategy, Pattern::Mix, Pattern::Metamorphic,
    Pattern::Migration, Pattern::NotUpgradeable};

/// Upgrade-function selectors found on each side of a proxy pair.
struct UpgradeMatches
{
    std::set<Selector> local;     // dispatched by the subject itself
    std::set<Selector> outbound;  // prepared for calls into other contracts
};

UpgradeMatches match_upgrade_selectors(const BytecodeFeatures& features, const UpgradeFunctionDb& db);

/// Everything the rules get to see about one contract.
struct ContractAnalysis
{
    ContractRecord record;
    BytecodeFeatures features;
    UpgradeMatches upgrade_matches;

    std::optional<ResolvedLogic> logic;
    std::optional<BytecodeFeatures> logic_features;
    std::set<Selector> logic_upgrade_local;  // db matches among the logic side's selectors

    std::optional<CreationTrace> creation_trace;
};

/// One satisfied rule clause with the concrete observation behind it.
struct RuleClause
{
    std::string clause;
    std::string evidence;

    bool operator==(const RuleClause&) const = default;
};

struct PatternClassification
{
    Pattern pattern = Pattern::NotUpgradeable;
    bool uups = false;  // upgrade function lives only on the logic side
    std::optional<Pattern> secondary;
    std::vector<RuleClause> evidence;
    std::vector<std::string> degraded;  // inputs that were missing, not fatal
};

/// Applies the pattern rules to one contract. Creation provenance wins over
/// shape: a self-destructing contract recreated via CREATE2 is Metamorphic,
/// any simultaneously satisfied shape rule moves to `secondary`.
PatternClassification classify(const ContractAnalysis& analysis);

/// Caller-direction statistics over inbound calls.
struct CallerDirection
{
    size_t contract_senders = 0;
    size_t eoa_senders = 0;
    size_t unknown_senders = 0;

    [[nodiscard]] size_t known() const noexcept { return contract_senders + eoa_senders; }
};

CallerDirection measure_caller_direction(const ContractAnalysis& analysis,
    std::span<const TransactionRecord> txs, const UpgradeFunctionDb& db);

/// Splits DataOrStrategy by who calls in: mostly contracts reading data means
/// data separation, mostly people driving a contract that calls out means
/// strategy. Any other split leaves the classification untouched.
PatternClassification resolve_strategy_vs_data(const PatternClassification& classification,
    const ContractAnalysis& analysis, std::span<const TransactionRecord> txs,
    const UpgradeFunctionDb& db, double threshold = 0.5);

/// True when the subject's outbound selectors include an upgrade function
/// dispatched by some proxy in the corpus: this contract can upgrade others.
bool detect_hierarchy_upgrader(
    const ContractAnalysis& analysis, const std::set<Selector>& proxy_upgrade_selectors);
}  // namespace uscscan
