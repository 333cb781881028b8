// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <uscscan/classify.hpp>

#include <algorithm>

namespace uscscan
{
namespace
{
std::string selector_list(const std::set<Selector>& selectors, size_t cap = 8)
{
    std::string out;
    size_t n = 0;
    for (const auto& s : selectors)
    {
        if (n++ == cap)
        {
            out += ",...";
            break;
        }
        if (!out.empty())
            out += ",";
        out += s.to_hex();
    }
    return out;
}
}  // namespace

std::string_view to_string(Pattern p) noexcept
{
    switch (p)
    {
    case Pattern::Proxy:
        return "Proxy";
    case Pattern::DataSeparation:
        return "DataSeparation";
    case Pattern::Strategy:
        return "Strategy";
    case Pattern::DataOrStrategy:
        return "DataOrStrategy";
    case Pattern::Mix:
        return "Mix";
    case Pattern::Metamorphic:
        return "Metamorphic";
    case Pattern::Migration:
        return "Migration";
    case Pattern::NotUpgradeable:
        return "NotUpgradeable";
    }
    return "NotUpgradeable";
}

std::optional<Pattern> pattern_from_string(std::string_view s) noexcept
{
    for (const Pattern p : all_patterns)
        if (to_string(p) == s)
            return p;
    return std::nullopt;
}

UpgradeMatches match_upgrade_selectors(const BytecodeFeatures& features, const UpgradeFunctionDb& db)
{
    UpgradeMatches out;
    for (const auto& s : features.local_selectors)
        if (db.contains(s))
            out.local.insert(s);
    for (const auto& s : features.outbound_selectors)
        if (db.contains(s))
            out.outbound.insert(s);
    return out;
}

PatternClassification classify(const ContractAnalysis& analysis)
{
    const auto& f = analysis.features;

    const bool upgrade_local = !analysis.upgrade_matches.local.empty();
    const bool upgrade_logic = !analysis.logic_upgrade_local.empty();
    const bool extcall = f.has_call || f.has_staticcall;
    const bool outbound = !f.outbound_selectors.empty();
    const bool create2_created = analysis.creation_trace && analysis.creation_trace->has_create2();

    PatternClassification out;

    if (upgrade_local)
        out.evidence.push_back(
            {"upgrade-selector-local", selector_list(analysis.upgrade_matches.local)});
    if (upgrade_logic)
    {
        std::string where = selector_list(analysis.logic_upgrade_local);
        if (analysis.logic)
            where += " at " + analysis.logic->address.to_hex() + " via " +
                     std::string{to_string(analysis.logic->probe)};
        out.evidence.push_back({"upgrade-selector-logic", std::move(where)});
    }
    if (f.has_delegatecall)
        out.evidence.push_back({"delegatecall", "DELEGATECALL present"});
    if (f.has_fallback)
        out.evidence.push_back({"fallback", "non-reverting fall-through"});
    if (extcall)
        out.evidence.push_back({"external-call", f.has_call ? "CALL" : "STATICCALL"});
    if (outbound)
        out.evidence.push_back({"outbound-selectors", selector_list(f.outbound_selectors)});
    if (f.has_selfdestruct)
        out.evidence.push_back({"selfdestruct", "SELFDESTRUCT present"});
    if (f.has_selfdestruct && create2_created)
        out.evidence.push_back(
            {"create2-creation", analysis.creation_trace->tx_hash.to_hex()});

    if (f.has_selfdestruct && !analysis.creation_trace)
        out.degraded.push_back("creation trace unavailable: metamorphic provenance unchecked");
    if (f.has_delegatecall && !upgrade_local && !analysis.logic)
        out.degraded.push_back("logic address unresolved: logic-side upgrade selectors unchecked");

    const bool proxy_rule = (upgrade_local || upgrade_logic) && f.has_delegatecall && f.has_fallback;
    const bool strategy_rule = upgrade_local && extcall && outbound;
    const bool metamorphic_rule = f.has_selfdestruct && create2_created;

    Pattern shape = Pattern::NotUpgradeable;
    if (proxy_rule && strategy_rule)
        shape = Pattern::Mix;
    else if (proxy_rule)
        shape = Pattern::Proxy;
    else if (strategy_rule)
        shape = Pattern::DataOrStrategy;

    if (metamorphic_rule)
    {
        out.pattern = Pattern::Metamorphic;
        if (shape != Pattern::NotUpgradeable)
            out.secondary = shape;
    }
    else
    {
        out.pattern = shape;
    }

    if (out.pattern == Pattern::Proxy || out.pattern == Pattern::Mix)
        out.uups = proxy_rule && !upgrade_local && upgrade_logic;
    return out;
}

CallerDirection measure_caller_direction(const ContractAnalysis& analysis,
    std::span<const TransactionRecord> txs, const UpgradeFunctionDb& db)
{
    CallerDirection dir;
    for (const auto& tx : txs)
    {
        if (tx.to != analysis.record.address || tx.input.size() < 4)
            continue;
        Selector selector;
        std::copy(tx.input.begin(), tx.input.begin() + 4, selector.bytes.begin());
        if (db.contains(selector))
            continue;  // upgrade administration is not usage traffic

        if (!tx.from_is_contract)
            ++dir.unknown_senders;
        else if (*tx.from_is_contract)
            ++dir.contract_senders;
        else
            ++dir.eoa_senders;
    }
    return dir;
}

PatternClassification resolve_strategy_vs_data(const PatternClassification& classification,
    const ContractAnalysis& analysis, std::span<const TransactionRecord> txs,
    const UpgradeFunctionDb& db, double threshold)
{
    if (classification.pattern != Pattern::DataOrStrategy)
        return classification;

    PatternClassification out = classification;
    const CallerDirection dir = measure_caller_direction(analysis, txs, db);
    if (dir.known() == 0)
    {
        out.degraded.push_back("caller direction unknown: no classified senders");
        return out;
    }

    const std::string counts = "contracts=" + std::to_string(dir.contract_senders) +
                               " eoas=" + std::to_string(dir.eoa_senders) +
                               " unknown=" + std::to_string(dir.unknown_senders);
    const double contract_share = static_cast<double>(dir.contract_senders) / dir.known();
    if (contract_share > threshold)
    {
        out.pattern = Pattern::DataSeparation;
        out.evidence.push_back({"caller-direction", "mostly contracts: " + counts});
    }
    else if (1.0 - contract_share > threshold && !analysis.features.outbound_selectors.empty())
    {
        out.pattern = Pattern::Strategy;
        out.evidence.push_back({"caller-direction", "mostly EOAs: " + counts});
    }
    else
    {
        out.degraded.push_back("caller direction inconclusive: " + counts);
    }
    return out;
}

bool detect_hierarchy_upgrader(
    const ContractAnalysis& analysis, const std::set<Selector>& proxy_upgrade_selectors)
{
    return std::ranges::any_of(analysis.features.outbound_selectors,
        [&](const Selector& s) { return proxy_upgrade_selectors.contains(s); });
}
}  // namespace uscscan
