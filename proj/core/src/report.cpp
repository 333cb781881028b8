// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <uscscan/report.hpp>

#include <cmath>
#include <cstdio>

namespace uscscan
{
using nlohmann::ordered_json;

EvalMetrics evaluate_precision(
    const std::map<Address, Pattern>& predictions, const std::map<Address, Pattern>& labels)
{
    EvalMetrics metrics;
    for (const Pattern p : all_patterns)
        metrics.rows[p];

    for (const auto& [address, label] : labels)
    {
        const auto it = predictions.find(address);
        if (it == predictions.end())
        {
            ++metrics.label_coverage_gap;
            continue;
        }
        EvalRow& row = metrics.rows[it->second];
        if (it->second == label)
        {
            ++row.tp;
            ++metrics.total.tp;
        }
        else
        {
            ++row.fp;
            ++metrics.total.fp;
        }
    }
    return metrics;
}

std::string format_percent(double value)
{
    // Round half to even at two decimals; the default FP rounding mode does
    // exactly that for the tie case.
    const long long cents = static_cast<long long>(std::nearbyint(value * 100.0));
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld.%02lld", cents / 100, std::llabs(cents % 100));
    return buf;
}

ordered_json classification_to_json(const PatternClassification& classification)
{
    ordered_json out;
    out["pattern"] = to_string(classification.pattern);
    out["uups"] = classification.uups;
    if (classification.secondary)
        out["secondary"] = to_string(*classification.secondary);
    ordered_json evidence = ordered_json::array();
    for (const auto& clause : classification.evidence)
        evidence.push_back(ordered_json{{"clause", clause.clause}, {"value", clause.evidence}});
    out["evidence"] = std::move(evidence);
    if (!classification.degraded.empty())
        out["degraded"] = classification.degraded;
    return out;
}

namespace
{
ordered_json event_to_json(const UpgradeEvent& event)
{
    ordered_json out;
    out["block"] = event.block;
    out["tx_index"] = event.tx_index;
    out["tx"] = event.tx_hash.to_hex();
    out["sender"] = event.sender.to_hex();
    if (!event.selector.is_zero())
        out["selector"] = event.selector.to_hex();
    if (event.new_logic)
        out["new_logic"] = event.new_logic->to_hex();
    if (event.new_code_hash)
        out["new_code_hash"] = event.new_code_hash->to_hex();
    return out;
}
}  // namespace

ordered_json chain_to_json(const UpgradeChain& chain)
{
    ordered_json out;
    out["subject"] = chain.subject.to_hex();
    out["pattern"] = to_string(chain.classification.pattern);
    out["uups"] = chain.classification.uups;
    out["events"] = ordered_json::array();
    for (const auto& event : chain.events)
        out["events"].push_back(event_to_json(event));
    if (!chain.attempted.empty())
    {
        out["attempted"] = ordered_json::array();
        for (const auto& event : chain.attempted)
            out["attempted"].push_back(event_to_json(event));
    }
    if (!chain.notes.empty())
        out["notes"] = chain.notes;
    return out;
}

ordered_json finding_to_json(const SecurityFinding& finding)
{
    ordered_json out;
    out["category"] = to_string(finding.category);
    out["severity"] = to_string(finding.severity);
    out["subject"] = finding.subject.to_hex();
    out["evidence"] = finding.evidence;
    if (finding.chain_position)
        out["chain_position"] = *finding.chain_position;
    return out;
}

ordered_json CorpusReport::to_json() const
{
    ordered_json out;
    out["header"] = header;

    ordered_json count_obj;
    for (const Pattern p : all_patterns)
    {
        const auto it = counts.find(p);
        const PatternCount c = it != counts.end() ? it->second : PatternCount{};
        count_obj[std::string{to_string(p)}] = ordered_json{{"raw", c.raw}, {"dedup", c.dedup}};
    }
    out["counts"] = std::move(count_obj);

    ordered_json chain_obj;
    for (const Pattern p : all_patterns)
    {
        const auto it = chain_counts.find(p);
        chain_obj[std::string{to_string(p)}] = it != chain_counts.end() ? it->second : 0;
    }
    out["chains"] = std::move(chain_obj);

    ordered_json finding_obj;
    for (const FindingCategory c : all_categories)
    {
        const auto it = finding_counts.find(c);
        finding_obj[std::string{to_string(c)}] = it != finding_counts.end() ? it->second : 0;
    }
    out["findings"] = std::move(finding_obj);

    out["errors"] = errors;
    out["config_fingerprint"] = config_fingerprint;
    return out;
}
}  // namespace uscscan
