// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <uscscan/audit.hpp>
#include <uscscan/classify.hpp>

#include <map>

namespace uscscan
{
/// True-positive / false-positive tally for one predicted pattern.
struct EvalRow
{
    size_t tp = 0;
    size_t fp = 0;

    [[nodiscard]] std::optional<double> precision() const noexcept
    {
        if (tp + fp == 0)
            return std::nullopt;
        return 100.0 * static_cast<double>(tp) / static_cast<double>(tp + fp);
    }
};

struct EvalMetrics
{
    std::map<Pattern, EvalRow> rows;
    EvalRow total;
    /// Labeled addresses the predictions never covered.
    size_t label_coverage_gap = 0;
};

/// Precision of predictions against a labeled sample. Labels drive the
/// denominator: only labeled addresses are judged.
EvalMetrics evaluate_precision(
    const std::map<Address, Pattern>& predictions, const std::map<Address, Pattern>& labels);

/// Two-decimal percentage with banker's rounding, e.g. "96.26".
std::string format_percent(double value);

/// Aggregated result of one corpus run. The header carries run metadata
/// (tool version, input paths, wall-clock); everything below it is a pure
/// function of the inputs and configuration.
struct PatternCount
{
    size_t raw = 0;    // every contract record
    size_t dedup = 0;  // non-factory contracts, duplicates collapsed by code hash
};

struct CorpusReport
{
    nlohmann::ordered_json header = nlohmann::ordered_json::object();
    std::map<Pattern, PatternCount> counts;
    std::map<Pattern, size_t> chain_counts;
    std::map<FindingCategory, size_t> finding_counts;
    std::vector<std::string> errors;
    std::string config_fingerprint;

    [[nodiscard]] nlohmann::ordered_json to_json() const;
};

nlohmann::ordered_json finding_to_json(const SecurityFinding& finding);
nlohmann::ordered_json chain_to_json(const UpgradeChain& chain);
nlohmann::ordered_json classification_to_json(const PatternClassification& classification);
}  // namespace uscscan
