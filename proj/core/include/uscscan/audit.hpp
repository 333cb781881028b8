// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <uscscan/chains.hpp>

#include <nlohmann/json.hpp>

#include <functional>

namespace uscscan
{
enum class FindingCategory
{
    MissingAccessControl,
    UninitializedLogicCaseI,
    UninitializedLogicCaseII,
    SameAddress,
    ZeroAddress,
    EOATarget,
    EmptyContractTarget,
    NonUpgradeableUUPSTarget,
    OldContractStillUsed,
    StaleTokenListing,
    HierarchyUpgrade,
};

enum class Severity
{
    Info,
    Warn,
    Critical,
};

std::string_view to_string(FindingCategory c) noexcept;
std::string_view to_string(Severity s) noexcept;

/// The category fixes the severity; judgment calls live in the evidence.
Severity severity_of(FindingCategory c) noexcept;

inline constexpr std::array<FindingCategory, 11> all_categories{
    FindingCategory::MissingAccessControl, FindingCategory::UninitializedLogicCaseI,
    FindingCategory::UninitializedLogicCaseII, FindingCategory::SameAddress,
    FindingCategory::ZeroAddress, FindingCategory::EOATarget,
    FindingCategory::EmptyContractTarget, FindingCategory::NonUpgradeableUUPSTarget,
    FindingCategory::OldContractStillUsed, FindingCategory::StaleTokenListing,
    FindingCategory::HierarchyUpgrade};

struct SecurityFinding
{
    FindingCategory category{};
    Severity severity{};
    Address subject;
    nlohmann::ordered_json evidence;
    std::optional<size_t> chain_position;
};

SecurityFinding make_finding(
    FindingCategory category, const Address& subject, nlohmann::ordered_json evidence,
    std::optional<size_t> chain_position = std::nullopt);

/// Deterministic order for report output.
void sort_findings(std::vector<SecurityFinding>& findings);

using CodeLookup = std::function<std::optional<Bytes>(const Address&)>;
using FeaturesLookup = std::function<std::optional<BytecodeFeatures>(const Address&)>;

struct AuditOutcome
{
    std::vector<SecurityFinding> findings;
    /// Targets whose code could not be fetched; checks on them were skipped,
    /// never silently passed.
    std::vector<std::string> unresolved;
};

/// Looks at every successful upgrade's target: zero addresses, plain
/// accounts, contracts with nothing to call, and (on chains whose upgrade
/// function lives in the logic contract) targets that would freeze the proxy
/// because they cannot upgrade again.
AuditOutcome audit_logic_targets(const UpgradeChain& chain, const CodeLookup& code_lookup,
    const FeaturesLookup& features_lookup, const UpgradeFunctionDb& db);

/// Flags chains whose upgrades come from several senders with no returning
/// sender pattern; a candidate for missing access control, to be confirmed
/// manually.
std::vector<SecurityFinding> audit_access_control(const UpgradeChain& chain);

/// Storage-sample checks on a proxy's logic contract: an uninitialized logic
/// contract that can self-destruct (case I) or be upgraded directly through
/// its own upgrade-and-call path (case II) can be destroyed by anyone.
std::vector<SecurityFinding> audit_uninitialized_logic(const Address& logic_address,
    const BytecodeFeatures& logic_features, const std::set<Selector>& logic_upgrade_local,
    const StorageSample& sample);

/// Version hygiene around announced migrations: traffic still hitting the
/// old contract, and token lists that kept the old address but never added
/// the new one.
std::vector<SecurityFinding> audit_version(std::span<const MigrationRecord> migrations,
    std::span<const TransactionRecord> txs, std::span<const TokenList> token_lists);
}  // namespace uscscan
