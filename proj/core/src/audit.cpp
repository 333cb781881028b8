// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <uscscan/audit.hpp>

#include <uscscan/keccak.hpp>

#include <algorithm>
#include <map>

namespace uscscan
{
namespace
{
using nlohmann::ordered_json;
}

std::string_view to_string(FindingCategory c) noexcept
{
    switch (c)
    {
    case FindingCategory::MissingAccessControl:
        return "MissingAccessControl";
    case FindingCategory::UninitializedLogicCaseI:
        return "UninitializedLogicCaseI";
    case FindingCategory::UninitializedLogicCaseII:
        return "UninitializedLogicCaseII";
    case FindingCategory::SameAddress:
        return "SameAddress";
    case FindingCategory::ZeroAddress:
        return "ZeroAddress";
    case FindingCategory::EOATarget:
        return "EOATarget";
    case FindingCategory::EmptyContractTarget:
        return "EmptyContractTarget";
    case FindingCategory::NonUpgradeableUUPSTarget:
        return "NonUpgradeableUUPSTarget";
    case FindingCategory::OldContractStillUsed:
        return "OldContractStillUsed";
    case FindingCategory::StaleTokenListing:
        return "StaleTokenListing";
    case FindingCategory::HierarchyUpgrade:
        return "HierarchyUpgrade";
    }
    return "MissingAccessControl";
}

std::string_view to_string(Severity s) noexcept
{
    switch (s)
    {
    case Severity::Info:
        return "info";
    case Severity::Warn:
        return "warn";
    case Severity::Critical:
        return "critical";
    }
    return "info";
}

Severity severity_of(FindingCategory c) noexcept
{
    switch (c)
    {
    case FindingCategory::NonUpgradeableUUPSTarget:
    case FindingCategory::UninitializedLogicCaseI:
    case FindingCategory::UninitializedLogicCaseII:
        return Severity::Critical;
    case FindingCategory::ZeroAddress:
    case FindingCategory::EOATarget:
    case FindingCategory::EmptyContractTarget:
    case FindingCategory::MissingAccessControl:
        return Severity::Warn;
    case FindingCategory::SameAddress:
    case FindingCategory::OldContractStillUsed:
    case FindingCategory::StaleTokenListing:
    case FindingCategory::HierarchyUpgrade:
        return Severity::Info;
    }
    return Severity::Info;
}

SecurityFinding make_finding(FindingCategory category, const Address& subject,
    ordered_json evidence, std::optional<size_t> chain_position)
{
    return {category, severity_of(category), subject, std::move(evidence), chain_position};
}

void sort_findings(std::vector<SecurityFinding>& findings)
{
    std::stable_sort(findings.begin(), findings.end(),
        [](const SecurityFinding& a, const SecurityFinding& b) {
            if (a.subject != b.subject)
                return a.subject < b.subject;
            if (a.category != b.category)
                return a.category < b.category;
            const size_t pa = a.chain_position.value_or(SIZE_MAX);
            const size_t pb = b.chain_position.value_or(SIZE_MAX);
            if (pa != pb)
                return pa < pb;
            return a.evidence.dump() < b.evidence.dump();
        });
}

AuditOutcome audit_logic_targets(const UpgradeChain& chain, const CodeLookup& code_lookup,
    const FeaturesLookup& features_lookup, const UpgradeFunctionDb& db)
{
    AuditOutcome outcome;
    const bool uups_chain = chain.classification.uups;

    const std::optional<Address>* previous = nullptr;
    for (size_t position = 0; position < chain.events.size(); ++position)
    {
        const UpgradeEvent& event = chain.events[position];
        if (event.new_logic)
        {
            const Address& target = *event.new_logic;
            const auto note = [&](FindingCategory category, ordered_json evidence) {
                evidence["target"] = target.to_hex();
                evidence["tx"] = event.tx_hash.to_hex();
                outcome.findings.push_back(
                    make_finding(category, chain.subject, std::move(evidence), position));
            };

            if (previous != nullptr && previous->has_value() && **previous == target)
                note(FindingCategory::SameAddress, {{"repeats_position", position - 1}});

            if (target.is_zero())
            {
                note(FindingCategory::ZeroAddress, {});
            }
            else
            {
                const std::optional<Bytes> code = code_lookup(target);
                if (!code)
                {
                    outcome.unresolved.push_back("code unavailable for " + target.to_hex() +
                                                 " (chain " + chain.subject.to_hex() +
                                                 ", position " + std::to_string(position) +
                                                 "): target checks skipped");
                }
                else if (code->empty())
                {
                    note(FindingCategory::EOATarget, {});
                    if (uups_chain)
                        note(FindingCategory::NonUpgradeableUUPSTarget, {{"reason", "no code"}});
                }
                else
                {
                    const std::optional<BytecodeFeatures> features = features_lookup(target);
                    if (!features)
                    {
                        outcome.unresolved.push_back(
                            "features unavailable for " + target.to_hex() + " (chain " +
                            chain.subject.to_hex() + ", position " + std::to_string(position) +
                            "): target checks skipped");
                    }
                    else
                    {
                        if (features->local_selectors.empty() && !features->has_fallback)
                            note(FindingCategory::EmptyContractTarget,
                                {{"code_size", code->size()}});
                        if (uups_chain)
                        {
                            const bool can_upgrade_again = std::ranges::any_of(
                                features->local_selectors,
                                [&](const Selector& s) { return db.contains(s); });
                            if (!can_upgrade_again)
                                note(FindingCategory::NonUpgradeableUUPSTarget,
                                    {{"reason", "no upgrade selector in target"}});
                        }
                    }
                }
            }
        }
        previous = &event.new_logic;
    }
    return outcome;
}

std::vector<SecurityFinding> audit_access_control(const UpgradeChain& chain)
{
    std::vector<SecurityFinding> findings;
    if (chain.events.size() < 2)
        return findings;

    std::map<Address, size_t> sender_counts;
    for (const auto& event : chain.events)
        ++sender_counts[event.sender];
    if (sender_counts.size() < 2)
        return findings;

    // Several distinct senders upgrading, some exactly once, reads like
    // "whoever calls first wins" rather than shared administration.
    std::vector<std::string> one_shot;
    for (const auto& [sender, count] : sender_counts)
        if (count == 1)
            one_shot.push_back(sender.to_hex());
    if (one_shot.empty())
        return findings;

    ordered_json evidence;
    evidence["distinct_senders"] = sender_counts.size();
    evidence["events"] = chain.events.size();
    evidence["one_shot_senders"] = one_shot;
    std::vector<std::string> attempted;
    for (const auto& event : chain.attempted)
        attempted.push_back(event.sender.to_hex());
    std::sort(attempted.begin(), attempted.end());
    attempted.erase(std::unique(attempted.begin(), attempted.end()), attempted.end());
    if (!attempted.empty())
        evidence["rejected_senders"] = attempted;
    evidence["note"] = "candidate only: restrictive checks must be confirmed manually";

    findings.push_back(
        make_finding(FindingCategory::MissingAccessControl, chain.subject, std::move(evidence)));
    return findings;
}

std::vector<SecurityFinding> audit_uninitialized_logic(const Address& logic_address,
    const BytecodeFeatures& logic_features, const std::set<Selector>& logic_upgrade_local,
    const StorageSample& sample)
{
    std::vector<SecurityFinding> findings;
    if (!sample.all_zero())
        return findings;

    ordered_json base;
    base["sampled_slots"] = sample.words.size();
    base["all_zero"] = true;

    // Case I: nobody initialized the logic contract, so anyone can become its
    // owner and reach a SELFDESTRUCT, bricking every proxy pointing here.
    if (logic_features.has_selfdestruct)
    {
        ordered_json evidence = base;
        evidence["selfdestruct"] = true;
        findings.push_back(
            make_finding(FindingCategory::UninitializedLogicCaseI, logic_address, evidence));
    }

    // Case II: the logic contract carries its own upgrade-and-call entry
    // point; an uninitialized one lets anyone route it through an attacker
    // contract that self-destructs it.
    static const Selector upgrade_and_call = Selector::from_hex("4f1ef286");
    if (!logic_upgrade_local.empty() && logic_features.local_selectors.contains(upgrade_and_call))
    {
        ordered_json evidence = base;
        evidence["upgrade_and_call"] = upgrade_and_call.to_hex();
        findings.push_back(
            make_finding(FindingCategory::UninitializedLogicCaseII, logic_address, evidence));
    }
    return findings;
}

std::vector<SecurityFinding> audit_version(std::span<const MigrationRecord> migrations,
    std::span<const TransactionRecord> txs, std::span<const TokenList> token_lists)
{
    std::vector<SecurityFinding> findings;
    for (const auto& migration : migrations)
    {
        // Successful traffic into the old contract after the announcement.
        std::vector<const TransactionRecord*> late;
        for (const auto& tx : txs)
            if (tx.to == migration.old_address && tx.status && tx.block > migration.announcement_time)
                late.push_back(&tx);
        if (!late.empty())
        {
            std::sort(late.begin(), late.end(),
                [](const TransactionRecord* a, const TransactionRecord* b) {
                    if (a->block != b->block)
                        return a->block < b->block;
                    return a->tx_index < b->tx_index;
                });
            ordered_json evidence;
            evidence["new_address"] = migration.new_address.to_hex();
            evidence["announcement_time"] = migration.announcement_time;
            evidence["transaction_count"] = late.size();
            ordered_json hashes = ordered_json::array();
            for (size_t i = 0; i < late.size() && i < 16; ++i)
                hashes.push_back(late[i]->hash.to_hex());
            evidence["transactions"] = std::move(hashes);
            findings.push_back(make_finding(
                FindingCategory::OldContractStillUsed, migration.old_address, std::move(evidence)));
        }

        // Token lists that kept the old address but never picked up the new
        // one keep routing users to dead code.
        for (const auto& list : token_lists)
        {
            if (list.lists(migration.old_address) && !list.lists(migration.new_address))
            {
                ordered_json evidence;
                evidence["token_list"] = list.name;
                evidence["new_address"] = migration.new_address.to_hex();
                findings.push_back(make_finding(FindingCategory::StaleTokenListing,
                    migration.old_address, std::move(evidence)));
            }
        }
    }
    return findings;
}
}  // namespace uscscan
