// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <uscscan/classify.hpp>

namespace uscscan
{
/// One upgrade: either an upgrade-function call or, for metamorphic
/// contracts, a redeployment at the same address.
struct UpgradeEvent
{
    uint64_t block = 0;
    uint32_t tx_index = 0;
    Hash32 tx_hash;
    Address sender;
    Selector selector;                  // zero for redeployments
    std::optional<Address> new_logic;   // absent: calldata did not decode
    std::optional<Hash32> new_code_hash;  // redeployments only
    bool success = true;
};

struct UpgradeChain
{
    Address subject;
    PatternClassification classification;
    std::vector<UpgradeEvent> events;     // successful, in (block, tx_index) order
    std::vector<UpgradeEvent> attempted;  // reverted upgrade calls, same order
    std::vector<std::string> notes;
};

/// Orders every upgrade-function call to `subject` into a chain. Input order
/// is irrelevant; only (block, tx_index) decides. Calls whose calldata
/// cannot produce a target address still appear, flagged in `notes`.
UpgradeChain build_upgrade_chain(const Address& subject,
    std::span<const TransactionRecord> txs, const UpgradeFunctionDb& db);

struct CreationEvent
{
    ContractRecord record;
    std::optional<CreationTrace> trace;
};

/// Chains the re-creations of one metamorphic address, keyed by code hash.
/// Every creation after the first must carry CREATE2 in its trace to count.
/// Throws std::invalid_argument when records for other addresses sneak in.
UpgradeChain build_metamorphic_chain(
    const Address& subject, std::span<const CreationEvent> creations);
}  // namespace uscscan
