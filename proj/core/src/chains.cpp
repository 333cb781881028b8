// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <uscscan/chains.hpp>

#include <uscscan/keccak.hpp>

#include <algorithm>

namespace uscscan
{
namespace
{
bool event_order(const UpgradeEvent& a, const UpgradeEvent& b)
{
    if (a.block != b.block)
        return a.block < b.block;
    if (a.tx_index != b.tx_index)
        return a.tx_index < b.tx_index;
    return a.tx_hash < b.tx_hash;  // full tiebreak keeps the sort total
}
}  // namespace

UpgradeChain build_upgrade_chain(
    const Address& subject, std::span<const TransactionRecord> txs, const UpgradeFunctionDb& db)
{
    UpgradeChain chain;
    chain.subject = subject;

    for (const auto& tx : txs)
    {
        if (tx.to != subject || tx.input.size() < 4)
            continue;

        const DecodedUpgradeCall decoded = decode_upgrade_call(tx.input, db);
        if (!decoded.signature)
            continue;  // not an upgrade function

        UpgradeEvent event;
        event.block = tx.block;
        event.tx_index = tx.tx_index;
        event.tx_hash = tx.hash;
        event.sender = tx.from;
        event.selector = decoded.selector;
        event.success = tx.status;
        if (!decoded.new_logic_candidates.empty())
            event.new_logic = decoded.new_logic_candidates.front();
        else
            chain.notes.push_back("upgrade call " + tx.hash.to_hex() +
                                  ": no target address decoded" +
                                  (decoded.truncated ? " (calldata truncated)" : ""));

        (tx.status ? chain.events : chain.attempted).push_back(std::move(event));
    }

    std::sort(chain.events.begin(), chain.events.end(), event_order);
    std::sort(chain.attempted.begin(), chain.attempted.end(), event_order);
    std::sort(chain.notes.begin(), chain.notes.end());
    return chain;
}

UpgradeChain build_metamorphic_chain(
    const Address& subject, std::span<const CreationEvent> creations)
{
    UpgradeChain chain;
    chain.subject = subject;
    chain.classification.pattern = Pattern::Metamorphic;

    std::vector<const CreationEvent*> ordered;
    for (const auto& creation : creations)
    {
        if (creation.record.address != subject)
            throw std::invalid_argument{"creation for " + creation.record.address.to_hex() +
                                        " in chain of " + subject.to_hex()};
        ordered.push_back(&creation);
    }
    std::sort(ordered.begin(), ordered.end(), [](const CreationEvent* a, const CreationEvent* b) {
        if (a->record.creation_block != b->record.creation_block)
            return a->record.creation_block < b->record.creation_block;
        return a->record.creation_tx < b->record.creation_tx;
    });

    // The first creation is the baseline; each later one is an upgrade if its
    // trace proves the CREATE2 route (the only way code changes at one
    // address).
    for (size_t i = 1; i < ordered.size(); ++i)
    {
        const auto& record = ordered[i]->record;
        if (!ordered[i]->trace || !ordered[i]->trace->has_create2())
        {
            chain.notes.push_back("re-creation " + record.creation_tx.to_hex() +
                                  " lacks CREATE2 in its trace; not counted as an upgrade");
            continue;
        }

        UpgradeEvent event;
        event.block = record.creation_block;
        event.tx_hash = record.creation_tx;
        event.sender = record.creator;
        event.new_code_hash = keccak256(record.bytecode);
        chain.events.push_back(std::move(event));
    }
    return chain;
}
}  // namespace uscscan
