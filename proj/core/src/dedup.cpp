// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <uscscan/dedup.hpp>

#include <uscscan/keccak.hpp>

#include <algorithm>
#include <map>

namespace uscscan
{
namespace
{
bool earlier_creation(const ContractRecord& a, const ContractRecord& b)
{
    if (a.creation_block != b.creation_block)
        return a.creation_block < b.creation_block;
    return a.address < b.address;
}
}  // namespace

std::vector<BytecodeGroup> dedup_group(std::span<const ContractRecord> records)
{
    std::map<Hash32, std::vector<const ContractRecord*>> by_hash;
    for (const auto& record : records)
        by_hash[keccak256(record.bytecode)].push_back(&record);

    std::vector<BytecodeGroup> groups;
    groups.reserve(by_hash.size());
    for (auto& [hash, members] : by_hash)
    {
        std::sort(members.begin(), members.end(),
            [](const ContractRecord* a, const ContractRecord* b) {
                return earlier_creation(*a, *b);
            });

        BytecodeGroup group;
        group.code_hash = hash;
        group.representative = *members.front();
        for (const auto* member : members)
        {
            group.members.push_back(member->address);
            if (!member->created_by_contract)
                ++group.non_factory_members;
        }
        groups.push_back(std::move(group));
    }

    std::sort(groups.begin(), groups.end(), [](const BytecodeGroup& a, const BytecodeGroup& b) {
        if (a.representative.creation_block != b.representative.creation_block)
            return a.representative.creation_block < b.representative.creation_block;
        if (a.representative.address != b.representative.address)
            return a.representative.address < b.representative.address;
        return a.code_hash < b.code_hash;
    });
    return groups;
}
}  // namespace uscscan
