// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <uscscan/bytes.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace uscscan
{
struct ContractRecord
{
    Address address;
    Bytes bytecode;
    Address creator;
    Hash32 creation_tx;
    uint64_t creation_block = 0;
    bool created_by_contract = false;
};

struct TransactionRecord
{
    Hash32 hash;
    Address from;
    Address to;
    Bytes input;
    uint64_t block = 0;
    uint32_t tx_index = 0;
    bool status = true;  // false: reverted on chain
    /// Sender kind when the data source knows it; absent senders stay out of
    /// the caller-direction statistics.
    std::optional<bool> from_is_contract;
};

struct CreationTrace
{
    Hash32 tx_hash;
    Address created_address;
    std::vector<std::string> opcodes;

    [[nodiscard]] bool has_create2() const
    {
        return std::ranges::find(opcodes, "CREATE2") != opcodes.end();
    }
};

struct MigrationRecord
{
    Address old_address;
    Address new_address;
    uint64_t announcement_time = 0;  // block number or timestamp, caller's unit
    std::string note;
};

struct StorageSample
{
    Address address;
    std::map<Word32, Word32> words;

    [[nodiscard]] bool all_zero() const
    {
        return std::ranges::all_of(words, [](const auto& kv) { return kv.second.is_zero(); });
    }
};

struct TokenList
{
    std::string name;
    std::set<Address> addresses;

    [[nodiscard]] bool lists(const Address& a) const { return addresses.contains(a); }
};

struct StorageRecord
{
    Address address;
    Word32 slot;
    Word32 word;
};
}  // namespace uscscan
