// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <uscscan/records.hpp>

namespace uscscan
{
/// Contracts sharing byte-identical runtime code (metadata included; a
/// different trailer is a different deployment artifact).
struct BytecodeGroup
{
    Hash32 code_hash;
    ContractRecord representative;  // earliest creation wins
    std::vector<Address> members;
    size_t non_factory_members = 0;

    /// True when every member was deployed by a contract; such groups are
    /// mass-produced clones and drop out of deduplicated counts entirely.
    [[nodiscard]] bool factory_created() const noexcept { return non_factory_members == 0; }
};

/// Groups records by code hash. Group order and member order follow the
/// earliest (creation_block, address) so results never depend on input
/// order.
std::vector<BytecodeGroup> dedup_group(std::span<const ContractRecord> records);
}  // namespace uscscan
