// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <uscscan/disasm.hpp>

#include <set>

namespace uscscan
{
/// Version tag for the dispatcher template set; part of the config fingerprint
/// so reports produced by different matchers never compare equal.
inline constexpr std::string_view dispatch_template_version = "dispatch-templates-v1";

struct FeatureConfig
{
    /// How many instructions after a pushed 4-byte constant still count as
    /// the call-preparation region once the basic block has ended.
    size_t outbound_window = 64;
};

/// One matched selector comparison inside the dispatcher.
struct DispatchSite
{
    size_t push_index = 0;   // instruction index of the selector push
    size_t jumpi_index = 0;  // instruction index of the guarded JUMPI
    Selector selector;
};

/// Dispatcher shape of one instruction stream: selector comparisons plus the
/// GT/LT pivots a binary-search dispatcher routes through.
struct DispatchInfo
{
    std::vector<DispatchSite> comparisons;
    std::vector<size_t> split_push_indices;  // pivot pushes of GT/LT split nodes

    [[nodiscard]] bool has_dispatcher() const noexcept { return !comparisons.empty(); }
};

DispatchInfo analyze_dispatch(const InstructionStream& stream);

/// Selectors the contract itself dispatches on.
std::set<Selector> extract_local_selectors(const InstructionStream& stream);

/// 4-byte constants prepared for calls into other contracts.
std::set<Selector> extract_outbound_selectors(
    const InstructionStream& stream, const FeatureConfig& config = {});

/// Whether calldata matching no dispatched selector still reaches code,
/// i.e. the contract has a fallback path.
bool detect_fallback(const InstructionStream& stream);

struct BytecodeFeatures
{
    bool has_call = false;
    bool has_staticcall = false;
    bool has_delegatecall = false;
    bool has_selfdestruct = false;
    bool has_create2 = false;
    bool has_fallback = false;
    std::set<Selector> local_selectors;
    std::set<Selector> outbound_selectors;

    bool operator==(const BytecodeFeatures&) const = default;
};

BytecodeFeatures extract_features(const InstructionStream& stream, const FeatureConfig& config = {});

inline BytecodeFeatures extract_features(BytesView code, const FeatureConfig& config = {})
{
    return extract_features(disassemble(code), config);
}
}  // namespace uscscan
