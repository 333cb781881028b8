// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <uscscan/features.hpp>

#include <algorithm>
#include <map>

namespace uscscan
{
namespace
{
Selector zero_extended(const Bytes& operand)
{
    // Compilers shorten selectors with leading zero bytes to narrower pushes;
    // the compared value is always the left-padded 4-byte selector.
    Selector out;
    std::copy(operand.begin(), operand.end(), out.bytes.begin() + (4 - operand.size()));
    return out;
}

bool is_extcall(uint8_t opcode) noexcept
{
    return opcode == op(OpCode::CALL) || opcode == op(OpCode::STATICCALL) ||
           opcode == op(OpCode::DELEGATECALL);
}

bool ends_basic_block(uint8_t opcode) noexcept
{
    switch (opcode)
    {
    case op(OpCode::JUMP):
    case op(OpCode::JUMPI):
    case op(OpCode::STOP):
    case op(OpCode::RETURN):
    case op(OpCode::REVERT):
    case op(OpCode::INVALID):
    case op(OpCode::SELFDESTRUCT):
        return true;
    default:
        return false;
    }
}

bool is_target_push(const Instruction& instr) noexcept
{
    return instr.is_push() && !instr.truncated;
}
}  // namespace

DispatchInfo analyze_dispatch(const InstructionStream& stream)
{
    DispatchInfo info;
    const auto& ins = stream.instructions;

    // Match-and-jump templates, anchored on the selector push:
    //   PUSHk sel, EQ, PUSHn target, JUMPI            (k <= 4)
    //   PUSHk sel, SUB, ISZERO, PUSHn target, JUMPI
    // and the pivot nodes a binary-search dispatcher splits on:
    //   PUSHk sel, GT|LT, PUSHn target, JUMPI
    // A DUP in front of the push belongs to the template but needs no check;
    // matching is anchored on the push itself.
    for (size_t i = 0; i < ins.size(); ++i)
    {
        const auto& push = ins[i];
        if (!push.is_push() || push.truncated)
            continue;
        if (push.operand.size() > 4)
            continue;

        const auto at = [&](size_t k) -> const Instruction* {
            return i + k < ins.size() ? &ins[i + k] : nullptr;
        };
        const auto* n1 = at(1);
        if (n1 == nullptr)
            continue;

        if (n1->opcode == op(OpCode::EQ))
        {
            const auto* n2 = at(2);
            const auto* n3 = at(3);
            if (n2 != nullptr && n3 != nullptr && is_target_push(*n2) &&
                n3->opcode == op(OpCode::JUMPI))
                info.comparisons.push_back({i, i + 3, zero_extended(push.operand)});
        }
        else if (n1->opcode == op(OpCode::SUB))
        {
            const auto* n2 = at(2);
            const auto* n3 = at(3);
            const auto* n4 = at(4);
            if (n2 != nullptr && n2->opcode == op(OpCode::ISZERO) && n3 != nullptr &&
                is_target_push(*n3) && n4 != nullptr && n4->opcode == op(OpCode::JUMPI))
                info.comparisons.push_back({i, i + 4, zero_extended(push.operand)});
        }
        else if (n1->opcode == op(OpCode::GT) || n1->opcode == op(OpCode::LT))
        {
            const auto* n2 = at(2);
            const auto* n3 = at(3);
            if (n2 != nullptr && n3 != nullptr && is_target_push(*n2) &&
                n3->opcode == op(OpCode::JUMPI))
                info.split_push_indices.push_back(i);
        }
    }
    return info;
}

std::set<Selector> extract_local_selectors(const InstructionStream& stream)
{
    std::set<Selector> out;
    for (const auto& site : analyze_dispatch(stream).comparisons)
        out.insert(site.selector);
    return out;
}

std::set<Selector> extract_outbound_selectors(
    const InstructionStream& stream, const FeatureConfig& config)
{
    const auto& ins = stream.instructions;
    const DispatchInfo dispatch = analyze_dispatch(stream);

    std::set<size_t> dispatch_pushes;
    for (const auto& site : dispatch.comparisons)
        dispatch_pushes.insert(site.push_index);
    dispatch_pushes.insert(dispatch.split_push_indices.begin(), dispatch.split_push_indices.end());

    std::set<Selector> out;
    for (size_t i = 0; i < ins.size(); ++i)
    {
        const auto& push = ins[i];
        if (push.opcode != op(OpCode::PUSH4) || push.truncated)
            continue;
        if (dispatch_pushes.contains(i))
            continue;
        // PUSH4 feeding an AND is a selector mask, not a call argument.
        if (i + 1 < ins.size() && ins[i + 1].opcode == op(OpCode::AND))
            continue;

        // The constant must flow into call preparation: an external call in
        // the same basic block or within the window, or an MSTORE in that
        // region with an external call somewhere later.
        bool in_block = true;
        bool stored = false;
        bool qualifies = false;
        for (size_t j = i + 1; j < ins.size(); ++j)
        {
            const size_t distance = j - i;
            const bool in_region = in_block || distance <= config.outbound_window;
            const uint8_t opcode = ins[j].opcode;

            if (is_extcall(opcode) && (in_region || stored))
            {
                qualifies = true;
                break;
            }
            if (opcode == op(OpCode::MSTORE) && in_region)
                stored = true;
            if (ends_basic_block(opcode))
                in_block = false;
            if (!in_region && !stored)
                break;
        }
        if (qualifies)
            out.insert(zero_extended(push.operand));
    }
    return out;
}

bool detect_fallback(const InstructionStream& stream)
{
    const auto& ins = stream.instructions;
    const DispatchInfo dispatch = analyze_dispatch(stream);

    if (!dispatch.has_dispatcher())
    {
        // Forwarder shape: no selector dispatch at all, everything lands in
        // the body. Counted as a fallback only when the body calls out.
        if (ins.empty())
            return false;
        return std::ranges::any_of(ins, [](const Instruction& i) { return is_extcall(i.opcode); });
    }

    // Walk the fall-through after the last selector comparison. Stack
    // shuffling and calldata probes are neutral; a terminator decides. A
    // static `PUSH tag, JUMP` is followed, since dispatcher chains often end
    // by jumping to a shared revert block instead of falling into one.
    size_t last_jumpi = 0;
    for (const auto& site : dispatch.comparisons)
        last_jumpi = std::max(last_jumpi, site.jumpi_index);

    std::map<uint32_t, size_t> index_by_offset;
    for (size_t j = 0; j < ins.size(); ++j)
        index_by_offset.emplace(ins[j].offset, j);

    size_t j = last_jumpi + 1;
    for (int hops = 0; hops < 8; ++j)
    {
        if (j >= ins.size())
            return false;  // ran off the end: implicit STOP
        const uint8_t opcode = ins[j].opcode;
        if (opcode == op(OpCode::REVERT) || opcode == op(OpCode::STOP) ||
            opcode == op(OpCode::INVALID))
            return false;
        if (opcode == op(OpCode::JUMP))
        {
            if (j == 0)
                return true;
            const auto& prev = ins[j - 1];
            if (!prev.is_push() || prev.truncated || prev.operand.size() > 4)
                return true;  // dynamic jump: assume calldata reaches code
            uint32_t target = 0;
            for (const auto b : prev.operand)
                target = (target << 8) | b;
            const auto it = index_by_offset.find(target);
            if (it == index_by_offset.end() || ins[it->second].opcode != op(OpCode::JUMPDEST))
                return true;
            j = it->second;
            ++hops;
            continue;
        }
        if (opcode == op(OpCode::JUMPDEST) || is_push(opcode) || opcode == op(OpCode::PUSH0) ||
            is_dup(opcode) || is_swap(opcode) || opcode == op(OpCode::POP) ||
            opcode == op(OpCode::CALLVALUE) || opcode == op(OpCode::CALLDATASIZE) ||
            opcode == op(OpCode::ISZERO))
            continue;
        return true;  // real work before any revert: calldata reaches code
    }
    return true;  // jump-chain budget exhausted
}

BytecodeFeatures extract_features(const InstructionStream& stream, const FeatureConfig& config)
{
    BytecodeFeatures f;
    for (const auto& instr : stream.instructions)
    {
        switch (instr.opcode)
        {
        case op(OpCode::CALL):
            f.has_call = true;
            break;
        case op(OpCode::STATICCALL):
            f.has_staticcall = true;
            break;
        case op(OpCode::DELEGATECALL):
            f.has_delegatecall = true;
            break;
        case op(OpCode::SELFDESTRUCT):
            f.has_selfdestruct = true;
            break;
        case op(OpCode::CREATE2):
            f.has_create2 = true;
            break;
        default:
            break;
        }
    }
    f.local_selectors = extract_local_selectors(stream);
    f.outbound_selectors = extract_outbound_selectors(stream, config);
    f.has_fallback = detect_fallback(stream);
    return f;
}
}  // namespace uscscan
