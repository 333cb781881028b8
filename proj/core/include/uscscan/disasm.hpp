// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <uscscan/bytes.hpp>
#include <uscscan/opcodes.hpp>

#include <string>
#include <vector>

namespace uscscan
{
/// One decoded instruction. For PUSH1..PUSH32 `operand` holds the immediate
/// bytes actually present in the code; a push cut short by the end of the
/// instruction region keeps whatever bytes remain and sets `truncated`.
struct Instruction
{
    uint32_t offset = 0;
    uint8_t opcode = 0;
    Bytes operand;
    bool truncated = false;

    [[nodiscard]] std::string_view name() const noexcept { return mnemonic(opcode); }
    [[nodiscard]] bool is_push() const noexcept { return uscscan::is_push(opcode); }
    [[nodiscard]] size_t encoded_size() const noexcept { return 1 + operand.size(); }
};

/// Total decoding of a runtime byte string: every input byte belongs to
/// exactly one instruction or to the metadata trailer.
struct InstructionStream
{
    Bytes code;
    std::vector<Instruction> instructions;
    Bytes metadata_trailer;  // compiler metadata incl. its 2-byte length suffix, possibly empty

    /// Rebuilds the exact input bytes from the decoded parts.
    [[nodiscard]] Bytes reserialize() const;
};

/// Length of a well-formed compiler metadata trailer at the end of `code`
/// (content plus the trailing 2-byte big-endian length), or 0 if the tail
/// does not parse as a single CBOR map of the advertised length.
size_t metadata_trailer_size(BytesView code);

InstructionStream disassemble(BytesView code);

/// Human-readable listing, one instruction per line.
std::string format_listing(const InstructionStream& stream);
}  // namespace uscscan
