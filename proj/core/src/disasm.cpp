// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <uscscan/disasm.hpp>

#include <sstream>

namespace uscscan
{
namespace
{
// Minimal CBOR walk, just enough to validate the definite-length maps the
// Solidity compiler emits ({ipfs: ..., solc: ...} and older variants).
// Returns the position after one item, or npos on malformed/indefinite data.
constexpr size_t npos = static_cast<size_t>(-1);

size_t skip_cbor_item(BytesView data, size_t pos, int depth)
{
    if (depth > 8 || pos >= data.size())
        return npos;
    const uint8_t head = data[pos++];
    const int major = head >> 5;
    const int info = head & 0x1f;

    uint64_t value = 0;
    if (info < 24)
    {
        value = static_cast<uint64_t>(info);
    }
    else if (info <= 27)
    {
        const size_t extra = size_t{1} << (info - 24);
        if (pos + extra > data.size())
            return npos;
        for (size_t i = 0; i < extra; ++i)
            value = (value << 8) | data[pos + i];
        pos += extra;
    }
    else
    {
        return npos;  // indefinite lengths and reserved encodings
    }

    switch (major)
    {
    case 0:  // unsigned int
    case 1:  // negative int
        return pos;
    case 2:  // byte string
    case 3:  // text string
        if (value > data.size() || pos + value > data.size())
            return npos;
        return pos + value;
    case 4:  // array
        for (uint64_t i = 0; i < value; ++i)
            if ((pos = skip_cbor_item(data, pos, depth + 1)) == npos)
                return npos;
        return pos;
    case 5:  // map
        for (uint64_t i = 0; i < 2 * value; ++i)
            if ((pos = skip_cbor_item(data, pos, depth + 1)) == npos)
                return npos;
        return pos;
    case 6:  // tag
        return skip_cbor_item(data, pos, depth + 1);
    default:  // major 7: simple values / floats, payload already read above
        return pos;
    }
}
}  // namespace

size_t metadata_trailer_size(BytesView code)
{
    if (code.size() < 2)
        return 0;
    const size_t content_len = (static_cast<size_t>(code[code.size() - 2]) << 8) | code[code.size() - 1];
    if (content_len == 0 || content_len + 2 > code.size())
        return 0;

    const BytesView content = code.subspan(code.size() - 2 - content_len, content_len);
    if ((content[0] >> 5) != 5)
        return 0;  // must be a CBOR map
    if (skip_cbor_item(content, 0, 0) != content.size())
        return 0;  // must consume the advertised length exactly
    return content_len + 2;
}

InstructionStream disassemble(BytesView code)
{
    InstructionStream stream;
    stream.code.assign(code.begin(), code.end());

    const size_t trailer = metadata_trailer_size(code);
    const size_t region_end = code.size() - trailer;
    stream.metadata_trailer.assign(code.begin() + region_end, code.end());

    size_t pos = 0;
    while (pos < region_end)
    {
        Instruction instr;
        instr.offset = static_cast<uint32_t>(pos);
        instr.opcode = code[pos];
        ++pos;

        const size_t width = push_width(instr.opcode);
        if (width > 0)
        {
            const size_t available = region_end - pos;
            const size_t take = width <= available ? width : available;
            instr.operand.assign(code.begin() + pos, code.begin() + pos + take);
            instr.truncated = take < width;
            pos += take;
        }
        stream.instructions.push_back(std::move(instr));
    }
    return stream;
}

Bytes InstructionStream::reserialize() const
{
    Bytes out;
    out.reserve(code.size());
    for (const auto& instr : instructions)
    {
        out.push_back(instr.opcode);
        out.insert(out.end(), instr.operand.begin(), instr.operand.end());
    }
    out.insert(out.end(), metadata_trailer.begin(), metadata_trailer.end());
    return out;
}

std::string format_listing(const InstructionStream& stream)
{
    std::ostringstream out;
    out << std::hex;
    for (const auto& instr : stream.instructions)
    {
        out << "0x";
        out.width(4);
        out.fill('0');
        out << instr.offset << "  " << instr.name();
        if (!is_known_opcode(instr.opcode))
            out << " (0x" << to_hex_no_prefix(BytesView{&instr.opcode, 1}) << ")";
        if (!instr.operand.empty())
            out << " " << to_hex(instr.operand);
        if (instr.truncated)
            out << "  ; truncated";
        out << "\n";
    }
    if (!stream.metadata_trailer.empty())
        out << ";; metadata " << to_hex(stream.metadata_trailer) << "\n";
    return out.str();
}
}  // namespace uscscan
