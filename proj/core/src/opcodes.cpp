// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <uscscan/opcodes.hpp>

#include <array>
#include <string>

namespace uscscan
{
namespace
{
struct OpTable
{
    std::array<const char*, 256> names{};

    OpTable()
    {
        names.fill(nullptr);
        names[0x00] = "STOP";
        names[0x01] = "ADD";
        names[0x02] = "MUL";
        names[0x03] = "SUB";
        names[0x04] = "DIV";
        names[0x05] = "SDIV";
        names[0x06] = "MOD";
        names[0x07] = "SMOD";
        names[0x08] = "ADDMOD";
        names[0x09] = "MULMOD";
        names[0x0a] = "EXP";
        names[0x0b] = "SIGNEXTEND";
        names[0x10] = "LT";
        names[0x11] = "GT";
        names[0x12] = "SLT";
        names[0x13] = "SGT";
        names[0x14] = "EQ";
        names[0x15] = "ISZERO";
        names[0x16] = "AND";
        names[0x17] = "OR";
        names[0x18] = "XOR";
        names[0x19] = "NOT";
        names[0x1a] = "BYTE";
        names[0x1b] = "SHL";
        names[0x1c] = "SHR";
        names[0x1d] = "SAR";
        names[0x20] = "KECCAK256";
        names[0x30] = "ADDRESS";
        names[0x31] = "BALANCE";
        names[0x32] = "ORIGIN";
        names[0x33] = "CALLER";
        names[0x34] = "CALLVALUE";
        names[0x35] = "CALLDATALOAD";
        names[0x36] = "CALLDATASIZE";
        names[0x37] = "CALLDATACOPY";
        names[0x38] = "CODESIZE";
        names[0x39] = "CODECOPY";
        names[0x3a] = "GASPRICE";
        names[0x3b] = "EXTCODESIZE";
        names[0x3c] = "EXTCODECOPY";
        names[0x3d] = "RETURNDATASIZE";
        names[0x3e] = "RETURNDATACOPY";
        names[0x3f] = "EXTCODEHASH";
        names[0x40] = "BLOCKHASH";
        names[0x41] = "COINBASE";
        names[0x42] = "TIMESTAMP";
        names[0x43] = "NUMBER";
        names[0x44] = "PREVRANDAO";
        names[0x45] = "GASLIMIT";
        names[0x46] = "CHAINID";
        names[0x47] = "SELFBALANCE";
        names[0x48] = "BASEFEE";
        names[0x49] = "BLOBHASH";
        names[0x4a] = "BLOBBASEFEE";
        names[0x50] = "POP";
        names[0x51] = "MLOAD";
        names[0x52] = "MSTORE";
        names[0x53] = "MSTORE8";
        names[0x54] = "SLOAD";
        names[0x55] = "SSTORE";
        names[0x56] = "JUMP";
        names[0x57] = "JUMPI";
        names[0x58] = "PC";
        names[0x59] = "MSIZE";
        names[0x5a] = "GAS";
        names[0x5b] = "JUMPDEST";
        names[0x5c] = "TLOAD";
        names[0x5d] = "TSTORE";
        names[0x5e] = "MCOPY";
        names[0x5f] = "PUSH0";

        static std::array<std::string, 32> push_names;
        static std::array<std::string, 16> dup_names;
        static std::array<std::string, 16> swap_names;
        static std::array<std::string, 5> log_names;
        for (int i = 0; i < 32; ++i)
        {
            push_names[i] = "PUSH" + std::to_string(i + 1);
            names[0x60 + i] = push_names[i].c_str();
        }
        for (int i = 0; i < 16; ++i)
        {
            dup_names[i] = "DUP" + std::to_string(i + 1);
            names[0x80 + i] = dup_names[i].c_str();
            swap_names[i] = "SWAP" + std::to_string(i + 1);
            names[0x90 + i] = swap_names[i].c_str();
        }
        for (int i = 0; i < 5; ++i)
        {
            log_names[i] = "LOG" + std::to_string(i);
            names[0xa0 + i] = log_names[i].c_str();
        }

        names[0xf0] = "CREATE";
        names[0xf1] = "CALL";
        names[0xf2] = "CALLCODE";
        names[0xf3] = "RETURN";
        names[0xf4] = "DELEGATECALL";
        names[0xf5] = "CREATE2";
        names[0xfa] = "STATICCALL";
        names[0xfd] = "REVERT";
        names[0xfe] = "INVALID";
        names[0xff] = "SELFDESTRUCT";
    }
};

const OpTable& table()
{
    static const OpTable t;
    return t;
}
}  // namespace

bool is_known_opcode(uint8_t opcode) noexcept
{
    return table().names[opcode] != nullptr;
}

std::string_view mnemonic(uint8_t opcode) noexcept
{
    const char* name = table().names[opcode];
    return name != nullptr ? std::string_view{name} : std::string_view{"INVALID"};
}
}  // namespace uscscan
