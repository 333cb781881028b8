// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <uscscan/bytes.hpp>

#include <optional>
#include <vector>

namespace uscscan
{
/// Raised for byte strings that cannot be a function call (fewer than the
/// four selector bytes).
class CalldataError : public ParseError
{
public:
    using ParseError::ParseError;
};

/// A canonical function signature such as `upgradeTo(address)`.
struct FunctionSignature
{
    std::string name;
    std::vector<std::string> param_types;

    bool operator==(const FunctionSignature&) const = default;

    [[nodiscard]] std::string canonical() const;
    [[nodiscard]] std::vector<size_t> address_param_indices() const;

    /// Parses and canonicalizes (`uint` -> `uint256` etc.); rejects names
    /// that are not identifiers and types outside the supported set.
    static FunctionSignature parse(std::string_view text);
};

/// True for types whose value lives in the tail and whose head slot is just
/// an offset word (`bytes`, `string`, `T[]`).
bool is_dynamic_type(std::string_view canonical_type);

bool is_valid_type(std::string_view canonical_type);
}  // namespace uscscan
