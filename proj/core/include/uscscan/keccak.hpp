// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <uscscan/bytes.hpp>

namespace uscscan
{
/// Keccak-256 as used on-chain (original padding 0x01, not SHA-3's 0x06).
Hash32 keccak256(BytesView data);

inline Hash32 keccak256(std::string_view text)
{
    return keccak256(BytesView{reinterpret_cast<const uint8_t*>(text.data()), text.size()});
}

/// First four bytes of keccak256 of a canonical signature string.
Selector selector_of(std::string_view canonical_signature);
}  // namespace uscscan
