// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <uscscan/bytes.hpp>

#include <filesystem>

namespace uscscan
{
/// Tunable analysis thresholds. Every knob feeds the config fingerprint, so
/// two reports are only comparable when their fingerprints match.
struct ToolConfig
{
    size_t outbound_window = 64;
    double direction_threshold = 0.5;
    size_t storage_probe_slots = 32;
    int rpc_max_attempts = 5;
    int rpc_max_in_flight = 8;

    /// Flat `key = value` lines; `#` starts a comment. Unknown keys are
    /// rejected so typos never silently fall back to defaults.
    static ToolConfig load(const std::filesystem::path& path);

    void apply(std::string_view key, std::string_view value);

    /// Hex digest over knobs, the dispatcher template set version and the
    /// signature-db version.
    [[nodiscard]] std::string fingerprint(std::string_view db_version) const;
};
}  // namespace uscscan
