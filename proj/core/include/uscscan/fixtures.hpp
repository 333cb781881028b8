// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <uscscan/records.hpp>

#include <filesystem>

namespace uscscan
{
/// Parse failure in a fixture file, pointing at the offending line.
class FixtureError : public ParseError
{
public:
    FixtureError(const std::filesystem::path& path, size_t line, const std::string& what)
      : ParseError{path.string() + ":" + std::to_string(line) + ": " + what}, line_number{line}
    {}

    size_t line_number;
};

// JSON-lines snapshots, one record per line. Loaders reject malformed lines
// with a FixtureError; writers produce files the loaders read back verbatim.
std::vector<ContractRecord> load_contracts(const std::filesystem::path& path);
std::vector<TransactionRecord> load_transactions(const std::filesystem::path& path);
std::vector<CreationTrace> load_traces(const std::filesystem::path& path);
std::vector<StorageRecord> load_storage(const std::filesystem::path& path);

/// CSV rows `old_address,new_address,announcement_time,note`; commas in the
/// note column are kept as-is.
std::vector<MigrationRecord> load_migrations(const std::filesystem::path& path);

/// {"name": ..., "tokens": [{"address": ...}, ...]}
TokenList load_tokenlist(const std::filesystem::path& path);

void write_contracts(const std::filesystem::path& path, std::span<const ContractRecord> records);
void write_transactions(const std::filesystem::path& path, std::span<const TransactionRecord> records);
void write_traces(const std::filesystem::path& path, std::span<const CreationTrace> records);
void write_storage(const std::filesystem::path& path, std::span<const StorageRecord> records);
void write_migrations(const std::filesystem::path& path, std::span<const MigrationRecord> records);
void write_tokenlist(const std::filesystem::path& path, const TokenList& list);
}  // namespace uscscan
