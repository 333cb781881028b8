// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <uscscan/config.hpp>
#include <uscscan/report.hpp>

namespace uscscan
{
struct RunPaths
{
    std::filesystem::path contracts;  // required
    std::filesystem::path signature_db;  // required
    std::optional<std::filesystem::path> transactions;
    std::optional<std::filesystem::path> traces;
    std::optional<std::filesystem::path> migrations;
    std::optional<std::filesystem::path> storage;
    std::vector<std::filesystem::path> token_lists;
};

struct RunOptions
{
    RunPaths paths;
    std::optional<std::string> rpc_endpoint;
    std::filesystem::path out_dir;  // empty: keep results in memory only
    int jobs = 0;                   // 0: one per hardware thread
    ToolConfig config;
};

/// Final label for one deduplicated bytecode, keyed by address and code hash
/// because a metamorphic address legitimately owns several bytecodes.
struct SubjectClassification
{
    Address address;
    Hash32 code_hash;
    PatternClassification classification;
};

struct RunResult
{
    CorpusReport report;
    std::vector<SubjectClassification> classifications;
    std::vector<UpgradeChain> chains;
    std::vector<SecurityFinding> findings;
    int exit_code = 0;  // 2 when any finding is critical
};

/// The whole pipeline over one fixture corpus: load, deduplicate, classify,
/// chain, audit, report. Everything below the report header is a pure
/// function of inputs and configuration.
RunResult run_corpus(const RunOptions& options);

/// Serializes results into `out_dir` (report.json, classifications.jsonl,
/// chains.jsonl, findings.jsonl).
void write_run_result(const std::filesystem::path& out_dir, const RunResult& result);
}  // namespace uscscan
