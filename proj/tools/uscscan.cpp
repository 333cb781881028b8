// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: scan a corpus, or poke at single artifacts
// (disassembly, classification, chains, audits, precision evaluation).

#include <uscscan/fixtures.hpp>
#include <uscscan/keccak.hpp>
#include <uscscan/runner.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

namespace
{
using namespace uscscan;
using nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_findings = 2;
constexpr int exit_usage = 64;
constexpr int exit_internal = 70;

Bytes read_code_argument(const std::string& arg)
{
    if (arg.starts_with("@"))
    {
        std::ifstream in{arg.substr(1)};
        if (!in)
            throw ParseError{"cannot open code file: " + arg.substr(1)};
        std::string text{std::istreambuf_iterator<char>{in}, std::istreambuf_iterator<char>{}};
        while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
            text.pop_back();
        return from_hex(text);
    }
    return from_hex(arg);
}

std::map<Address, Pattern> read_label_csv(const std::filesystem::path& path)
{
    std::ifstream in{path};
    if (!in)
        throw ParseError{"cannot open label file: " + path.string()};
    std::map<Address, Pattern> out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line.starts_with("#") || (line_no == 1 && line.starts_with("address")))
            continue;
        const size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError{path.string() + ":" + std::to_string(line_no) +
                             ": expected address,pattern"};
        const auto pattern = pattern_from_string(line.substr(comma + 1));
        if (!pattern)
            throw ParseError{path.string() + ":" + std::to_string(line_no) +
                             ": unknown pattern '" + line.substr(comma + 1) + "'"};
        out[Address::from_hex(line.substr(0, comma))] = *pattern;
    }
    return out;
}

std::map<Address, Pattern> read_predictions(const std::filesystem::path& path)
{
    if (path.extension() != ".jsonl")
        return read_label_csv(path);

    std::ifstream in{path};
    if (!in)
        throw ParseError{"cannot open predictions: " + path.string()};
    std::map<Address, Pattern> out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        const auto parsed = nlohmann::json::parse(line, nullptr, false);
        if (parsed.is_discarded())
            throw ParseError{path.string() + ":" + std::to_string(line_no) + ": bad JSON"};
        const auto pattern = pattern_from_string(parsed.at("pattern").get<std::string>());
        if (!pattern)
            throw ParseError{path.string() + ":" + std::to_string(line_no) + ": unknown pattern"};
        out[Address::from_hex(parsed.at("address").get<std::string>())] = *pattern;
    }
    return out;
}

struct ScanArgs
{
    RunOptions options;
    std::string contracts;
    std::string db;
    std::string transactions;
    std::string traces;
    std::string migrations;
    std::string storage;
    std::vector<std::string> token_lists;
    std::string rpc;
    std::string out_dir = "out";
    std::string config_file;
    int jobs = 0;

    RunOptions build(bool write_outputs) const
    {
        RunOptions out;
        out.paths.contracts = contracts;
        out.paths.signature_db = db;
        if (!transactions.empty())
            out.paths.transactions = transactions;
        if (!traces.empty())
            out.paths.traces = traces;
        if (!migrations.empty())
            out.paths.migrations = migrations;
        if (!storage.empty())
            out.paths.storage = storage;
        for (const auto& list : token_lists)
            out.paths.token_lists.emplace_back(list);
        if (!rpc.empty())
            out.rpc_endpoint = rpc;
        if (write_outputs)
            out.out_dir = out_dir;
        out.jobs = jobs;
        if (!config_file.empty())
            out.config = ToolConfig::load(config_file);
        return out;
    }
};

void add_scan_options(CLI::App& cmd, ScanArgs& args, bool with_out_dir)
{
    cmd.add_option("--contracts", args.contracts, "contract snapshot (JSONL)")->required();
    cmd.add_option("--db", args.db, "upgrade-function signature list")->required();
    cmd.add_option("--transactions", args.transactions, "transaction history (JSONL)");
    cmd.add_option("--traces", args.traces, "creation traces (JSONL)");
    cmd.add_option("--migrations", args.migrations, "announced migrations (CSV)");
    cmd.add_option("--storage", args.storage, "storage snapshot (JSONL)");
    cmd.add_option("--tokenlist", args.token_lists, "token list (JSON), repeatable");
    cmd.add_option("--rpc", args.rpc, "JSON-RPC endpoint")->envname("USCSCAN_RPC_URL");
    cmd.add_option("--jobs", args.jobs, "worker threads (0 = hardware)");
    cmd.add_option("--config", args.config_file, "analysis configuration (key = value)");
    if (with_out_dir)
        cmd.add_option("--out-dir", args.out_dir, "output directory")->capture_default_str();
}

int run_scan(const ScanArgs& args)
{
    const RunResult result = run_corpus(args.build(true));
    ordered_json summary;
    summary["counts"] = result.report.to_json()["counts"];
    summary["chains"] = result.chains.size();
    summary["findings"] = result.findings.size();
    summary["errors"] = result.report.errors.size();
    summary["out_dir"] = args.out_dir;
    std::cout << summary.dump(2) << "\n";
    return result.exit_code;
}

int run_audit(const ScanArgs& args, bool write_outputs)
{
    const RunResult result = run_corpus(args.build(write_outputs));
    for (const auto& finding : result.findings)
        std::cout << finding_to_json(finding).dump() << "\n";
    return result.exit_code;
}

int run_eval(const std::string& predictions_path, const std::string& labels_path)
{
    const auto predictions = read_predictions(predictions_path);
    const auto labels = read_label_csv(labels_path);
    const EvalMetrics metrics = evaluate_precision(predictions, labels);

    ordered_json out;
    for (const Pattern p : all_patterns)
    {
        const EvalRow& row = metrics.rows.at(p);
        ordered_json entry;
        entry["tp"] = row.tp;
        entry["fp"] = row.fp;
        if (const auto precision = row.precision())
            entry["precision"] = format_percent(*precision);
        out[std::string{to_string(p)}] = std::move(entry);
    }
    ordered_json total;
    total["tp"] = metrics.total.tp;
    total["fp"] = metrics.total.fp;
    if (const auto precision = metrics.total.precision())
        total["precision"] = format_percent(*precision);
    out["Total"] = std::move(total);
    if (metrics.label_coverage_gap > 0)
        out["unscanned_labels"] = metrics.label_coverage_gap;
    std::cout << out.dump(2) << "\n";
    return exit_ok;
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Upgradeable smart contract detector and auditor"};
    app.require_subcommand(1);

    ScanArgs scan_args;
    auto* scan = app.add_subcommand("scan", "classify, chain and audit a corpus");
    add_scan_options(*scan, scan_args, true);

    std::string disasm_code;
    bool disasm_features = false;
    auto* disasm_cmd = app.add_subcommand("disasm", "disassemble runtime bytecode");
    disasm_cmd->add_option("code", disasm_code, "hex string, or @file with hex")->required();
    disasm_cmd->add_flag("--features", disasm_features, "print extracted features instead");

    std::string classify_code;
    std::string classify_logic_code;
    std::string classify_db;
    bool classify_create2 = false;
    auto* classify_cmd = app.add_subcommand("classify", "classify one contract's bytecode");
    classify_cmd->add_option("code", classify_code, "hex string, or @file with hex")->required();
    classify_cmd->add_option("--db", classify_db, "upgrade-function signature list")->required();
    classify_cmd->add_option("--logic-code", classify_logic_code, "resolved logic bytecode");
    classify_cmd->add_flag(
        "--create2", classify_create2, "treat the contract as created through CREATE2");

    std::string chains_subject;
    std::string chains_transactions;
    std::string chains_db;
    auto* chains_cmd = app.add_subcommand("chains", "reconstruct one subject's upgrade chain");
    chains_cmd->add_option("--subject", chains_subject, "contract address")->required();
    chains_cmd->add_option("--transactions", chains_transactions, "transaction history (JSONL)")
        ->required();
    chains_cmd->add_option("--db", chains_db, "upgrade-function signature list")->required();

    ScanArgs audit_args;
    auto* audit_cmd = app.add_subcommand("audit", "print the security findings for a corpus");
    add_scan_options(*audit_cmd, audit_args, true);

    std::string eval_predictions;
    std::string eval_labels;
    auto* eval_cmd = app.add_subcommand("eval", "precision against a labeled sample");
    eval_cmd->add_option("--predictions", eval_predictions, "classifications.jsonl or CSV")
        ->required();
    eval_cmd->add_option("--labels", eval_labels, "labeled sample (address,pattern CSV)")
        ->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return exit_usage;
    }

    try
    {
        if (scan->parsed())
            return run_scan(scan_args);

        if (disasm_cmd->parsed())
        {
            const InstructionStream stream = disassemble(read_code_argument(disasm_code));
            if (disasm_features)
            {
                const BytecodeFeatures f = extract_features(stream);
                ordered_json out;
                out["has_call"] = f.has_call;
                out["has_staticcall"] = f.has_staticcall;
                out["has_delegatecall"] = f.has_delegatecall;
                out["has_selfdestruct"] = f.has_selfdestruct;
                out["has_create2"] = f.has_create2;
                out["has_fallback"] = f.has_fallback;
                ordered_json local = ordered_json::array();
                for (const auto& s : f.local_selectors)
                    local.push_back(s.to_hex());
                out["local_selectors"] = std::move(local);
                ordered_json outbound = ordered_json::array();
                for (const auto& s : f.outbound_selectors)
                    outbound.push_back(s.to_hex());
                out["outbound_selectors"] = std::move(outbound);
                std::cout << out.dump(2) << "\n";
            }
            else
            {
                std::cout << format_listing(stream);
            }
            return exit_ok;
        }

        if (classify_cmd->parsed())
        {
            const UpgradeFunctionDb db = compile_db(load_signature_file(classify_db));
            ContractAnalysis analysis;
            analysis.features = extract_features(read_code_argument(classify_code));
            analysis.upgrade_matches = match_upgrade_selectors(analysis.features, db);
            if (!classify_logic_code.empty())
            {
                analysis.logic_features = extract_features(read_code_argument(classify_logic_code));
                analysis.logic_upgrade_local =
                    match_upgrade_selectors(*analysis.logic_features, db).local;
            }
            if (classify_create2)
            {
                CreationTrace trace;
                trace.opcodes = {"CREATE2"};
                analysis.creation_trace = std::move(trace);
            }
            std::cout << classification_to_json(classify(analysis)).dump(2) << "\n";
            return exit_ok;
        }

        if (chains_cmd->parsed())
        {
            const UpgradeFunctionDb db = compile_db(load_signature_file(chains_db));
            const auto txs = load_transactions(chains_transactions);
            const UpgradeChain chain =
                build_upgrade_chain(Address::from_hex(chains_subject), txs, db);
            std::cout << chain_to_json(chain).dump(2) << "\n";
            return exit_ok;
        }

        if (audit_cmd->parsed())
            return run_audit(audit_args, !audit_cmd->get_option("--out-dir")->empty());

        if (eval_cmd->parsed())
            return run_eval(eval_predictions, eval_labels);
    }
    catch (const ParseError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const std::invalid_argument& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const std::exception& e)
    {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_usage;
}
