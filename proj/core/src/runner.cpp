// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <uscscan/runner.hpp>

#include <uscscan/dedup.hpp>
#include <uscscan/fixtures.hpp>
#include <uscscan/keccak.hpp>
#include <uscscan/rpc.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace uscscan
{
namespace
{
using nlohmann::ordered_json;

/// Snapshot-first provider: addresses the corpus knows are answered from the
/// fixtures, everything else goes to the endpoint when one is configured.
class TieredProvider final : public StateProvider
{
public:
    TieredProvider(InMemoryStateProvider& snapshot, RpcStateProvider* rpc)
      : snapshot_{snapshot}, rpc_{rpc}
    {}

    Bytes code_at(const Address& address) override
    {
        if (snapshot_.has_code(address) || rpc_ == nullptr)
            return snapshot_.code_at(address);
        return rpc_->code_at(address);
    }

    Word32 storage_at(const Address& address, const Word32& slot) override
    {
        if (snapshot_.has_storage(address) || rpc_ == nullptr)
            return snapshot_.storage_at(address, slot);
        return rpc_->storage_at(address, slot);
    }

private:
    InMemoryStateProvider& snapshot_;
    RpcStateProvider* rpc_;
};

struct SubjectWork
{
    const BytecodeGroup* group = nullptr;
    ContractAnalysis analysis;
    PatternClassification classification;
    std::vector<std::string> errors;
};

std::string iso_timestamp()
{
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&tt, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}
}  // namespace

RunResult run_corpus(const RunOptions& options)
{
    RunResult result;
    const auto started = std::chrono::steady_clock::now();

    // Inputs. The contract snapshot and the signature list are mandatory;
    // everything else degrades gracefully.
    const UpgradeFunctionDb db = compile_db(load_signature_file(options.paths.signature_db));
    const std::vector<ContractRecord> contracts = load_contracts(options.paths.contracts);

    std::vector<TransactionRecord> transactions;
    if (options.paths.transactions)
        transactions = load_transactions(*options.paths.transactions);
    std::vector<CreationTrace> traces;
    if (options.paths.traces)
        traces = load_traces(*options.paths.traces);
    std::vector<MigrationRecord> migrations;
    if (options.paths.migrations)
        migrations = load_migrations(*options.paths.migrations);
    std::vector<StorageRecord> storage;
    if (options.paths.storage)
        storage = load_storage(*options.paths.storage);
    std::vector<TokenList> token_lists;
    for (const auto& path : options.paths.token_lists)
        token_lists.push_back(load_tokenlist(path));

    InMemoryStateProvider snapshot{contracts, storage};
    std::unique_ptr<RpcStateProvider> rpc;
    if (options.rpc_endpoint)
    {
        RpcConfig rpc_config;
        rpc_config.endpoint = *options.rpc_endpoint;
        rpc_config.max_attempts = options.config.rpc_max_attempts;
        rpc_config.max_in_flight = options.config.rpc_max_in_flight;
        rpc = std::make_unique<RpcStateProvider>(std::move(rpc_config));
    }
    TieredProvider provider{snapshot, rpc.get()};

    std::unordered_map<Hash32, const CreationTrace*> trace_by_tx;
    for (const auto& trace : traces)
        trace_by_tx.emplace(trace.tx_hash, &trace);

    std::unordered_map<Address, std::vector<TransactionRecord>> txs_to;
    for (const auto& tx : transactions)
        txs_to[tx.to].push_back(tx);

    // Deduplicate and analyze one representative per distinct bytecode.
    const std::vector<BytecodeGroup> groups = dedup_group(contracts);
    const FeatureConfig feature_config{options.config.outbound_window};

    std::vector<SubjectWork> work(groups.size());
    std::atomic<size_t> cursor{0};
    const auto analyze_one = [&](SubjectWork& unit) {
        const ContractRecord& record = unit.group->representative;
        ContractAnalysis& analysis = unit.analysis;
        analysis.record = record;
        analysis.features = extract_features(disassemble(record.bytecode), feature_config);
        analysis.upgrade_matches = match_upgrade_selectors(analysis.features, db);

        const auto trace = trace_by_tx.find(record.creation_tx);
        if (trace != trace_by_tx.end())
            analysis.creation_trace = *trace->second;

        if (analysis.features.has_delegatecall)
        {
            try
            {
                analysis.logic = resolve_logic_address(provider, record.address);
                if (analysis.logic)
                {
                    const Bytes logic_code = provider.code_at(analysis.logic->address);
                    if (!logic_code.empty())
                    {
                        analysis.logic_features = extract_features(
                            disassemble(logic_code), feature_config);
                        analysis.logic_upgrade_local =
                            match_upgrade_selectors(*analysis.logic_features, db).local;
                    }
                }
            }
            catch (const RpcError& e)
            {
                unit.errors.push_back("logic resolution failed for " + record.address.to_hex() +
                                      ": " + e.what());
            }
        }

        PatternClassification classification = classify(analysis);
        const auto subject_txs = txs_to.find(record.address);
        classification = resolve_strategy_vs_data(classification, analysis,
            subject_txs != txs_to.end() ? std::span<const TransactionRecord>{subject_txs->second} :
                                          std::span<const TransactionRecord>{},
            db, options.config.direction_threshold);
        unit.classification = std::move(classification);
    };

    for (size_t i = 0; i < groups.size(); ++i)
        work[i].group = &groups[i];
    const size_t jobs = options.jobs > 0 ?
                            static_cast<size_t>(options.jobs) :
                            std::max<size_t>(1, std::thread::hardware_concurrency());
    {
        std::vector<std::thread> threads;
        const size_t thread_count = std::min(jobs, std::max<size_t>(groups.size(), 1));
        for (size_t t = 0; t < thread_count; ++t)
        {
            threads.emplace_back([&] {
                for (size_t i = 0; (i = cursor.fetch_add(1)) < work.size();)
                {
                    try
                    {
                        analyze_one(work[i]);
                    }
                    catch (const std::exception& e)
                    {
                        work[i].errors.push_back(
                            "analysis failed for " +
                            work[i].group->representative.address.to_hex() + ": " + e.what());
                        work[i].classification = {};
                    }
                }
            });
        }
        for (auto& thread : threads)
            thread.join();
    }

    // Contract-migration assignment comes from the records, not the rules;
    // it never overrides a positive bytecode classification.
    std::unordered_map<Address, std::vector<SubjectWork*>> work_by_address;
    for (auto& unit : work)
        work_by_address[unit.group->representative.address].push_back(&unit);
    for (const auto& migration : migrations)
    {
        const auto at = work_by_address.find(migration.old_address);
        if (at == work_by_address.end())
            continue;
        for (SubjectWork* unit : at->second)
        {
            if (unit->classification.pattern == Pattern::NotUpgradeable)
            {
                unit->classification.pattern = Pattern::Migration;
                unit->classification.evidence.push_back({"migration-record",
                    "announced successor " + migration.new_address.to_hex() + " at " +
                        std::to_string(migration.announcement_time)});
            }
        }
    }

    // Counts and the classification listing.
    for (const auto& unit : work)
    {
        auto& count = result.report.counts[unit.classification.pattern];
        count.raw += unit.group->members.size();
        count.dedup += unit.group->non_factory_members > 0 ? 1 : 0;
        result.classifications.push_back(
            {unit.group->representative.address, unit.group->code_hash, unit.classification});
        for (const auto& error : unit.errors)
            result.report.errors.push_back(error);
    }

    // Upgrade chains from transactions, for every upgradeable subject.
    std::vector<SecurityFinding> findings;
    const CodeLookup code_lookup = [&](const Address& address) -> std::optional<Bytes> {
        try
        {
            return provider.code_at(address);
        }
        catch (const RpcError&)
        {
            return std::nullopt;
        }
    };
    const FeaturesLookup features_lookup = [&](const Address& address)
        -> std::optional<BytecodeFeatures> {
        const auto code = code_lookup(address);
        if (!code)
            return std::nullopt;
        return extract_features(disassemble(*code), feature_config);
    };

    for (const auto& unit : work)
    {
        const Pattern pattern = unit.classification.pattern;
        const bool tx_upgradeable = pattern == Pattern::Proxy || pattern == Pattern::Mix ||
                                    pattern == Pattern::Strategy ||
                                    pattern == Pattern::DataSeparation ||
                                    pattern == Pattern::DataOrStrategy;
        if (!tx_upgradeable)
            continue;
        const auto subject_txs = txs_to.find(unit.group->representative.address);
        if (subject_txs == txs_to.end())
            continue;
        UpgradeChain chain =
            build_upgrade_chain(unit.group->representative.address, subject_txs->second, db);
        if (chain.events.empty() && chain.attempted.empty())
            continue;
        chain.classification = unit.classification;
        result.chains.push_back(std::move(chain));
    }

    // Metamorphic chains from repeated creations at one address.
    {
        std::unordered_map<Address, std::vector<CreationEvent>> creations;
        for (const auto& record : contracts)
        {
            CreationEvent event{record, std::nullopt};
            const auto trace = trace_by_tx.find(record.creation_tx);
            if (trace != trace_by_tx.end())
                event.trace = *trace->second;
            creations[record.address].push_back(std::move(event));
        }
        for (auto& [address, events] : creations)
        {
            if (events.size() < 2)
                continue;
            const auto units = work_by_address.find(address);
            const bool metamorphic = units != work_by_address.end() &&
                                     std::ranges::any_of(units->second, [](const SubjectWork* u) {
                                         return u->classification.pattern == Pattern::Metamorphic;
                                     });
            if (!metamorphic)
                continue;
            UpgradeChain chain = build_metamorphic_chain(address, events);
            if (!chain.events.empty())
                result.chains.push_back(std::move(chain));
        }
    }

    // Migration chains from the records themselves.
    for (const auto& migration : migrations)
    {
        UpgradeChain chain;
        chain.subject = migration.old_address;
        chain.classification.pattern = Pattern::Migration;
        UpgradeEvent event;
        event.block = migration.announcement_time;
        event.new_logic = migration.new_address;
        chain.events.push_back(std::move(event));
        if (!migration.note.empty())
            chain.notes.push_back(migration.note);
        result.chains.push_back(std::move(chain));
    }

    std::sort(result.chains.begin(), result.chains.end(),
        [](const UpgradeChain& a, const UpgradeChain& b) {
            if (a.subject != b.subject)
                return a.subject < b.subject;
            return a.classification.pattern < b.classification.pattern;
        });
    for (const auto& chain : result.chains)
        ++result.report.chain_counts[chain.classification.pattern];

    // Audits.
    for (const auto& chain : result.chains)
    {
        if (chain.classification.pattern == Pattern::Migration)
            continue;  // the version audit owns migration hygiene
        AuditOutcome outcome = audit_logic_targets(chain, code_lookup, features_lookup, db);
        for (auto& finding : outcome.findings)
            findings.push_back(std::move(finding));
        for (auto& marker : outcome.unresolved)
            result.report.errors.push_back(std::move(marker));
        for (auto& finding : audit_access_control(chain))
            findings.push_back(std::move(finding));
    }

    {
        std::unordered_set<Address> audited_logic;
        for (const auto& unit : work)
        {
            const auto& analysis = unit.analysis;
            if (!analysis.logic || !analysis.logic_features)
                continue;
            if (!audited_logic.insert(analysis.logic->address).second)
                continue;
            try
            {
                const StorageSample sample = fetch_storage_sample(
                    provider, analysis.logic->address, options.config.storage_probe_slots);
                for (auto& finding : audit_uninitialized_logic(analysis.logic->address,
                         *analysis.logic_features, analysis.logic_upgrade_local, sample))
                    findings.push_back(std::move(finding));
            }
            catch (const RpcError& e)
            {
                result.report.errors.push_back("storage sample failed for " +
                                               analysis.logic->address.to_hex() + ": " + e.what());
            }
        }
    }

    for (auto& finding : audit_version(migrations, transactions, token_lists))
        findings.push_back(std::move(finding));

    // Cross-contract: who can upgrade the proxies found above?
    {
        std::set<Selector> proxy_upgrade_selectors;
        for (const auto& unit : work)
        {
            const Pattern pattern = unit.classification.pattern;
            if (pattern != Pattern::Proxy && pattern != Pattern::Mix)
                continue;
            proxy_upgrade_selectors.insert(unit.analysis.upgrade_matches.local.begin(),
                unit.analysis.upgrade_matches.local.end());
            proxy_upgrade_selectors.insert(
                unit.analysis.logic_upgrade_local.begin(), unit.analysis.logic_upgrade_local.end());
        }
        for (const auto& unit : work)
        {
            if (!detect_hierarchy_upgrader(unit.analysis, proxy_upgrade_selectors))
                continue;
            std::vector<std::string> overlap;
            for (const auto& selector : unit.analysis.features.outbound_selectors)
                if (proxy_upgrade_selectors.contains(selector))
                    overlap.push_back(selector.to_hex());
            ordered_json evidence;
            evidence["upgrade_selectors_called"] = overlap;
            findings.push_back(make_finding(FindingCategory::HierarchyUpgrade,
                unit.group->representative.address, std::move(evidence)));
        }
    }

    sort_findings(findings);
    result.findings = std::move(findings);
    for (const auto& finding : result.findings)
        ++result.report.finding_counts[finding.category];

    std::sort(result.report.errors.begin(), result.report.errors.end());
    std::sort(result.classifications.begin(), result.classifications.end(),
        [](const SubjectClassification& a, const SubjectClassification& b) {
            if (a.address != b.address)
                return a.address < b.address;
            return a.code_hash < b.code_hash;
        });

    result.report.config_fingerprint = options.config.fingerprint(db.version());
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);

    ordered_json header;
    header["tool"] = "uscscan";
    header["version"] = "0.1.0";
    header["generated_at"] = iso_timestamp();
    header["elapsed_ms"] = elapsed.count();
    ordered_json inputs;
    inputs["contracts"] = options.paths.contracts.string();
    inputs["signature_db"] = options.paths.signature_db.string();
    if (options.paths.transactions)
        inputs["transactions"] = options.paths.transactions->string();
    if (options.paths.traces)
        inputs["traces"] = options.paths.traces->string();
    if (options.paths.migrations)
        inputs["migrations"] = options.paths.migrations->string();
    if (options.paths.storage)
        inputs["storage"] = options.paths.storage->string();
    if (!options.paths.token_lists.empty())
    {
        ordered_json lists = ordered_json::array();
        for (const auto& path : options.paths.token_lists)
            lists.push_back(path.string());
        inputs["token_lists"] = std::move(lists);
    }
    if (options.rpc_endpoint)
        inputs["rpc"] = *options.rpc_endpoint;
    header["inputs"] = std::move(inputs);
    result.report.header = std::move(header);

    const bool critical = std::ranges::any_of(result.findings,
        [](const SecurityFinding& f) { return f.severity == Severity::Critical; });
    result.exit_code = critical ? 2 : 0;

    if (!options.out_dir.empty())
        write_run_result(options.out_dir, result);
    return result;
}

void write_run_result(const std::filesystem::path& out_dir, const RunResult& result)
{
    std::filesystem::create_directories(out_dir);

    {
        std::ofstream out{out_dir / "report.json"};
        if (!out)
            throw ParseError{"cannot write report to " + (out_dir / "report.json").string()};
        out << result.report.to_json().dump(2) << "\n";
    }
    {
        std::ofstream out{out_dir / "classifications.jsonl"};
        for (const auto& subject : result.classifications)
        {
            ordered_json line;
            line["address"] = subject.address.to_hex();
            line["code_hash"] = subject.code_hash.to_hex();
            line["pattern"] = to_string(subject.classification.pattern);
            line["uups"] = subject.classification.uups;
            out << line.dump() << "\n";
        }
    }
    {
        std::ofstream out{out_dir / "chains.jsonl"};
        for (const auto& chain : result.chains)
            out << chain_to_json(chain).dump() << "\n";
    }
    {
        std::ofstream out{out_dir / "findings.jsonl"};
        for (const auto& finding : result.findings)
            out << finding_to_json(finding).dump() << "\n";
    }
}
}  // namespace uscscan
