// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "corpus.hpp"

#include "asm.hpp"
#include "oracles.hpp"

#include <uscscan/fixtures.hpp>
#include <uscscan/keccak.hpp>
#include <uscscan/rpc.hpp>

#include <atomic>
#include <functional>
#include <random>

namespace testsup
{
using namespace uscscan;

namespace
{
Address test_address(uint8_t n)
{
    Address a;
    a.bytes[0] = 0xde;
    a.bytes[1] = 0xad;
    a.bytes[19] = n;
    return a;
}

Hash32 test_tx(uint8_t n)
{
    Hash32 h;
    h.bytes[0] = 0xfe;
    h.bytes[31] = n;
    return h;
}

/// Linear dispatcher under construction: comparison targets get patched to
/// the actual body offsets once the bodies are laid out.
struct Building
{
    Asm a;
    std::vector<size_t> sites;

    void dispatch(const std::vector<Selector>& selectors)
    {
        dispatcher_prologue(a);
        for (const Selector& s : selectors)
        {
            a.op(OpCode::DUP1).push_selector(s).op(OpCode::EQ);
            sites.push_back(a.push_patch_site());
            a.op(OpCode::JUMPI);
        }
    }

    /// One JUMPDEST body per pending site; `bodies[i]` emits the payload.
    Bytes finish(const std::vector<std::function<void(Asm&)>>& bodies)
    {
        for (size_t i = 0; i < sites.size(); ++i)
        {
            a.patch(sites[i], a.size());
            a.op(OpCode::JUMPDEST);
            if (i < bodies.size() && bodies[i])
                bodies[i](a);
            else
                a.op(OpCode::STOP);
        }
        return a.take();
    }
};

void sstore_calldata_body(Asm& a, uint8_t slot)
{
    a.push_value(4, 1).op(OpCode::CALLDATALOAD).push_value(slot, 1).op(OpCode::SSTORE).op(
        OpCode::STOP);
}

/// PUSH4 selector into memory, then CALL whatever address `slot` stores.
void outbound_call_body(Asm& a, const Selector& selector, uint8_t slot)
{
    a.push_selector(selector)
        .push_value(0xe0, 1)
        .op(OpCode::SHL)
        .push_value(0, 1)
        .op(OpCode::MSTORE);
    a.push_value(0, 1)
        .push_value(0, 1)
        .push_value(0x24, 1)
        .push_value(0, 1)
        .push_value(0, 1)
        .push_value(slot, 1)
        .op(OpCode::SLOAD)
        .op(OpCode::GAS)
        .op(OpCode::CALL)
        .op(OpCode::POP)
        .op(OpCode::STOP);
}

/// Fall-through delegation block: copy calldata, DELEGATECALL, return.
void delegate_fallthrough(Asm& a, std::function<void(Asm&)> load_target)
{
    a.op(OpCode::JUMPDEST)
        .op(OpCode::CALLDATASIZE)
        .push_value(0, 1)
        .op(OpCode::DUP1)
        .op(OpCode::CALLDATACOPY);
    a.push_value(0, 1).push_value(0, 1).op(OpCode::CALLDATASIZE).push_value(0, 1);
    load_target(a);
    a.op(OpCode::GAS).op(OpCode::DELEGATECALL).push_value(0, 1).op(OpCode::DUP1).op(
        OpCode::RETURN);
}

Bytes minimal_proxy(const Address& target)
{
    Bytes code = from_hex("363d3d373d3d3d363d73");
    code.insert(code.end(), target.bytes.begin(), target.bytes.end());
    const Bytes tail = from_hex("5af43d82803e903d91602b57fd5bf3");
    code.insert(code.end(), tail.begin(), tail.end());
    return code;
}

Bytes transparent_proxy_code()
{
    Building b;
    b.dispatch({selector_of("upgradeTo(address)"), selector_of("admin()")});
    delegate_fallthrough(b.a, [](Asm& a) { a.push_value(3, 1).op(OpCode::SLOAD); });
    return b.finish({[](Asm& a) { sstore_calldata_body(a, 3); },
        [](Asm& a) {
            a.op(OpCode::CALLER).push_value(0, 1).op(OpCode::MSTORE);
            a.push_value(0x20, 1).push_value(0, 1).op(OpCode::RETURN);
        }});
}

Bytes uups_proxy_code()
{
    // Pure forwarder: no dispatcher, implementation read from the standard
    // slot.
    Asm a;
    a.op(OpCode::CALLDATASIZE).push_value(0, 1).op(OpCode::DUP1).op(OpCode::CALLDATACOPY);
    a.push_value(0, 1).push_value(0, 1).op(OpCode::CALLDATASIZE).push_value(0, 1);
    a.push(BytesView{implementation_slot().bytes.data(), 32}).op(OpCode::SLOAD);
    a.op(OpCode::GAS).op(OpCode::DELEGATECALL);
    a.op(OpCode::RETURNDATASIZE).push_value(0, 1).op(OpCode::DUP1).op(OpCode::RETURNDATACOPY);
    a.op(OpCode::RETURNDATASIZE).push_value(0, 1).op(OpCode::RETURN);
    return a.take();
}

Bytes uups_logic_code()
{
    Building b;
    b.dispatch({selector_of("upgradeTo(address)"), selector_of("upgradeToAndCall(address,bytes)"),
        selector_of("transfer(address,uint256)"), selector_of("balanceOf(address)")});
    revert_tail(b.a);
    return b.finish({[](Asm& a) { sstore_calldata_body(a, 0); },
        [](Asm& a) {
            a.push_value(4, 1).op(OpCode::CALLDATALOAD).push_value(0, 1).op(OpCode::SSTORE);
            a.push_value(0, 1).op(OpCode::DUP1).op(OpCode::DUP1).op(OpCode::DUP1);
            a.push_value(4, 1).op(OpCode::CALLDATALOAD).op(OpCode::GAS).op(OpCode::DELEGATECALL);
            a.op(OpCode::POP).op(OpCode::STOP);
        },
        nullptr, nullptr});
}

Bytes plain_token_code()
{
    Building b;
    b.dispatch({selector_of("transfer(address,uint256)"), selector_of("balanceOf(address)"),
        selector_of("totalSupply()"), selector_of("approve(address,uint256)")});
    revert_tail(b.a);
    return b.finish({nullptr,
        [](Asm& a) {
            a.push_value(0, 1).op(OpCode::SLOAD).push_value(0, 1).op(OpCode::MSTORE);
            a.push_value(0x20, 1).push_value(0, 1).op(OpCode::RETURN);
        },
        nullptr, nullptr});
}

Bytes strategy_main_code()
{
    Building b;
    b.dispatch({selector_of("setImplementation(address)"), selector_of("execute()")});
    revert_tail(b.a);
    return b.finish({[](Asm& a) { sstore_calldata_body(a, 1); },
        [](Asm& a) { outbound_call_body(a, selector_of("transfer(address,uint256)"), 1); }});
}

Bytes data_sep_main_code()
{
    Building b;
    b.dispatch({selector_of("setLogicContract(address)"), selector_of("refresh()")});
    revert_tail(b.a);
    return b.finish({[](Asm& a) { sstore_calldata_body(a, 1); },
        [](Asm& a) { outbound_call_body(a, selector_of("getData(uint256)"), 1); }});
}

Bytes mix_contract_code()
{
    Building b;
    b.dispatch({selector_of("setImplementation(address)"), selector_of("totalSupply()")});
    delegate_fallthrough(b.a, [](Asm& a) { a.push_value(2, 1).op(OpCode::SLOAD); });
    return b.finish({[](Asm& a) { sstore_calldata_body(a, 2); },
        [](Asm& a) { outbound_call_body(a, selector_of("balanceOf(address)"), 3); }});
}

Bytes metamorphic_code(bool second_version)
{
    Building b;
    std::vector<Selector> selectors{
        selector_of("destroy()"), selector_of("transfer(address,uint256)")};
    if (second_version)
        selectors.push_back(selector_of("approve(address,uint256)"));
    b.dispatch(selectors);
    revert_tail(b.a);
    std::vector<std::function<void(Asm&)>> bodies{
        [](Asm& a) { a.op(OpCode::CALLER).op(OpCode::SELFDESTRUCT); }, nullptr};
    if (second_version)
        bodies.push_back(nullptr);
    return b.finish(bodies);
}

Bytes selectorless_code()
{
    Asm a;
    a.op(OpCode::JUMPDEST).op(OpCode::CALLVALUE).op(OpCode::POP).op(OpCode::STOP);
    return a.take();
}

Bytes migration_old_code()
{
    Building b;
    b.dispatch({selector_of("transfer(address,uint256)"), selector_of("balanceOf(address)"),
        selector_of("totalSupply()")});
    revert_tail(b.a);
    return b.finish({nullptr, nullptr, nullptr});
}

Bytes hierarchy_upgrader_code()
{
    Building b;
    b.dispatch({selector_of("setImplementation(address)"), selector_of("poke()")});
    revert_tail(b.a);
    return b.finish({[](Asm& a) { sstore_calldata_body(a, 4); },
        [](Asm& a) { outbound_call_body(a, selector_of("upgradeTo(address)"), 4); }});
}
}  // namespace

RunPaths FixtureCorpus::paths() const
{
    RunPaths p;
    p.contracts = dir / "contracts.jsonl";
    p.signature_db = dir / "upgrade_functions.txt";
    p.transactions = dir / "transactions.jsonl";
    p.traces = dir / "traces.jsonl";
    p.migrations = dir / "migrations.csv";
    p.storage = dir / "storage.jsonl";
    p.token_lists = {dir / "tokenlist.json"};
    return p;
}

std::filesystem::path make_temp_dir(const std::string& tag)
{
    static std::atomic<unsigned> sequence{0};
    std::random_device rd;
    const auto dir = std::filesystem::temp_directory_path() /
                     ("uscscan-" + tag + "-" + std::to_string(rd()) + "-" +
                         std::to_string(sequence.fetch_add(1)));
    std::filesystem::create_directories(dir);
    return dir;
}

FixtureCorpus build_fixture_corpus(
    const std::filesystem::path& dir, const std::filesystem::path& db_path)
{
    FixtureCorpus corpus;
    corpus.dir = dir;
    std::filesystem::create_directories(dir);
    std::filesystem::copy_file(db_path, dir / "upgrade_functions.txt",
        std::filesystem::copy_options::overwrite_existing);

    auto& named = corpus.named;
    named["transparent_proxy"] = test_address(0x01);
    named["uups_proxy"] = test_address(0x02);
    named["uups_logic"] = test_address(0x03);
    named["plain_token"] = test_address(0x04);
    named["strategy_main"] = test_address(0x05);
    named["data_sep_main"] = test_address(0x06);
    named["mix_contract"] = test_address(0x07);
    named["metamorphic"] = test_address(0x08);
    named["eip1167_proxy"] = test_address(0x09);
    named["selectorless_target"] = test_address(0x0a);
    named["migration_old"] = test_address(0x0b);
    named["hierarchy_upgrader"] = test_address(0x0c);
    named["clone_a"] = test_address(0x0d);
    named["clone_b"] = test_address(0x0e);
    named["migration_new"] = test_address(0x0f);

    const Address deployer = test_address(0x20);
    const Address admin_a = test_address(0x21);
    const Address admin_b = test_address(0x22);
    const Address attacker = test_address(0x23);
    const Address uups_admin = test_address(0x24);
    const Address strat_owner = test_address(0x25);
    const Address factory = test_address(0x60);
    const Address eoa_target = test_address(0x50);
    const Address attacker_logic = test_address(0x51);
    named["eoa_target"] = eoa_target;
    named["attacker"] = attacker;

    // Contract snapshot. The metamorphic address appears twice with
    // different code; the two clones share one bytecode.
    std::vector<ContractRecord> contracts;
    const auto contract = [&](const std::string& name, Bytes code, uint64_t block,
                              Hash32 creation_tx, const Address& creator,
                              bool by_contract = false) {
        contracts.push_back(
            {named.at(name), std::move(code), creator, creation_tx, block, by_contract});
    };
    contract("transparent_proxy", transparent_proxy_code(), 100, test_tx(0x81), deployer);
    contract("uups_proxy", uups_proxy_code(), 110, test_tx(0x82), deployer);
    contract("uups_logic", uups_logic_code(), 105, test_tx(0x83), deployer);
    contract("plain_token", plain_token_code(), 10, test_tx(0x84), deployer);
    contract("strategy_main", strategy_main_code(), 50, test_tx(0x85), strat_owner);
    contract("data_sep_main", data_sep_main_code(), 60, test_tx(0x86), deployer);
    contract("mix_contract", mix_contract_code(), 70, test_tx(0x87), deployer);
    contract("metamorphic", metamorphic_code(false), 200, test_tx(0x88), factory, true);
    contract("metamorphic", metamorphic_code(true), 260, test_tx(0x89), factory, true);
    contract("eip1167_proxy", minimal_proxy(named.at("plain_token")), 80, test_tx(0x8a),
        factory, true);
    contract("selectorless_target", selectorless_code(), 15, test_tx(0x8b), deployer);
    contract("migration_old", migration_old_code(), 20, test_tx(0x8c), deployer);
    contract("hierarchy_upgrader", hierarchy_upgrader_code(), 90, test_tx(0x8d), strat_owner);
    contract("clone_a", minimal_proxy(named.at("strategy_main")), 120, test_tx(0x8e), factory,
        true);
    contract("clone_b", minimal_proxy(named.at("strategy_main")), 121, test_tx(0x8f), factory,
        true);
    write_contracts(dir / "contracts.jsonl", contracts);

    // Transactions: upgrade chains, one reverted takeover attempt, and
    // enough plain traffic to settle caller direction.
    std::vector<TransactionRecord> txs;
    const auto upgrade_tx = [&](uint8_t n, const Address& from, const Address& to,
                                std::string_view signature, const Address& target,
                                uint64_t block, uint32_t index, bool status) {
        txs.push_back(
            {test_tx(n), from, to, abi_call(signature, {target}), block, index, status, {}});
    };
    const Address proxy = named.at("transparent_proxy");
    upgrade_tx(0xa1, admin_a, proxy, "upgradeTo(address)", named.at("plain_token"), 300, 0, true);
    upgrade_tx(0xa2, admin_b, proxy, "upgradeTo(address)", named.at("mix_contract"), 350, 0, true);
    upgrade_tx(0xa3, admin_a, proxy, "upgradeTo(address)", eoa_target, 400, 0, true);
    upgrade_tx(0xa4, attacker, proxy, "upgradeTo(address)", attacker_logic, 420, 3, false);

    const Address uups = named.at("uups_proxy");
    upgrade_tx(0xb1, uups_admin, uups, "upgradeTo(address)", named.at("uups_logic"), 450, 0, true);
    upgrade_tx(0xb2, uups_admin, uups, "upgradeTo(address)", named.at("plain_token"), 500, 1, true);
    upgrade_tx(
        0xb3, uups_admin, uups, "upgradeTo(address)", named.at("selectorless_target"), 550, 2, true);

    const Address strategy = named.at("strategy_main");
    upgrade_tx(0xc1, strat_owner, strategy, "setImplementation(address)", named.at("plain_token"),
        100, 0, true);
    upgrade_tx(0xc2, strat_owner, strategy, "setImplementation(address)", named.at("plain_token"),
        200, 0, true);

    const auto traffic = [&](uint8_t n, uint8_t sender_tag, const Address& to, Bytes input,
                             uint64_t block, bool sender_is_contract) {
        TransactionRecord tx{
            test_tx(n), test_address(sender_tag), to, std::move(input), block, 0, true, {}};
        tx.from_is_contract = sender_is_contract;
        txs.push_back(std::move(tx));
    };
    for (uint8_t i = 0; i < 6; ++i)
        traffic(static_cast<uint8_t>(0xd1 + i), static_cast<uint8_t>(0x41 + i), strategy,
            abi_call("transfer(address,uint256)", {named.at("plain_token"), uint64_t{5}}),
            101 + i, false);
    for (uint8_t i = 0; i < 6; ++i)
        traffic(static_cast<uint8_t>(0xe1 + i), static_cast<uint8_t>(0x31 + i % 3),
            named.at("data_sep_main"), abi_call("getData(uint256)", {uint64_t{1}}), 61 + i, true);
    for (uint8_t i = 0; i < 4; ++i)
        traffic(static_cast<uint8_t>(0xf1 + i), static_cast<uint8_t>(0x41 + i),
            named.at("hierarchy_upgrader"), abi_call("poke()", {}), 95 + i, false);
    for (uint8_t i = 0; i < 2; ++i)
        traffic(static_cast<uint8_t>(0x95 + i), static_cast<uint8_t>(0x45 + i),
            named.at("migration_old"),
            abi_call("transfer(address,uint256)", {named.at("plain_token"), uint64_t{1}}),
            1001 + i * 199, false);
    write_transactions(dir / "transactions.jsonl", txs);

    // Creation traces: both metamorphic deployments went through CREATE2;
    // the transparent proxy's plain CREATE is a negative control.
    std::vector<CreationTrace> traces;
    traces.push_back({test_tx(0x88), named.at("metamorphic"),
        {"PUSH1", "PUSH1", "MSTORE", "CREATE2", "RETURNDATASIZE"}});
    traces.push_back({test_tx(0x89), named.at("metamorphic"),
        {"PUSH1", "PUSH1", "MSTORE", "CREATE2", "RETURNDATASIZE"}});
    traces.push_back({test_tx(0x81), named.at("transparent_proxy"), {"PUSH1", "CREATE"}});
    write_traces(dir / "traces.jsonl", traces);

    // Proxy storage: both proxies point at their logic through the standard
    // implementation slot. Everything else stays zero (closed world).
    std::vector<StorageRecord> storage;
    storage.push_back(
        {proxy, implementation_slot(), word_from_address(named.at("plain_token"))});
    storage.push_back({uups, implementation_slot(), word_from_address(named.at("uups_logic"))});
    write_storage(dir / "storage.jsonl", storage);

    std::vector<MigrationRecord> migrations;
    migrations.push_back(
        {named.at("migration_old"), named.at("migration_new"), 1000, "moved to v2"});
    write_migrations(dir / "migrations.csv", migrations);

    TokenList list;
    list.name = "main";
    list.addresses = {named.at("migration_old"), named.at("plain_token")};
    write_tokenlist(dir / "tokenlist.json", list);

    // Ground truth.
    corpus.expected_labels = {
        {named.at("transparent_proxy"), Pattern::Proxy},
        {named.at("uups_proxy"), Pattern::Proxy},
        {named.at("uups_logic"), Pattern::NotUpgradeable},
        {named.at("plain_token"), Pattern::NotUpgradeable},
        {named.at("strategy_main"), Pattern::Strategy},
        {named.at("data_sep_main"), Pattern::DataSeparation},
        {named.at("mix_contract"), Pattern::Mix},
        {named.at("metamorphic"), Pattern::Metamorphic},
        {named.at("eip1167_proxy"), Pattern::NotUpgradeable},
        {named.at("selectorless_target"), Pattern::NotUpgradeable},
        {named.at("migration_old"), Pattern::Migration},
        {named.at("hierarchy_upgrader"), Pattern::Strategy},
        {named.at("clone_a"), Pattern::NotUpgradeable},
    };
    corpus.expected_uups = {
        {named.at("transparent_proxy"), false},
        {named.at("uups_proxy"), true},
        {named.at("mix_contract"), false},
    };
    for (const Pattern p : all_patterns)
        corpus.expected_counts[p] = {0, 0};
    corpus.expected_counts[Pattern::Proxy] = {2, 2};
    corpus.expected_counts[Pattern::DataSeparation] = {1, 1};
    corpus.expected_counts[Pattern::Strategy] = {2, 2};
    corpus.expected_counts[Pattern::Mix] = {1, 1};
    corpus.expected_counts[Pattern::Metamorphic] = {2, 0};  // factory-created
    corpus.expected_counts[Pattern::Migration] = {1, 1};
    corpus.expected_counts[Pattern::NotUpgradeable] = {6, 3};
    corpus.expected_chain_counts = {
        {Pattern::Proxy, 2},
        {Pattern::Strategy, 1},
        {Pattern::Metamorphic, 1},
        {Pattern::Migration, 1},
    };

    corpus.expected_findings = {
        {FindingCategory::MissingAccessControl, proxy, std::nullopt},
        {FindingCategory::EOATarget, proxy, size_t{2}},
        {FindingCategory::NonUpgradeableUUPSTarget, uups, size_t{1}},
        {FindingCategory::EmptyContractTarget, uups, size_t{2}},
        {FindingCategory::NonUpgradeableUUPSTarget, uups, size_t{2}},
        {FindingCategory::SameAddress, strategy, size_t{1}},
        {FindingCategory::UninitializedLogicCaseII, named.at("uups_logic"), std::nullopt},
        {FindingCategory::OldContractStillUsed, named.at("migration_old"), std::nullopt},
        {FindingCategory::StaleTokenListing, named.at("migration_old"), std::nullopt},
        {FindingCategory::HierarchyUpgrade, named.at("hierarchy_upgrader"), std::nullopt},
    };
    std::sort(corpus.expected_findings.begin(), corpus.expected_findings.end());
    corpus.expected_exit_code = 2;
    return corpus;
}
}  // namespace testsup
