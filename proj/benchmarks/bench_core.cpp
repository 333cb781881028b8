// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Microbenchmarks for the per-contract hot path: hashing, disassembly,
// feature extraction, deduplication and chain reconstruction.

#include <uscscan/chains.hpp>
#include <uscscan/dedup.hpp>
#include <uscscan/disasm.hpp>
#include <uscscan/features.hpp>
#include <uscscan/keccak.hpp>

#include <benchmark/benchmark.h>

#include <random>

namespace
{
using namespace uscscan;

Bytes random_payload(size_t size)
{
    std::mt19937_64 rng{size};
    Bytes out(size);
    for (auto& b : out)
        b = static_cast<uint8_t>(rng());
    return out;
}

/// Linear dispatcher over `count` selectors with a revert tail and stop
/// bodies, the shape most deployed runtime code opens with.
Bytes synthetic_dispatcher(size_t count)
{
    std::mt19937_64 rng{count};
    Bytes code{0x60, 0x00, 0x35, 0x60, 0xe0, 0x1c};  // PUSH1 0 CALLDATALOAD PUSH1 E0 SHR
    std::vector<size_t> patch_sites;
    for (size_t i = 0; i < count; ++i)
    {
        code.push_back(0x80);  // DUP1
        code.push_back(0x63);  // PUSH4
        for (int b = 0; b < 4; ++b)
            code.push_back(static_cast<uint8_t>(rng()));
        code.push_back(0x14);  // EQ
        code.push_back(0x61);  // PUSH2
        patch_sites.push_back(code.size());
        code.push_back(0);
        code.push_back(0);
        code.push_back(0x57);  // JUMPI
    }
    code.insert(code.end(), {0x5b, 0x60, 0x00, 0x80, 0xfd});  // revert tail
    for (const size_t site : patch_sites)
    {
        const size_t target = code.size();
        code.push_back(0x5b);  // JUMPDEST
        code.push_back(0x00);  // STOP
        code[site] = static_cast<uint8_t>(target >> 8);
        code[site + 1] = static_cast<uint8_t>(target);
    }
    return code;
}

void bm_keccak256(benchmark::State& state)
{
    const Bytes payload = random_payload(static_cast<size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(keccak256(payload));
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(bm_keccak256)->Arg(136)->Arg(4096)->Arg(131072);

void bm_disassemble(benchmark::State& state)
{
    const Bytes code = synthetic_dispatcher(static_cast<size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(disassemble(code));
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(code.size()));
}
BENCHMARK(bm_disassemble)->Arg(8)->Arg(64)->Arg(256);

void bm_extract_features(benchmark::State& state)
{
    const Bytes code = synthetic_dispatcher(static_cast<size_t>(state.range(0)));
    const InstructionStream stream = disassemble(code);
    for (auto _ : state)
        benchmark::DoNotOptimize(extract_features(stream));
}
BENCHMARK(bm_extract_features)->Arg(8)->Arg(64)->Arg(256);

void bm_dedup_group(benchmark::State& state)
{
    std::vector<ContractRecord> records;
    for (size_t i = 0; i < 1000; ++i)
    {
        ContractRecord record;
        record.address.bytes[18] = static_cast<uint8_t>(i >> 8);
        record.address.bytes[19] = static_cast<uint8_t>(i);
        record.bytecode = synthetic_dispatcher(i % 50 + 1);
        record.creation_block = 1000 + i;
        records.push_back(std::move(record));
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(dedup_group(records));
}
BENCHMARK(bm_dedup_group);

void bm_build_upgrade_chain(benchmark::State& state)
{
    const UpgradeFunctionDb db = compile_db({
        {FunctionSignature::parse("upgradeTo(address)"), true},
    });
    Address subject;
    subject.bytes[19] = 1;
    std::vector<TransactionRecord> txs;
    std::mt19937_64 rng{7};
    for (size_t i = 0; i < 500; ++i)
    {
        TransactionRecord tx;
        tx.hash.bytes[30] = static_cast<uint8_t>(i >> 8);
        tx.hash.bytes[31] = static_cast<uint8_t>(i);
        tx.to = subject;
        tx.input = Bytes{0x36, 0x59, 0xcf, 0xe6};
        tx.input.resize(36);
        tx.input[35] = static_cast<uint8_t>(rng());
        tx.block = 1000 + static_cast<uint64_t>(rng() % 10000);
        tx.tx_index = static_cast<uint32_t>(i);
        txs.push_back(std::move(tx));
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(build_upgrade_chain(subject, txs, db));
}
BENCHMARK(bm_build_upgrade_chain);
}  // namespace

BENCHMARK_MAIN();
