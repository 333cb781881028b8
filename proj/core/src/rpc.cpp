// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <uscscan/rpc.hpp>

#include <uscscan/keccak.hpp>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <atomic>
#include <condition_variable>
#include <thread>

namespace uscscan
{
namespace
{
using nlohmann::json;

Word32 label_slot(std::string_view label)
{
    // keccak256(label) - 1, the convention for collision-free proxy slots.
    Word32 slot{keccak256(label).bytes};
    for (size_t i = slot.bytes.size(); i-- > 0;)
    {
        if (slot.bytes[i]-- != 0)
            break;
    }
    return slot;
}

/// Counting gate for the in-flight request bound.
class Gate
{
public:
    explicit Gate(int count) : available_{count} {}

    void acquire()
    {
        std::unique_lock lock{mutex_};
        cv_.wait(lock, [&] { return available_ > 0; });
        --available_;
    }

    void release()
    {
        {
            const std::lock_guard lock{mutex_};
            ++available_;
        }
        cv_.notify_one();
    }

private:
    std::mutex mutex_;
    std::condition_variable cv_;
    int available_;
};

struct GatePass
{
    explicit GatePass(Gate& gate) : gate_{gate} { gate_.acquire(); }
    ~GatePass() { gate_.release(); }
    Gate& gate_;
};

struct Endpoint
{
    std::string base;  // scheme://host:port for the client
    std::string path;  // request path, default "/"
};

Endpoint split_endpoint(const std::string& url)
{
    const size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw RpcError{"endpoint needs a scheme: " + url};
    const size_t path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos)
        return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}
}  // namespace

Word32 implementation_slot()
{
    static const Word32 slot = label_slot("eip1967.proxy.implementation");
    return slot;
}

Word32 beacon_slot()
{
    static const Word32 slot = label_slot("eip1967.proxy.beacon");
    return slot;
}

Word32 admin_slot()
{
    static const Word32 slot = label_slot("eip1967.proxy.admin");
    return slot;
}

struct EthRpcClient::Impl
{
    RpcConfig config;
    Endpoint endpoint;
    Gate gate;
    std::atomic<uint64_t> next_id{1};
    std::atomic<size_t> requests{0};

    std::mutex cache_mutex;
    std::unordered_map<Address, Bytes> code_cache;
    std::unordered_map<Address, std::map<Word32, Word32>> storage_cache;

    explicit Impl(RpcConfig cfg)
      : config{std::move(cfg)}, endpoint{split_endpoint(config.endpoint)},
        gate{config.max_in_flight}
    {}

    json call(const std::string& method, json params)
    {
        const json request = {
            {"jsonrpc", "2.0"},
            {"id", next_id.fetch_add(1)},
            {"method", method},
            {"params", std::move(params)},
        };
        const std::string body = request.dump();

        std::string last_error;
        auto backoff = config.initial_backoff;
        for (int attempt = 1; attempt <= config.max_attempts; ++attempt)
        {
            if (attempt > 1)
            {
                std::this_thread::sleep_for(backoff);
                backoff *= 2;
            }

            httplib::Result res;
            {
                const GatePass pass{gate};
                requests.fetch_add(1);
                httplib::Client client{endpoint.base};
                client.set_connection_timeout(10);
                client.set_read_timeout(30);
                res = client.Post(endpoint.path, body, "application/json");
            }

            if (!res)
            {
                last_error = "transport error: " + httplib::to_string(res.error());
                continue;
            }
            if (res->status == 429 || res->status >= 500)
            {
                last_error = "http status " + std::to_string(res->status);
                continue;
            }
            if (res->status != 200)
                throw RpcError{method + ": http status " + std::to_string(res->status)};

            const json reply = json::parse(res->body, nullptr, false);
            if (reply.is_discarded())
                throw RpcError{method + ": response is not JSON"};
            if (reply.contains("error"))
                throw RpcError{method + ": " + reply["error"].dump()};
            if (!reply.contains("result"))
                throw RpcError{method + ": response lacks a result"};
            return reply["result"];
        }
        throw RpcError{
            method + ": gave up after " + std::to_string(config.max_attempts) + " attempts (" +
                last_error + ")",
            true};
    }
};

EthRpcClient::EthRpcClient(RpcConfig config) : impl_{std::make_unique<Impl>(std::move(config))} {}

EthRpcClient::~EthRpcClient() = default;

Bytes EthRpcClient::get_code(const Address& address)
{
    {
        const std::lock_guard lock{impl_->cache_mutex};
        const auto it = impl_->code_cache.find(address);
        if (it != impl_->code_cache.end())
            return it->second;
    }

    const json result =
        impl_->call("eth_getCode", json::array({address.to_hex(), impl_->config.block_tag}));
    if (!result.is_string())
        throw RpcError{"eth_getCode: expected a hex string result"};
    Bytes code = from_hex(result.get<std::string>());

    const std::lock_guard lock{impl_->cache_mutex};
    impl_->code_cache.emplace(address, code);
    return code;
}

Word32 EthRpcClient::get_storage_at(const Address& address, const Word32& slot)
{
    {
        const std::lock_guard lock{impl_->cache_mutex};
        const auto it = impl_->storage_cache.find(address);
        if (it != impl_->storage_cache.end())
        {
            const auto word = it->second.find(slot);
            if (word != it->second.end())
                return word->second;
        }
    }

    const json result = impl_->call(
        "eth_getStorageAt", json::array({address.to_hex(), slot.to_hex(), impl_->config.block_tag}));
    if (!result.is_string())
        throw RpcError{"eth_getStorageAt: expected a hex string result"};
    // Some nodes return unpadded words; normalize to 64 digits.
    std::string digits = result.get<std::string>();
    if (digits.starts_with("0x") || digits.starts_with("0X"))
        digits.erase(0, 2);
    if (digits.size() > 64)
        throw RpcError{"eth_getStorageAt: oversized storage word"};
    digits.insert(0, 64 - digits.size(), '0');
    const Word32 word = Word32::from_hex(digits);

    const std::lock_guard lock{impl_->cache_mutex};
    impl_->storage_cache[address][slot] = word;
    return word;
}

size_t EthRpcClient::request_count() const noexcept
{
    return impl_->requests.load();
}

InMemoryStateProvider::InMemoryStateProvider(
    std::span<const ContractRecord> contracts, std::span<const StorageRecord> storage)
{
    for (const auto& record : contracts)
        code_[record.address] = record.bytecode;
    for (const auto& record : storage)
        storage_[record.address][record.slot] = record.word;
}

void InMemoryStateProvider::put_code(const Address& address, Bytes code)
{
    code_[address] = std::move(code);
}

void InMemoryStateProvider::put_storage(const Address& address, const Word32& slot, const Word32& word)
{
    storage_[address][slot] = word;
}

Bytes InMemoryStateProvider::code_at(const Address& address)
{
    const auto it = code_.find(address);
    return it != code_.end() ? it->second : Bytes{};
}

Word32 InMemoryStateProvider::storage_at(const Address& address, const Word32& slot)
{
    const auto it = storage_.find(address);
    if (it == storage_.end())
        return {};
    const auto word = it->second.find(slot);
    return word != it->second.end() ? word->second : Word32{};
}

std::string_view to_string(LogicProbe probe) noexcept
{
    switch (probe)
    {
    case LogicProbe::ImplementationSlot:
        return "implementation-slot";
    case LogicProbe::BeaconSlot:
        return "beacon-slot";
    case LogicProbe::SlotZero:
        return "slot-zero";
    }
    return "slot-zero";
}

std::optional<ResolvedLogic> resolve_logic_address(StateProvider& provider, const Address& proxy)
{
    // 1. Standard implementation slot: any nonzero address wins.
    const Address direct = address_from_word(provider.storage_at(proxy, implementation_slot()));
    if (!direct.is_zero())
        return ResolvedLogic{direct, LogicProbe::ImplementationSlot};

    // 2. Beacon indirection: the beacon must be a contract, and its first
    // storage slots are where the implementation address conventionally sits.
    const Address beacon = address_from_word(provider.storage_at(proxy, beacon_slot()));
    if (!beacon.is_zero() && !provider.code_at(beacon).empty())
    {
        for (uint8_t slot_index : {0, 1})
        {
            Word32 slot;
            slot.bytes[31] = slot_index;
            const Address candidate = address_from_word(provider.storage_at(beacon, slot));
            if (!candidate.is_zero() && !provider.code_at(candidate).empty())
                return ResolvedLogic{candidate, LogicProbe::BeaconSlot};
        }
    }

    // 3. Legacy layout: logic address in slot 0, plausible only if it points
    // at code.
    Word32 zero_slot;
    const Address legacy = address_from_word(provider.storage_at(proxy, zero_slot));
    if (!legacy.is_zero() && !provider.code_at(legacy).empty())
        return ResolvedLogic{legacy, LogicProbe::SlotZero};

    return std::nullopt;
}

StorageSample fetch_storage_sample(StateProvider& provider, const Address& address, size_t slot_count)
{
    StorageSample sample;
    sample.address = address;
    for (size_t i = 0; i < slot_count; ++i)
    {
        Word32 slot;
        for (size_t b = 0; b < 8; ++b)
            slot.bytes[31 - b] = static_cast<uint8_t>(i >> (8 * b));
        sample.words[slot] = provider.storage_at(address, slot);
    }
    sample.words[implementation_slot()] = provider.storage_at(address, implementation_slot());
    sample.words[admin_slot()] = provider.storage_at(address, admin_slot());
    return sample;
}
}  // namespace uscscan
