// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <uscscan/records.hpp>

#include <chrono>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace uscscan
{
class RpcError : public std::runtime_error
{
public:
    RpcError(const std::string& what, bool retriable_ = false)
      : std::runtime_error{what}, retriable{retriable_}
    {}

    bool retriable;
};

struct RpcConfig
{
    std::string endpoint;  // http(s)://host[:port][/path]
    int max_attempts = 5;
    std::chrono::milliseconds initial_backoff{100};
    int max_in_flight = 8;
    std::string block_tag = "latest";
};

/// Storage slots every dispatcher-independent probe looks at. Values follow
/// the standard proxy storage layout: keccak of a label minus one, chosen to
/// never collide with compiler-assigned slots.
Word32 implementation_slot();
Word32 beacon_slot();
Word32 admin_slot();

/// JSON-RPC client for eth_getCode / eth_getStorageAt with retry, a bounded
/// number of concurrent requests and per-(kind, address) caching.
class EthRpcClient
{
public:
    explicit EthRpcClient(RpcConfig config);
    ~EthRpcClient();

    EthRpcClient(const EthRpcClient&) = delete;
    EthRpcClient& operator=(const EthRpcClient&) = delete;

    Bytes get_code(const Address& address);
    Word32 get_storage_at(const Address& address, const Word32& slot);

    [[nodiscard]] size_t request_count() const noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Where code and storage words come from: a live endpoint or a snapshot.
class StateProvider
{
public:
    virtual ~StateProvider() = default;

    /// Empty result means "no code there" (an externally owned account);
    /// a provider that cannot answer throws RpcError.
    virtual Bytes code_at(const Address& address) = 0;
    virtual Word32 storage_at(const Address& address, const Word32& slot) = 0;
};

class RpcStateProvider final : public StateProvider
{
public:
    explicit RpcStateProvider(RpcConfig config) : client_{std::move(config)} {}

    Bytes code_at(const Address& address) override { return client_.get_code(address); }
    Word32 storage_at(const Address& address, const Word32& slot) override
    {
        return client_.get_storage_at(address, slot);
    }

    EthRpcClient& client() noexcept { return client_; }

private:
    EthRpcClient client_;
};

/// Closed-world snapshot: unknown addresses have no code and zero storage,
/// exactly like untouched accounts on chain.
class InMemoryStateProvider final : public StateProvider
{
public:
    InMemoryStateProvider() = default;
    InMemoryStateProvider(
        std::span<const ContractRecord> contracts, std::span<const StorageRecord> storage);

    void put_code(const Address& address, Bytes code);
    void put_storage(const Address& address, const Word32& slot, const Word32& word);

    [[nodiscard]] bool has_code(const Address& address) const { return code_.contains(address); }
    [[nodiscard]] bool has_storage(const Address& address) const
    {
        return storage_.contains(address);
    }

    Bytes code_at(const Address& address) override;
    Word32 storage_at(const Address& address, const Word32& slot) override;

private:
    std::unordered_map<Address, Bytes> code_;
    std::unordered_map<Address, std::map<Word32, Word32>> storage_;
};

enum class LogicProbe
{
    ImplementationSlot,  // standard proxy implementation slot
    BeaconSlot,          // beacon address slot, then the beacon's own storage
    SlotZero,            // legacy proxies keeping the logic address in slot 0
};

std::string_view to_string(LogicProbe probe) noexcept;

struct ResolvedLogic
{
    Address address;
    LogicProbe probe;
};

/// Probes a proxy's storage for the address it delegates to. Returns nullopt
/// when no probe yields a plausible logic address; throws RpcError only if
/// the provider itself fails.
std::optional<ResolvedLogic> resolve_logic_address(StateProvider& provider, const Address& proxy);

/// Reads `slot_count` small slots plus the standard proxy slots, the sample
/// audits judge "never initialized" from.
StorageSample fetch_storage_sample(
    StateProvider& provider, const Address& address, size_t slot_count = 32);
}  // namespace uscscan
