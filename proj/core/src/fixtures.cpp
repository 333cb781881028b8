// Copyright 2026 The uscscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include <uscscan/fixtures.hpp>

#include <nlohmann/json.hpp>

#include <fstream>

namespace uscscan
{
namespace
{
using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::ifstream open_input(const std::filesystem::path& path)
{
    std::ifstream in{path};
    if (!in)
        throw ParseError{"cannot open fixture file: " + path.string()};
    return in;
}

std::ofstream open_output(const std::filesystem::path& path)
{
    std::ofstream out{path};
    if (!out)
        throw ParseError{"cannot open output file: " + path.string()};
    return out;
}

bool blank(const std::string& line)
{
    return line.find_first_not_of(" \t\r") == std::string::npos;
}

/// Runs `parse` per JSONL line, turning any parse problem into a FixtureError
/// carrying the file and line number.
template <typename Record, typename Parse>
std::vector<Record> load_jsonl(const std::filesystem::path& path, Parse parse)
{
    auto in = open_input(path);
    std::vector<Record> out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (blank(line))
            continue;
        const json parsed = json::parse(line, nullptr, false);
        if (parsed.is_discarded() || !parsed.is_object())
            throw FixtureError{path, line_no, "not a JSON object"};
        try
        {
            out.push_back(parse(parsed));
        }
        catch (const json::exception& e)
        {
            throw FixtureError{path, line_no, e.what()};
        }
        catch (const ParseError& e)
        {
            throw FixtureError{path, line_no, e.what()};
        }
    }
    return out;
}

template <size_t N>
FixedBytes<N> get_fixed(const json& obj, const char* key)
{
    return FixedBytes<N>::from_hex(obj.at(key).get<std::string>());
}
}  // namespace

std::vector<ContractRecord> load_contracts(const std::filesystem::path& path)
{
    return load_jsonl<ContractRecord>(path, [](const json& obj) {
        ContractRecord r;
        r.address = get_fixed<20>(obj, "address");
        r.bytecode = from_hex(obj.at("bytecode").get<std::string>());
        r.creator = get_fixed<20>(obj, "creator");
        r.creation_tx = get_fixed<32>(obj, "creation_tx");
        r.creation_block = obj.at("creation_block").get<uint64_t>();
        r.created_by_contract = obj.value("created_by_contract", false);
        return r;
    });
}

std::vector<TransactionRecord> load_transactions(const std::filesystem::path& path)
{
    return load_jsonl<TransactionRecord>(path, [](const json& obj) {
        TransactionRecord r;
        r.hash = get_fixed<32>(obj, "hash");
        r.from = get_fixed<20>(obj, "from");
        r.to = get_fixed<20>(obj, "to");
        r.input = from_hex(obj.at("input").get<std::string>());
        r.block = obj.at("block").get<uint64_t>();
        r.tx_index = obj.at("tx_index").get<uint32_t>();
        r.status = obj.value("status", true);
        if (obj.contains("from_is_contract"))
            r.from_is_contract = obj["from_is_contract"].get<bool>();
        return r;
    });
}

std::vector<CreationTrace> load_traces(const std::filesystem::path& path)
{
    return load_jsonl<CreationTrace>(path, [](const json& obj) {
        CreationTrace r;
        r.tx_hash = get_fixed<32>(obj, "tx_hash");
        r.created_address = get_fixed<20>(obj, "created_address");
        r.opcodes = obj.at("opcodes").get<std::vector<std::string>>();
        return r;
    });
}

std::vector<StorageRecord> load_storage(const std::filesystem::path& path)
{
    return load_jsonl<StorageRecord>(path, [](const json& obj) {
        StorageRecord r;
        r.address = get_fixed<20>(obj, "address");
        r.slot = get_fixed<32>(obj, "slot");
        r.word = get_fixed<32>(obj, "word");
        return r;
    });
}

std::vector<MigrationRecord> load_migrations(const std::filesystem::path& path)
{
    auto in = open_input(path);
    std::vector<MigrationRecord> out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (blank(line) || line.starts_with("#"))
            continue;
        if (line_no == 1 && line.starts_with("old_address"))
            continue;  // optional header row

        // Only the first three commas delimit; the note keeps the rest.
        std::array<size_t, 3> commas{};
        size_t from = 0;
        bool ok = true;
        for (auto& c : commas)
        {
            c = line.find(',', from);
            if (c == std::string::npos)
            {
                ok = false;
                break;
            }
            from = c + 1;
        }
        if (!ok)
            throw FixtureError{path, line_no, "expected old,new,announcement,note"};

        try
        {
            MigrationRecord r;
            r.old_address = Address::from_hex(line.substr(0, commas[0]));
            r.new_address = Address::from_hex(line.substr(commas[0] + 1, commas[1] - commas[0] - 1));
            r.announcement_time =
                std::stoull(line.substr(commas[1] + 1, commas[2] - commas[1] - 1));
            r.note = line.substr(commas[2] + 1);
            out.push_back(std::move(r));
        }
        catch (const ParseError& e)
        {
            throw FixtureError{path, line_no, e.what()};
        }
        catch (const std::exception&)
        {
            throw FixtureError{path, line_no, "bad announcement_time"};
        }
    }
    return out;
}

TokenList load_tokenlist(const std::filesystem::path& path)
{
    auto in = open_input(path);
    const json parsed = json::parse(in, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object())
        throw FixtureError{path, 1, "not a JSON object"};

    TokenList list;
    try
    {
        list.name = parsed.value("name", path.stem().string());
        for (const auto& token : parsed.at("tokens"))
            list.addresses.insert(Address::from_hex(token.at("address").get<std::string>()));
    }
    catch (const json::exception& e)
    {
        throw FixtureError{path, 1, e.what()};
    }
    catch (const ParseError& e)
    {
        throw FixtureError{path, 1, e.what()};
    }
    return list;
}

void write_contracts(const std::filesystem::path& path, std::span<const ContractRecord> records)
{
    auto out = open_output(path);
    for (const auto& r : records)
    {
        ordered_json obj;
        obj["address"] = r.address.to_hex();
        obj["bytecode"] = to_hex(r.bytecode);
        obj["creator"] = r.creator.to_hex();
        obj["creation_tx"] = r.creation_tx.to_hex();
        obj["creation_block"] = r.creation_block;
        obj["created_by_contract"] = r.created_by_contract;
        out << obj.dump() << "\n";
    }
}

void write_transactions(const std::filesystem::path& path, std::span<const TransactionRecord> records)
{
    auto out = open_output(path);
    for (const auto& r : records)
    {
        ordered_json obj;
        obj["hash"] = r.hash.to_hex();
        obj["from"] = r.from.to_hex();
        obj["to"] = r.to.to_hex();
        obj["input"] = to_hex(r.input);
        obj["block"] = r.block;
        obj["tx_index"] = r.tx_index;
        obj["status"] = r.status;
        if (r.from_is_contract)
            obj["from_is_contract"] = *r.from_is_contract;
        out << obj.dump() << "\n";
    }
}

void write_traces(const std::filesystem::path& path, std::span<const CreationTrace> records)
{
    auto out = open_output(path);
    for (const auto& r : records)
    {
        ordered_json obj;
        obj["tx_hash"] = r.tx_hash.to_hex();
        obj["created_address"] = r.created_address.to_hex();
        obj["opcodes"] = r.opcodes;
        out << obj.dump() << "\n";
    }
}

void write_storage(const std::filesystem::path& path, std::span<const StorageRecord> records)
{
    auto out = open_output(path);
    for (const auto& r : records)
    {
        ordered_json obj;
        obj["address"] = r.address.to_hex();
        obj["slot"] = r.slot.to_hex();
        obj["word"] = r.word.to_hex();
        out << obj.dump() << "\n";
    }
}

void write_migrations(const std::filesystem::path& path, std::span<const MigrationRecord> records)
{
    auto out = open_output(path);
    out << "old_address,new_address,announcement_time,note\n";
    for (const auto& r : records)
        out << r.old_address.to_hex() << "," << r.new_address.to_hex() << ","
            << r.announcement_time << "," << r.note << "\n";
}

void write_tokenlist(const std::filesystem::path& path, const TokenList& list)
{
    auto out = open_output(path);
    ordered_json obj;
    obj["name"] = list.name;
    obj["tokens"] = ordered_json::array();
    for (const auto& address : list.addresses)
        obj["tokens"].push_back(ordered_json{{"address", address.to_hex()}});
    out << obj.dump(2) << "\n";
}
}  // namespace uscscan
