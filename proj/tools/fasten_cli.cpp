// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

// fasten: run elections, audit ledger dumps, and price the protocol.
//
// Exit status: 0 when every requested check passes, 1 when a check fails,
// 2 for bad input.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <fasten/harness/auditor.hpp>
#include <fasten/harness/cost.hpp>
#include <fasten/harness/election.hpp>
#include <fasten/harness/properties.hpp>
#include <fasten/ledger/record.hpp>

using namespace fasten;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;

std::string read_file(const std::string& path) {
    std::ifstream in{path, std::ios::binary};
    if (!in) {
        throw std::invalid_argument("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

harness::ScenarioConfig load_config(const std::string& path, std::optional<std::uint64_t> seed) {
    auto config = harness::ScenarioConfig::load(path);
    if (seed) {
        config.seed = *seed;
    }
    return config;
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed, const std::string& out_dir) {
    const auto report = harness::run_election(load_config(config_path, seed));
    const auto suite = harness::property_suite(report);
    std::cout << report.summary_table() << "\n" << suite.to_text();
    if (!out_dir.empty()) {
        harness::write_election_outputs(report, out_dir);
        std::ofstream{out_dir + "/properties.txt"} << suite.to_text();
        std::cout << "outputs written to " << out_dir << "\n";
    }
    return suite.all_passed() ? kOk : kCheckFailed;
}

int cmd_audit(const std::string& dump_path, const std::string& keys_path) {
    const auto keys = harness::DecryptionKeys::parse(read_file(keys_path));
    try {
        const auto audit = harness::audit_tally(read_file(dump_path), keys);
        std::cout << "accepted casts " << audit.accepted_casts << "\n";
        for (const auto& [c, n] : audit.tally.counts) {
            std::cout << "candidate " << c << ": " << n << "\n";
        }
        std::cout << "spoiled " << audit.tally.spoiled << "\nundecryptable " << audit.tally.undecryptable << "\n";
        if (audit.reused_tokens != 0) {
            std::cout << "reused tokens " << audit.reused_tokens << "\n";
            return kCheckFailed;
        }
        return kOk;
    } catch (const ledger::DumpError& e) {
        std::cout << "dump rejected: " << e.what() << "\n";
        return kCheckFailed;
    }
}

struct CostArgs {
    std::uint64_t n{1000};
    std::uint64_t wardens{1};
    bool optimized{false};
    std::string gas_table;
    double eth_usd{627.0};
    std::string gas_price{"40000000000"};
    Gas block_gas_limit{8'000'000};
    std::uint64_t block_interval{15};
    bool json{false};
};

int cmd_cost(const CostArgs& a) {
    harness::CostInputs in;
    in.table = a.optimized ? ledger::GasTable::dapp_offloaded() : ledger::GasTable::defaults();
    if (!a.gas_table.empty()) {
        in.table = harness::load_gas_table(a.gas_table, in.table);
    }
    in.voters = a.n;
    in.wardens = a.wardens;
    in.eth_usd = a.eth_usd;
    in.gas_price = parse_bigint(a.gas_price);
    in.block_gas_limit = a.block_gas_limit;
    in.block_interval_s = a.block_interval;
    const auto report = harness::cost_report(in);
    std::cout << (a.json ? report.to_json_text() : report.to_table());
    return kOk;
}

int cmd_attack(const std::string& config_path, std::optional<std::uint64_t> seed) {
    const auto report = harness::run_election(load_config(config_path, seed));
    for (const auto& a : report.attacks) {
        std::cout << a.strategy << ": " << a.successes << " of " << a.attempts << " succeeded";
        if (a.strategy.starts_with("token_guessing")) {
            std::cout << " (binomial expectation " << a.expected_successes << ", sigma " << a.sigma << ")";
        }
        std::cout << "\n";
    }
    std::cout << "exposed before close: " << report.exposure.decrypted_records.size() << " votes, "
              << report.exposure.leaked_keys.size() << " leaked keys\n";
    bool ok = true;
    for (const auto& r : {harness::check_anonymity(report), harness::check_double_vote(report),
                          harness::check_concealment(report)}) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << (r.passed ? "" : ": " + r.detail) << "\n";
        ok = ok && r.passed;
    }
    return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Smart-contract election simulator with warden key escrow"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    auto* run = app.add_subcommand("run", "run a full election and check its properties");
    run->add_option("config", config_path, "scenario JSON file")->required()->check(CLI::ExistingFile);
    run->add_option("--seed", seed, "override the scenario seed");
    run->add_option("--out", out_dir, "directory for the dump, keys and reports");

    std::string dump_path;
    std::string keys_path;
    auto* audit = app.add_subcommand("audit", "recount a ledger dump with published keys");
    audit->add_option("dump", dump_path, "ledger dump")->required()->check(CLI::ExistingFile);
    audit->add_option("keys", keys_path, "decryption key file")->required()->check(CLI::ExistingFile);

    CostArgs cost_args;
    auto* cost = app.add_subcommand("cost", "per-vote gas, currency and throughput");
    cost->add_option("--n", cost_args.n, "number of voters")->capture_default_str();
    cost->add_option("--wardens", cost_args.wardens, "number of wardens")->capture_default_str();
    cost->add_flag("--optimized", cost_args.optimized, "decryption offloaded to the client");
    cost->add_option("--gas-table", cost_args.gas_table, "JSON method->gas overrides")->check(CLI::ExistingFile);
    cost->add_option("--eth-usd", cost_args.eth_usd, "USD per ETH")->capture_default_str();
    cost->add_option("--gas-price", cost_args.gas_price, "wei per gas")->capture_default_str();
    cost->add_option("--block-gas-limit", cost_args.block_gas_limit)->capture_default_str();
    cost->add_option("--block-interval", cost_args.block_interval, "seconds")->capture_default_str();
    cost->add_flag("--json", cost_args.json, "machine-readable output");

    std::string attack_config;
    std::optional<std::uint64_t> attack_seed;
    auto* attack = app.add_subcommand("attack", "run the scenario's adversaries and report");
    attack->add_option("config", attack_config, "scenario JSON file")->required()->check(CLI::ExistingFile);
    attack->add_option("--seed", attack_seed, "override the scenario seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(config_path, seed, out_dir);
        }
        if (audit->parsed()) {
            return cmd_audit(dump_path, keys_path);
        }
        if (cost->parsed()) {
            return cmd_cost(cost_args);
        }
        if (attack->parsed()) {
            return cmd_attack(attack_config, attack_seed);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
    return kBadInput;
}
