// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#include <fasten/ledger/ledger.hpp>

namespace fasten::ledger {

namespace {

    constexpr std::string_view kGasPrefix = "gas.";

    std::string recorded_payload(const Amount& value, const Payload& args) {
        Payload p;
        p.set_hex("value", value);
        for (const auto& [k, v] : args.entries()) {
            if (k == "value") {
                throw TransactionError("'value' is a reserved payload key");
            }
            p.set(k, v);
        }
        return p.serialize();
    }

    Payload genesis_payload(const LedgerConfig& config, const Payload& contract_genesis) {
        Payload p;
        p.set_hex("gas_price", config.gas_price);
        p.set("contract", config.contract_address.hex());
        p.set("fee_collector", config.fee_collector.hex());
        for (const auto& [name, gas] : config.gas.entries()) {
            p.set_u64(std::string{kGasPrefix} + name, gas);
        }
        for (const auto& [k, v] : contract_genesis.entries()) {
            if (p.find(k)) {
                throw std::invalid_argument("contract genesis key collides with ledger key: " + k);
            }
            p.set(k, v);
        }
        return p;
    }

}  // namespace

std::pair<Amount, Payload> split_recorded_payload(std::string_view payload) {
    const Payload all = Payload::parse(payload);
    Payload args;
    for (const auto& [k, v] : all.entries()) {
        if (k != "value") {
            args.set(k, v);
        }
    }
    return {all.get_hex("value"), args};
}

LedgerConfig ledger_config_from_genesis(const Payload& genesis, Timestamp genesis_time) {
    LedgerConfig config;
    config.gas_price = genesis.get_hex("gas_price");
    config.contract_address = genesis.get_address("contract");
    config.fee_collector = genesis.get_address("fee_collector");
    config.genesis_time = genesis_time;
    for (const auto& [k, v] : genesis.entries()) {
        if (k.starts_with(kGasPrefix)) {
            config.gas.set(std::string_view{k}.substr(kGasPrefix.size()), parse_u64(v));
        }
    }
    return config;
}

Ledger::Ledger(LedgerConfig config, std::unique_ptr<ContractHost> contract, const Payload& contract_genesis)
    : config_{std::move(config)}, contract_{std::move(contract)}, now_{config_.genesis_time} {
    if (!contract_) {
        throw std::invalid_argument("ledger requires a contract");
    }
    if (config_.gas_price < 0) {
        throw std::invalid_argument("gas price must be non-negative");
    }
    append(now_, Address{}, method::kGenesis, genesis_payload(config_, contract_genesis).serialize(), 0,
           Outcome::ok());
}

void Ledger::append(Timestamp ts, const Address& sender, std::string_view method, std::string payload, Gas gas,
                    Outcome outcome) {
    LedgerRecord r;
    r.index = records_.size();
    r.timestamp = ts;
    r.sender = sender;
    r.method = std::string{method};
    r.payload = std::move(payload);
    r.gas_charged = gas;
    r.outcome = std::move(outcome);
    r.prev_hash = records_.empty() ? Digest256{} : records_.back().record_hash;
    r.record_hash = r.compute_hash();
    records_.push_back(std::move(r));
}

Amount Ledger::balance_locked(const Address& who) const {
    const auto it = balances_.find(who);
    return it == balances_.end() ? Amount{0} : it->second;
}

void Ledger::debit(const Address& who, const Amount& amount) {
    auto& bal = balances_[who];
    if (bal < amount) {
        throw TransactionError("insufficient balance");
    }
    bal -= amount;
}

void Ledger::credit(const Address& who, const Amount& amount) { balances_[who] += amount; }

Receipt Ledger::submit_transaction(const Address& sender, const Amount& value, std::string_view method,
                                   const Payload& args) {
    std::lock_guard lock{mutex_};
    if (is_native_method(method) || !config_.gas.contains(method)) {
        throw TransactionError("unknown method: " + std::string(method));
    }
    if (value < 0) {
        throw TransactionError("negative transaction value");
    }
    const Gas gas = config_.gas.cost(method);
    const Amount fee = Amount{gas} * config_.gas_price;
    if (balance_locked(sender) < value + fee) {
        throw TransactionError("insufficient balance for value plus gas");
    }
    std::string payload = recorded_payload(value, args);

    debit(sender, fee);
    credit(config_.fee_collector, fee);

    Receipt receipt;
    receipt.gas_charged = gas;
    const CallContext ctx{sender, value, now_, balance_locked(config_.contract_address) + value};
    try {
        Execution exec = contract_->execute(ctx, method, args);
        debit(sender, value);
        credit(config_.contract_address, value);
        for (const auto& payout : exec.payouts) {
            debit(config_.contract_address, payout.amount);
            credit(payout.to, payout.amount);
        }
        receipt.result = std::move(exec.result);
        receipt.outcome = Outcome::ok();
    } catch (const Revert& e) {
        receipt.outcome = Outcome::reverted(e.what());
    }
    receipt.index = records_.size();
    append(now_, sender, method, std::move(payload), gas, receipt.outcome);
    return receipt;
}

Payload Ledger::call(const Address& sender, std::string_view method, const Payload& args) const {
    std::lock_guard lock{mutex_};
    const CallContext ctx{sender, 0, now_, balance_locked(config_.contract_address)};
    return contract_->simulate(ctx, method, args);
}

Timestamp Ledger::advance_clock(Timestamp delta) {
    if (delta < 0) {
        throw std::invalid_argument("clock cannot move backwards");
    }
    std::lock_guard lock{mutex_};
    now_ += delta;
    return now_;
}

Timestamp Ledger::advance_to(Timestamp t) {
    std::lock_guard lock{mutex_};
    if (t < now_) {
        throw std::invalid_argument("clock cannot move backwards");
    }
    now_ = t;
    return now_;
}

Timestamp Ledger::now() const {
    std::lock_guard lock{mutex_};
    return now_;
}

void Ledger::mint(const Address& to, const Amount& amount) {
    if (amount < 0) {
        throw std::invalid_argument("mint amount must be non-negative");
    }
    std::lock_guard lock{mutex_};
    credit(to, amount);
    minted_ += amount;
    Payload p;
    p.set_hex("value", amount);
    p.set("to", to.hex());
    append(now_, Address{}, method::kMint, p.serialize(), 0, Outcome::ok());
}

void Ledger::transfer(const Address& from, const Address& to, const Amount& amount) {
    if (amount < 0) {
        throw std::invalid_argument("transfer amount must be non-negative");
    }
    std::lock_guard lock{mutex_};
    if (balance_locked(from) < amount) {
        throw TransactionError("insufficient balance");
    }
    debit(from, amount);
    credit(to, amount);
    Payload p;
    p.set_hex("value", amount);
    p.set("to", to.hex());
    append(now_, from, method::kTransfer, p.serialize(), 0, Outcome::ok());
}

Amount Ledger::balance(const Address& who) const {
    std::lock_guard lock{mutex_};
    return balance_locked(who);
}

Amount Ledger::total_balance() const {
    std::lock_guard lock{mutex_};
    Amount total = 0;
    for (const auto& [_, bal] : balances_) {
        total += bal;
    }
    return total;
}

Amount Ledger::total_minted() const {
    std::lock_guard lock{mutex_};
    return minted_;
}

std::vector<LedgerRecord> Ledger::records() const {
    std::lock_guard lock{mutex_};
    return records_;
}

std::size_t Ledger::record_count() const {
    std::lock_guard lock{mutex_};
    return records_.size();
}

std::string Ledger::dump() const {
    std::lock_guard lock{mutex_};
    return serialize_dump(records_);
}

std::string Ledger::contract_state() const {
    std::lock_guard lock{mutex_};
    return contract_->serialize_state();
}

std::unique_ptr<Ledger> Ledger::replay(std::string_view dump, const ContractFactory& factory) {
    const std::vector<LedgerRecord> records = parse_and_verify_dump(dump);
    const LedgerRecord& genesis = records.front();
    if (genesis.method != method::kGenesis) {
        throw DumpError(0, "first record is not a genesis record");
    }

    std::unique_ptr<Ledger> ledger;
    try {
        const Payload genesis_args = Payload::parse(genesis.payload);
        LedgerConfig config = ledger_config_from_genesis(genesis_args, genesis.timestamp);
        // The ledger re-adds its own keys; hand the contract only its part.
        Payload contract_genesis;
        const Payload ledger_part = genesis_payload(config, Payload{});
        for (const auto& [k, v] : genesis_args.entries()) {
            if (!ledger_part.find(k)) {
                contract_genesis.set(k, v);
            }
        }
        ledger = std::make_unique<Ledger>(std::move(config), factory(contract_genesis), contract_genesis);
    } catch (const DumpError&) {
        throw;
    } catch (const std::exception& e) {
        throw DumpError(0, std::string("cannot rebuild genesis: ") + e.what());
    }
    if (ledger->records_.front().record_hash != genesis.record_hash) {
        throw DumpError(0, "rebuilt genesis differs from the dump");
    }

    for (std::size_t i = 1; i < records.size(); ++i) {
        const LedgerRecord& r = records[i];
        try {
            ledger->advance_to(r.timestamp);
            const auto [value, args] = split_recorded_payload(r.payload);
            if (r.method == method::kMint) {
                ledger->mint(args.get_address("to"), value);
            } else if (r.method == method::kTransfer) {
                ledger->transfer(r.sender, args.get_address("to"), value);
            } else if (r.method == method::kGenesis) {
                throw DumpError(i, "duplicate genesis record");
            } else {
                ledger->submit_transaction(r.sender, value, r.method, args);
            }
        } catch (const DumpError&) {
            throw;
        } catch (const std::exception& e) {
            throw DumpError(i, std::string("replay failed: ") + e.what());
        }
        if (ledger->records_.back().record_hash != r.record_hash) {
            throw DumpError(i, "replayed record differs from the dump");
        }
    }
    return ledger;
}

}  // namespace fasten::ledger
