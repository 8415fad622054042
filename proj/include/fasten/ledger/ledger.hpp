// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <fasten/common/bigint.hpp>
#include <fasten/common/bytes.hpp>
#include <fasten/ledger/gas_table.hpp>
#include <fasten/ledger/payload.hpp>
#include <fasten/ledger/record.hpp>

namespace fasten::ledger {

//! Thrown by contract code to abort a transaction. The ledger rolls back
//! everything except the gas charge and records the reason.
class Revert : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

//! Transaction rejected before execution (no record is written).
class TransactionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct CallContext {
    Address sender;
    Amount value;
    Timestamp now{0};
    //! Contract balance including the incoming value.
    Amount contract_balance;
};

struct Payout {
    Address to;
    Amount amount;
};

struct Execution {
    Payload result;
    std::vector<Payout> payouts;
};

//! State machine hosted by the ledger.
//!
//! execute() must either complete or throw Revert before mutating any state;
//! the ledger relies on that to keep reverted transactions side-effect free.
class ContractHost {
  public:
    virtual ~ContractHost() = default;

    virtual Execution execute(const CallContext& ctx, std::string_view method, const Payload& args) = 0;

    //! Read-only evaluation of a call, in the style of eth_call. Nothing is
    //! recorded, charged, or mutated. Throws Revert like execute().
    virtual Payload simulate(const CallContext& ctx, std::string_view method, const Payload& args) const = 0;

    //! Canonical byte-exact serialization of all contract state.
    [[nodiscard]] virtual std::string serialize_state() const = 0;
};

struct LedgerConfig {
    GasTable gas = GasTable::defaults();
    Amount gas_price{40'000'000'000};  // wei per gas
    Timestamp genesis_time{0};
    Address contract_address;
    Address fee_collector;
};

struct Receipt {
    std::uint64_t index{0};
    Outcome outcome;
    Gas gas_charged{0};
    Payload result;

    [[nodiscard]] bool accepted() const { return outcome.accepted; }
};

using ContractFactory = std::function<std::unique_ptr<ContractHost>(const Payload& genesis)>;

//! Single-process blockchain simulator: a logical clock, account balances,
//! gas metering, and an append-only hash-chained record log.
//!
//! Every mutation goes through one mutex, so concurrent submitters observe a
//! single total order.
class Ledger {
  public:
    //! Writes the genesis record; contract_genesis is appended to the
    //! ledger's own parameters in that record's payload.
    Ledger(LedgerConfig config, std::unique_ptr<ContractHost> contract, const Payload& contract_genesis);

    Ledger(const Ledger&) = delete;
    Ledger& operator=(const Ledger&) = delete;

    Receipt submit_transaction(const Address& sender, const Amount& value, std::string_view method,
                               const Payload& args);

    //! Read-only call against current state at the current time.
    Payload call(const Address& sender, std::string_view method, const Payload& args) const;

    Timestamp advance_clock(Timestamp delta);
    //! Advances to an absolute time. Throws std::invalid_argument for a time
    //! in the past.
    Timestamp advance_to(Timestamp t);
    [[nodiscard]] Timestamp now() const;

    //! Creates currency (genesis allocation). Recorded.
    void mint(const Address& to, const Amount& amount);
    void transfer(const Address& from, const Address& to, const Amount& amount);

    [[nodiscard]] Amount balance(const Address& who) const;
    [[nodiscard]] Amount total_balance() const;
    [[nodiscard]] Amount total_minted() const;

    [[nodiscard]] std::vector<LedgerRecord> records() const;
    [[nodiscard]] std::size_t record_count() const;
    [[nodiscard]] std::string dump() const;
    [[nodiscard]] std::string contract_state() const;

    [[nodiscard]] const LedgerConfig& config() const { return config_; }

    //! Access for in-process inspection; callers must not mutate through it
    //! except via transactions.
    [[nodiscard]] const ContractHost& contract() const { return *contract_; }

    //! Rebuilds a ledger by re-executing every record of a verified dump.
    //! Throws DumpError if the dump is corrupt or any regenerated record
    //! differs from the original.
    static std::unique_ptr<Ledger> replay(std::string_view dump, const ContractFactory& factory);

  private:
    void append(Timestamp ts, const Address& sender, std::string_view method, std::string payload, Gas gas,
                Outcome outcome);
    void debit(const Address& who, const Amount& amount);
    void credit(const Address& who, const Amount& amount);
    [[nodiscard]] Amount balance_locked(const Address& who) const;

    LedgerConfig config_;
    std::unique_ptr<ContractHost> contract_;
    Timestamp now_;
    std::map<Address, Amount> balances_;
    Amount minted_{0};
    std::vector<LedgerRecord> records_;
    mutable std::mutex mutex_;
};

//! The genesis record payload carries these ledger parameters; the rest of
//! the entries belong to the contract.
LedgerConfig ledger_config_from_genesis(const Payload& genesis, Timestamp genesis_time);

//! Splits a recorded transaction payload into envelope value and call args.
std::pair<Amount, Payload> split_recorded_payload(std::string_view payload);

}  // namespace fasten::ledger
