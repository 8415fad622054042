// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#include <fasten/harness/cost.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fasten::harness {

namespace m = ledger::method;
using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

namespace {

    constexpr double kWeiPerEth = 1e18;

    BigInt floor_div(const Rational& a) { return numerator(a) / denominator(a); }

    double to_double(const Rational& r) { return r.convert_to<double>(); }

    PerVote per_vote(const CostInputs& in, const Rational& gas) {
        PerVote out;
        out.gas = gas;
        out.wei = gas * Rational{in.gas_price};
        out.eth = to_double(out.wei) / kWeiPerEth;
        out.usd = out.eth * in.eth_usd;
        out.votes_per_block = floor_div(Rational{in.block_gas_limit} / gas).convert_to<std::uint64_t>();
        out.votes_per_minute = out.votes_per_block * 60 / in.block_interval_s;
        out.votes_per_hour = out.votes_per_block * 3600 / in.block_interval_s;
        return out;
    }

    std::string rational_text(const Rational& r) {
        if (denominator(r) == 1) {
            return numerator(r).str();
        }
        std::ostringstream os;
        os << std::setprecision(12) << to_double(r);
        return os.str();
    }

}  // namespace

Gas round_up(const Rational& value, Gas step) {
    const Rational units = value / step;
    BigInt whole = floor_div(units);
    if (Rational{whole} < units) {
        ++whole;
    }
    return (whole * step).convert_to<Gas>();
}

CostReport cost_report(const CostInputs& in) {
    if (in.voters == 0 || in.wardens == 0) {
        throw std::invalid_argument("voters and wardens must be positive");
    }
    if (in.gas_price <= 0 || !(in.eth_usd > 0.0) || !std::isfinite(in.eth_usd)) {
        throw std::invalid_argument("gas price and ETH/USD rate must be positive");
    }
    if (in.block_gas_limit == 0 || in.block_interval_s == 0 || in.granularity == 0) {
        throw std::invalid_argument("block gas limit, block interval and granularity must be positive");
    }

    CostReport r;
    r.inputs = in;
    for (const auto& [method, gas] : in.table.entries()) {
        if (!ledger::is_native_method(method)) {
            r.per_method[method] = gas;
        }
    }
    r.voter_side = in.table.cost(m::kGetCandidateList) + in.table.cost(m::kGetEncryptionKey) +
                   in.table.cost(m::kCastVote);
    r.warden_side = in.table.cost(m::kDepositSecurity) + in.table.cost(m::kSubmitEncryptionKey) +
                    in.table.cost(m::kSubmitDecryptionKey) + in.table.cost(m::kWithdrawReward);
    if (r.voter_side == 0) {
        throw std::invalid_argument("voter-side gas must be positive");
    }
    r.warden_share = Rational{r.warden_side} * in.wardens / in.voters;
    r.exact = per_vote(in, Rational{r.voter_side} + r.warden_share);
    r.voter_side_bound = round_up(Rational{r.voter_side}, in.granularity);
    r.bound = per_vote(in, Rational{round_up(Rational{r.voter_side_bound} + r.warden_share, in.granularity)});
    return r;
}

std::string CostReport::to_json_text() const {
    using nlohmann::json;
    auto figures = [](const PerVote& p) {
        return json{{"gas", rational_text(p.gas)},
                    {"wei", rational_text(p.wei)},
                    {"eth", p.eth},
                    {"usd", p.usd},
                    {"votes_per_block", p.votes_per_block},
                    {"votes_per_minute", p.votes_per_minute},
                    {"votes_per_hour", p.votes_per_hour}};
    };
    json doc;
    doc["inputs"] = {{"gas_price_wei", to_decimal(inputs.gas_price)},
                     {"eth_usd", inputs.eth_usd},
                     {"voters", inputs.voters},
                     {"wardens", inputs.wardens},
                     {"block_gas_limit", inputs.block_gas_limit},
                     {"block_interval_s", inputs.block_interval_s},
                     {"granularity", inputs.granularity}};
    doc["per_method_gas"] = per_method;
    doc["voter_side_gas"] = voter_side;
    doc["warden_side_gas"] = warden_side;
    doc["warden_share_gas"] = rational_text(warden_share);
    doc["voter_side_bound_gas"] = voter_side_bound;
    doc["per_vote_exact"] = figures(exact);
    doc["per_vote_bound"] = figures(bound);
    return doc.dump(2) + "\n";
}

std::string CostReport::to_table() const {
    std::ostringstream os;
    os << "method                    gas\n";
    for (const auto& [method, gas] : per_method) {
        os << std::left << std::setw(22) << method << std::right << std::setw(10) << gas << "\n";
    }
    os << "\nvoter side                " << voter_side << "\n"
       << "warden side               " << warden_side << "\n"
       << "warden share per vote     " << rational_text(warden_share) << "  (wardens " << inputs.wardens
       << ", voters " << inputs.voters << ")\n\n";
    os << "                          exact             bound\n";
    auto row = [&os](std::string_view label, const std::string& a, const std::string& b) {
        os << std::left << std::setw(26) << label << std::setw(18) << a << b << "\n";
    };
    auto fixed = [](double v, int digits) {
        std::ostringstream s;
        s << std::fixed << std::setprecision(digits) << v;
        return s.str();
    };
    row("gas per vote", rational_text(exact.gas), rational_text(bound.gas));
    row("ETH per vote", fixed(exact.eth, 9), fixed(bound.eth, 9));
    row("USD per vote", fixed(exact.usd, 6), fixed(bound.usd, 6));
    row("votes per block", std::to_string(exact.votes_per_block), std::to_string(bound.votes_per_block));
    row("votes per minute", std::to_string(exact.votes_per_minute), std::to_string(bound.votes_per_minute));
    row("votes per hour", std::to_string(exact.votes_per_hour), std::to_string(bound.votes_per_hour));
    return os.str();
}

ledger::GasTable load_gas_table(const std::string& path, ledger::GasTable base) {
    std::ifstream in{path};
    if (!in) {
        throw std::invalid_argument("cannot open gas table: " + path);
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("gas table is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw std::invalid_argument("gas table must be a JSON object");
    }
    for (const auto& [method, gas] : doc.items()) {
        if (!base.contains(method) || ledger::is_native_method(method)) {
            throw std::invalid_argument("unknown method in gas table: " + method);
        }
        if (!gas.is_number_unsigned()) {
            throw std::invalid_argument("gas for " + method + " must be a non-negative integer");
        }
        base.set(method, gas.get<Gas>());
    }
    return base;
}

}  // namespace fasten::harness
