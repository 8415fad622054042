// Copyright 2026 The Fasten Authors
// SPDX-License-Identifier: Apache-2.0

#include <fasten/contract/voting_contract.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>

#include <fasten/crypto/keccak.hpp>

namespace fasten::contract {

using ledger::Payload;
using ledger::Revert;

namespace {

    Timestamp parse_time(std::string_view s) {
        if (!s.empty() && s.front() == '-') {
            return -static_cast<Timestamp>(ledger::parse_u64(s.substr(1)));
        }
        return static_cast<Timestamp>(ledger::parse_u64(s));
    }

    std::vector<std::string_view> list_items(std::string_view s) {
        if (s.empty()) {
            return {};
        }
        return ledger::split(s, ',');
    }

    std::pair<std::string_view, std::string_view> split_pair(std::string_view item) {
        const auto pos = item.find(':');
        if (pos == std::string_view::npos) {
            throw std::invalid_argument("expected key:value item, got " + std::string(item));
        }
        return {item.substr(0, pos), item.substr(pos + 1)};
    }

    template <typename Range, typename Fn>
    std::string join(const Range& range, Fn&& fn) {
        std::string out;
        bool first = true;
        for (const auto& item : range) {
            if (!first) {
                out.push_back(',');
            }
            first = false;
            out += fn(item);
        }
        return out;
    }

    bool in_group(const crypto::GroupParams& g, const BigInt& v) { return v >= 1 && v <= g.p - 1; }

}  // namespace

// ---------------------------------------------------------------------------
// Genesis

void ContractGenesis::validate() const {
    timeline.validate();
    group.validate();
    std::set<CandidateId> seen;
    for (const auto c : candidates) {
        if (c == 0 || BigInt{c} > group.p - 1) {
            throw std::invalid_argument("candidate id must be a group element in [1, p-1]");
        }
        if (!seen.insert(c).second) {
            throw std::invalid_argument("duplicate candidate id");
        }
    }
    if (num_keys == 0) {
        throw std::invalid_argument("numKeys must be at least 1");
    }
    if (wardens.size() != num_keys) {
        throw std::invalid_argument("exactly one warden per key id is required");
    }
    std::set<KeyId> ids;
    for (const auto& [addr, id] : wardens) {
        if (id == 0 || id > num_keys || !ids.insert(id).second) {
            throw std::invalid_argument("warden key ids must be a permutation of 1..numKeys");
        }
    }
    if (security_amount < 0 || reward < 0) {
        throw std::invalid_argument("securityAmt and reward must be non-negative");
    }
    if (sample_texts.empty()) {
        throw std::invalid_argument("at least one sample text is required");
    }
    for (const auto& s : sample_texts) {
        if (!in_group(group, s)) {
            throw std::invalid_argument("sample text must be a group element");
        }
    }
    std::set<TokenDigest> digests(hash_database.begin(), hash_database.end());
    if (digests.size() != hash_database.size()) {
        throw std::invalid_argument("duplicate token digest in hash database");
    }
}

Payload ContractGenesis::to_payload() const {
    Payload p;
    p.set("t_bcr", std::to_string(timeline.t_bcr));
    p.set("t_ecr", std::to_string(timeline.t_ecr));
    p.set("t_btd", std::to_string(timeline.t_btd));
    p.set("t_etd", std::to_string(timeline.t_etd));
    p.set("t_bvc", std::to_string(timeline.t_bvc));
    p.set("t_evc", std::to_string(timeline.t_evc));
    p.set("t_bvt", std::to_string(timeline.t_bvt));
    p.set_hex("group_p", group.p);
    p.set_hex("group_g", group.g);
    p.set("candidates", join(candidates, [](CandidateId c) { return std::to_string(c); }));
    p.set_u64("num_keys", num_keys);
    p.set_hex("security_amount", security_amount);
    p.set_hex("reward", reward);
    p.set("samples", join(sample_texts, [](const BigInt& s) { return to_hex(s); }));
    p.set("wardens", join(wardens, [](const auto& kv) { return kv.first.hex() + ":" + std::to_string(kv.second); }));
    p.set("hash_database", join(hash_database, [](const TokenDigest& d) { return d.digest.hex(); }));
    return p;
}

ContractGenesis ContractGenesis::from_payload(const Payload& p) {
    ContractGenesis g;
    g.timeline = {parse_time(p.get("t_bcr")), parse_time(p.get("t_ecr")), parse_time(p.get("t_btd")),
                  parse_time(p.get("t_etd")), parse_time(p.get("t_bvc")), parse_time(p.get("t_evc")),
                  parse_time(p.get("t_bvt"))};
    g.group = {p.get_hex("group_p"), p.get_hex("group_g")};
    for (const auto item : list_items(p.get("candidates"))) {
        g.candidates.push_back(static_cast<CandidateId>(ledger::parse_u64(item)));
    }
    g.num_keys = static_cast<KeyId>(p.get_u64("num_keys"));
    g.security_amount = p.get_hex("security_amount");
    g.reward = p.get_hex("reward");
    for (const auto item : list_items(p.get("samples"))) {
        g.sample_texts.push_back(parse_hex_bigint(item));
    }
    for (const auto item : list_items(p.get("wardens"))) {
        const auto [addr, id] = split_pair(item);
        g.wardens.emplace(Address::from_hex(addr), static_cast<KeyId>(ledger::parse_u64(id)));
    }
    for (const auto item : list_items(p.get("hash_database"))) {
        g.hash_database.push_back({Digest256::from_hex(item)});
    }
    return g;
}

// ---------------------------------------------------------------------------
// Tally

std::uint64_t TallyResult::total() const {
    std::uint64_t sum = spoiled + undecryptable;
    for (const auto& [_, n] : counts) {
        sum += n;
    }
    return sum;
}

Payload TallyResult::to_payload() const {
    Payload p;
    for (const auto& [cand, n] : counts) {
        p.set_u64("cand." + std::to_string(cand), n);
    }
    p.set_u64("spoiled", spoiled);
    p.set_u64("undecryptable", undecryptable);
    return p;
}

TallyResult TallyResult::from_payload(const Payload& p) {
    TallyResult t;
    for (const auto& [k, v] : p.entries()) {
        if (k.starts_with("cand.")) {
            t.counts[static_cast<CandidateId>(ledger::parse_u64(std::string_view{k}.substr(5)))] =
                ledger::parse_u64(v);
        }
    }
    t.spoiled = p.get_u64("spoiled");
    t.undecryptable = p.get_u64("undecryptable");
    return t;
}

BigInt key_check_ephemeral(const crypto::GroupParams& group, KeyId id, std::size_t sample_index) {
    const std::string seed = "key-check/" + std::to_string(id) + "/" + std::to_string(sample_index);
    const Digest256 d = crypto::keccak256(seed);
    BigInt r = 0;
    for (const auto b : d.bytes) {
        r = (r << 8) | b;
    }
    const BigInt order = group.p - 1;
    r = r % (group.p - 2) + 1;
    while (boost::multiprecision::gcd(r, order) != 1) {
        r = r % (group.p - 2) + 1;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Contract

VotingContract::VotingContract(const ContractGenesis& genesis) : genesis_{genesis} {
    genesis_.validate();
    en_keys_.resize(genesis_.num_keys + 1);
    de_keys_.resize(genesis_.num_keys + 1);
    vote_batch_.resize(genesis_.num_keys + 1);
    for (const auto& d : genesis_.hash_database) {
        hash_database_.emplace(d.digest, true);
    }
}

void VotingContract::require_window(GatedOp op, Timestamp now) const {
    if (!window_for(op, genesis_.timeline).contains(now)) {
        throw Revert(std::string(name(op)) + ": outside its time window");
    }
}

KeyId VotingContract::require_warden(const Address& sender) const {
    const auto it = genesis_.wardens.find(sender);
    if (it == genesis_.wardens.end() || it->second == 0) {
        throw Revert("sender is not a warden");
    }
    return it->second;
}

std::vector<CandidateId> VotingContract::get_candidate_list(Timestamp now) const {
    require_window(GatedOp::kGetCandidateList, now);
    return genesis_.candidates;
}

std::pair<KeyId, crypto::PublicKey> VotingContract::get_encryption_key(Timestamp now) {
    require_window(GatedOp::kGetEncryptionKey, now);
    const KeyId i = id_counter_ + 1;
    if (!en_keys_[i]) {
        throw Revert("GetEncryptionKey: encryption key " + std::to_string(i) + " was never submitted");
    }
    id_counter_ = (id_counter_ + 1) % genesis_.num_keys;
    return {i, crypto::PublicKey{genesis_.group, *en_keys_[i]}};
}

std::optional<std::string> VotingContract::check_cast_vote(const Token& token, KeyId id,
                                                           const crypto::VoteCiphertext& ev, Timestamp now) const {
    if (!window_for(GatedOp::kCastVote, genesis_.timeline).contains(now)) {
        return "CastVote: outside its time window";
    }
    if (id < 1 || id > genesis_.num_keys) {
        return "CastVote: key id out of range";
    }
    if (!in_group(genesis_.group, ev.beta) || !in_group(genesis_.group, ev.gamma)) {
        return "CastVote: ciphertext is not a pair of group elements";
    }
    const auto it = hash_database_.find(crypto::hash_token(token).digest);
    if (it == hash_database_.end() || !it->second) {
        return "CastVote: unknown or spent token";
    }
    return std::nullopt;
}

void VotingContract::cast_vote(const Token& token, KeyId id, const crypto::VoteCiphertext& ev, Timestamp now) {
    if (auto why = check_cast_vote(token, id, ev, now)) {
        throw Revert(*why);
    }
    hash_database_[crypto::hash_token(token).digest] = false;
    vote_batch_[id].push_back(ev);
}

std::vector<std::optional<BigInt>> VotingContract::get_decryption_keys(Timestamp now) const {
    require_window(GatedOp::kGetDecryptionKeys, now);
    return {de_keys_.begin() + 1, de_keys_.end()};
}

TallyResult VotingContract::compute_tally() const {
    TallyResult result;
    for (const auto c : genesis_.candidates) {
        result.counts[c] = 0;
    }
    for (KeyId i = 1; i <= genesis_.num_keys; ++i) {
        const auto& batch = vote_batch_[i];
        if (!de_keys_[i]) {
            result.undecryptable += batch.size();
            continue;
        }
        const crypto::SecretKey dk{genesis_.group, *de_keys_[i]};
        for (const auto& ev : batch) {
            ++decrypt_ops_;
            const BigInt dv = crypto::decrypt(dk, ev);
            // Plaintext encodes the candidate id directly.
            const auto it = dv <= BigInt{UINT32_MAX} ? result.counts.find(static_cast<CandidateId>(dv))
                                                     : result.counts.end();
            if (it == result.counts.end()) {
                ++result.spoiled;
            } else {
                ++it->second;
            }
        }
    }
    return result;
}

TallyResult VotingContract::tally_vote(Timestamp now) {
    require_window(GatedOp::kTallyVote, now);
    if (!tally_done_) {
        cand_tally_ = compute_tally();
        tally_done_ = true;
    }
    return cand_tally_;
}

void VotingContract::deposit_security(const Address& sender, const Amount& value, Timestamp now) {
    require_warden(sender);
    require_window(GatedOp::kDepositSecurity, now);
    if (!(value > genesis_.security_amount)) {
        throw Revert("DepositSecurity: value must exceed securityAmt");
    }
    // A second deposit would overwrite the first one's refund slot.
    if (refund_amount(sender) > 0) {
        throw Revert("DepositSecurity: already deposited");
    }
    refund_amt_[sender] = value - genesis_.security_amount;
}

void VotingContract::submit_encryption_key(const Address& sender, const BigInt& ek, Timestamp now) {
    const KeyId id = require_warden(sender);
    require_window(GatedOp::kSubmitEncryptionKey, now);
    if (refund_amount(sender) <= 0) {
        throw Revert("SubmitEncryptionKey: no security deposit");
    }
    if (!in_group(genesis_.group, ek)) {
        throw Revert("SubmitEncryptionKey: key is not a group element");
    }
    en_keys_[id] = ek;
}

void VotingContract::submit_decryption_key(const Address& sender, const BigInt& dk, Timestamp now) {
    const KeyId id = require_warden(sender);
    require_window(GatedOp::kSubmitDecryptionKey, now);
    if (refund_amount(sender) <= 0) {
        throw Revert("SubmitDecryptionKey: no security deposit");
    }
    if (!en_keys_[id]) {
        throw Revert("SubmitDecryptionKey: no encryption key on record");
    }
    // Each key earns securityAmt + reward once.
    if (de_keys_[id]) {
        throw Revert("SubmitDecryptionKey: already submitted");
    }
    if (dk < 1 || dk > genesis_.group.p - 2) {
        throw Revert("SubmitDecryptionKey: key out of range");
    }
    const crypto::PublicKey ek{genesis_.group, *en_keys_[id]};
    const crypto::SecretKey sk{genesis_.group, dk};
    for (std::size_t i = 0; i < genesis_.sample_texts.size(); ++i) {
        const BigInt& sample = genesis_.sample_texts[i];
        const auto ct = crypto::encrypt_with_ephemeral(ek, sample, key_check_ephemeral(genesis_.group, id, i));
        if (crypto::decrypt(sk, ct) != sample) {
            throw Revert("SubmitDecryptionKey: key does not decrypt the sample text");
        }
    }
    de_keys_[id] = dk;
    refund_amt_[sender] += genesis_.security_amount + genesis_.reward;
}

Amount VotingContract::withdraw_reward(const Address& sender, Timestamp now, const Amount& contract_balance) {
    require_warden(sender);
    require_window(GatedOp::kWithdrawReward, now);
    const Amount amt = refund_amount(sender);
    if (amt > contract_balance) {
        throw Revert("WithdrawReward: contract balance cannot cover the refund");
    }
    if (const auto it = refund_amt_.find(sender); it != refund_amt_.end()) {
        it->second = 0;
    }
    return amt;
}

// ---------------------------------------------------------------------------
// Transaction dispatch

ledger::Execution VotingContract::execute(const ledger::CallContext& ctx, std::string_view method,
                                          const Payload& args) {
    namespace m = ledger::method;
    ledger::Execution exec;
    // Non-payable methods reject attached value.
    if (method != m::kDepositSecurity && ctx.value != 0) {
        throw Revert(std::string(method) + ": method is not payable");
    }
    try {
        if (method == m::kGetCandidateList) {
            const auto list = get_candidate_list(ctx.now);
            exec.result.set("candidates", join(list, [](CandidateId c) { return std::to_string(c); }));
        } else if (method == m::kGetEncryptionKey) {
            const auto [id, pk] = get_encryption_key(ctx.now);
            exec.result.set_u64("id", id);
            exec.result.set_hex("ek", pk.h);
        } else if (method == m::kCastVote) {
            const Token token{args.get_bytes("token")};
            const auto id = args.get_u64("id");
            const crypto::VoteCiphertext ev{args.get_hex("beta"), args.get_hex("gamma")};
            if (id > UINT32_MAX) {
                throw Revert("CastVote: key id out of range");
            }
            cast_vote(token, static_cast<KeyId>(id), ev, ctx.now);
        } else if (method == m::kGetDecryptionKeys) {
            const auto keys = get_decryption_keys(ctx.now);
            for (std::size_t i = 0; i < keys.size(); ++i) {
                exec.result.set("key." + std::to_string(i + 1), keys[i] ? to_hex(*keys[i]) : "-");
            }
        } else if (method == m::kTallyVote) {
            exec.result = tally_vote(ctx.now).to_payload();
        } else if (method == m::kDepositSecurity) {
            deposit_security(ctx.sender, ctx.value, ctx.now);
        } else if (method == m::kSubmitEncryptionKey) {
            submit_encryption_key(ctx.sender, args.get_hex("ek"), ctx.now);
        } else if (method == m::kSubmitDecryptionKey) {
            submit_decryption_key(ctx.sender, args.get_hex("dk"), ctx.now);
        } else if (method == m::kWithdrawReward) {
            const Amount amt = withdraw_reward(ctx.sender, ctx.now, ctx.contract_balance);
            exec.result.set_hex("amount", amt);
            if (amt > 0) {
                exec.payouts.push_back({ctx.sender, amt});
            }
        } else {
            throw Revert("unknown contract method: " + std::string(method));
        }
    } catch (const std::invalid_argument& e) {
        // Argument decoding failures revert like a failed ABI decode.
        throw Revert(std::string(method) + ": malformed arguments (" + e.what() + ")");
    }
    return exec;
}

Payload VotingContract::simulate(const ledger::CallContext& ctx, std::string_view method, const Payload& args) const {
    if (method == ledger::method::kCastVote) {
        try {
            const Token token{args.get_bytes("token")};
            const crypto::VoteCiphertext ev{args.get_hex("beta"), args.get_hex("gamma")};
            const auto id = args.get_u64("id");
            if (id > UINT32_MAX) {
                throw Revert("CastVote: key id out of range");
            }
            if (auto why = check_cast_vote(token, static_cast<KeyId>(id), ev, ctx.now)) {
                throw Revert(*why);
            }
        } catch (const std::invalid_argument& e) {
            throw Revert(std::string("CastVote: malformed arguments (") + e.what() + ")");
        }
        return {};
    }
    VotingContract scratch = *this;
    return scratch.execute(ctx, method, args).result;
}

const std::vector<crypto::VoteCiphertext>& VotingContract::batch(KeyId id) const {
    if (id < 1 || id > genesis_.num_keys) {
        throw std::out_of_range("key id out of range");
    }
    return vote_batch_[id];
}

Amount VotingContract::refund_amount(const Address& warden) const {
    const auto it = refund_amt_.find(warden);
    return it == refund_amt_.end() ? Amount{0} : it->second;
}

bool VotingContract::token_unspent(const TokenDigest& digest) const {
    const auto it = hash_database_.find(digest.digest);
    return it != hash_database_.end() && it->second;
}

std::optional<BigInt> VotingContract::encryption_key(KeyId id) const {
    if (id < 1 || id > genesis_.num_keys) {
        return std::nullopt;
    }
    return en_keys_[id];
}

std::string VotingContract::serialize_state() const {
    auto opt_hex = [](const std::optional<BigInt>& v) { return v ? to_hex(*v) : std::string{"-"}; };
    std::string out;
    out += "genesis=" + genesis_.to_payload().serialize() + "\n";
    out += "id_counter=" + std::to_string(id_counter_) + "\n";
    out += "en_keys=" + join(std::vector(en_keys_.begin() + 1, en_keys_.end()), opt_hex) + "\n";
    out += "de_keys=" + join(std::vector(de_keys_.begin() + 1, de_keys_.end()), opt_hex) + "\n";
    out += "hash_database=" +
           join(hash_database_, [](const auto& kv) { return kv.first.hex() + (kv.second ? ":1" : ":0"); }) + "\n";
    for (KeyId i = 1; i <= genesis_.num_keys; ++i) {
        out += "batch." + std::to_string(i) + "=" +
               join(vote_batch_[i], [](const crypto::VoteCiphertext& c) { return to_hex(c.beta) + ":" + to_hex(c.gamma); }) +
               "\n";
    }
    out += "refund=" + join(refund_amt_, [](const auto& kv) { return kv.first.hex() + ":" + to_hex(kv.second); }) + "\n";
    out += std::string("tally_done=") + (tally_done_ ? "1" : "0") + "\n";
    out += "tally=" + cand_tally_.to_payload().serialize() + "\n";
    return out;
}

std::unique_ptr<ledger::ContractHost> make_voting_contract(const Payload& genesis) {
    return std::make_unique<VotingContract>(ContractGenesis::from_payload(genesis));
}

}  // namespace fasten::contract
