#include "qbounty/ledger.hpp"

#include "qbounty/errors.hpp"

#include <algorithm>

namespace qbounty {

std::uint64_t CostSchedule::modpow_cost(std::size_t exponent_bits, std::uint64_t w) const {
    // ceil(1.5 * exponent_bits) modular multiplications at width w
    std::uint64_t muls = (3 * static_cast<std::uint64_t>(exponent_bits) + 1) / 2;
    return muls * modmul_cost(w, w);
}

std::uint64_t CostSchedule::miller_rabin_cost(std::size_t n_bits) const {
    // each round is one modular exponentiation with an (n_bits)-bit exponent
    return static_cast<std::uint64_t>(mr_rounds) * modpow_cost(n_bits, words64(n_bits));
}

const char* operation_name(const Operation& op) {
    switch (op.index()) {
    case 0: return "fund";
    case 1: return "contribute";
    case 2: return "commit";
    case 3: return "reveal";
    }
    return "unknown";
}

namespace {

Bytes serialize_operation(const Operation& op) {
    Bytes out;
    if (const auto* fund = std::get_if<FundOp>(&op)) {
        out.push_back(0x01);
        append_u64_be(out, fund->amount);
    } else if (const auto* contribute = std::get_if<ContributeOp>(&op)) {
        out.push_back(0x02);
        append_bytes(out, ByteView(contribute->word.data(), contribute->word.size()));
    } else if (const auto* commit = std::get_if<CommitOp>(&op)) {
        out.push_back(0x03);
        append_u64_be(out, commit->lock_index);
        append_bytes(out, ByteView(commit->digest.data(), commit->digest.size()));
    } else if (const auto* reveal = std::get_if<RevealOp>(&op)) {
        out.push_back(0x04);
        append_bytes(out, ByteView(reveal->solution.canonical_encoding()));
    }
    return out;
}

Hash256 transaction_digest(const AppliedTx& applied) {
    HashWriter w;
    w.write_u64(applied.tx.seq);
    w.write(applied.tx.sender.view());
    w.write(ByteView(serialize_operation(applied.tx.op)));
    w.write_byte(applied.ok ? 1 : 0);
    return w.finalize();
}

} // namespace

std::uint64_t metered_cost(const Operation& op, const CostSchedule& costs) {
    std::uint64_t total = costs.base_tx;
    if (std::holds_alternative<FundOp>(op)) {
        total += costs.storage_write;
    } else if (std::holds_alternative<ContributeOp>(op)) {
        // mixing hash (word + chain digest + block digest + contributor)
        // plus the chain-digest update, plus the buffer append
        total += costs.hash_cost(32 + 32 + 32 + 20);
        total += costs.hash_cost(64);
        total += costs.storage_write;
    } else if (std::holds_alternative<CommitOp>(op)) {
        total += costs.storage_write;
    } else if (const auto* reveal = std::get_if<RevealOp>(&op)) {
        const auto& factors = reveal->solution.factors;
        Bytes encoding = reveal->solution.canonical_encoding();
        total += costs.hash_cost(encoding.size() + 20); // digest re-derivation
        std::size_t product_bits = 0;
        for (const BigUint& f : factors)
            product_bits += f.bit_length();
        std::uint64_t product_words = CostSchedule::words64(product_bits == 0 ? 1 : product_bits);
        for (const BigUint& f : factors) {
            std::size_t fbits = f.bit_length() == 0 ? 1 : f.bit_length();
            total += costs.miller_rabin_cost(fbits);
            total += costs.modmul_cost(product_words, CostSchedule::words64(fbits));
        }
        total += costs.storage_write;
    }
    return total;
}

double update_base_fee(double base_fee, std::uint64_t cost_used, std::uint64_t cost_target) {
    double deviation = (static_cast<double>(cost_used) - static_cast<double>(cost_target)) /
                       static_cast<double>(cost_target);
    double next = base_fee * (1.0 + deviation / 8.0);
    return next < 1.0 ? 1.0 : next;
}

Ledger::Ledger(GenerationParams gen_params, LedgerParams ledger_params,
               std::uint64_t reveal_delay_seconds, std::uint64_t min_bounty)
    : gen_params_(gen_params),
      params_(ledger_params),
      accumulator_(gen_params.target_bytes()),
      bounty_(reveal_delay_seconds, min_bounty),
      base_fee_(ledger_params.initial_base_fee) {
    gen_params_.validate();
    if (params_.cost_limit < 2) raise(Errc::OutOfRange, "cost limit too small");
}

std::uint64_t Ledger::submit(const Address& sender, Operation op, double priority_fee) {
    std::uint64_t cost = metered_cost(op, params_.costs);
    if (cost > params_.cost_limit)
        raise(Errc::Unincludable, "operation exceeds the block cost limit");
    Transaction tx{next_seq_++, sender, std::move(op), priority_fee, cost, time_};
    mempool_.push_back(std::move(tx));
    return mempool_.back().seq;
}

void Ledger::submit_exact(const Transaction& tx) {
    if (tx.cost > params_.cost_limit)
        raise(Errc::Unincludable, "operation exceeds the block cost limit");
    mempool_.push_back(tx);
    if (tx.seq >= next_seq_) next_seq_ = tx.seq + 1;
}

void Ledger::apply_operation(const Address& sender, const Operation& op) {
    if (const auto* fund = std::get_if<FundOp>(&op)) {
        bounty_.fund(sender, fund->amount);
    } else if (const auto* contribute = std::get_if<ContributeOp>(&op)) {
        accumulator_.contribute(contribute->word, ContributionContext{tip_digest_, sender});
        if (accumulator_.complete() && !bounty_.generation_complete())
            bounty_.install_locks(extract_locks(accumulator_, gen_params_));
    } else if (const auto* commit = std::get_if<CommitOp>(&op)) {
        bounty_.commit(sender, commit->lock_index, commit->digest, time_);
    } else if (const auto* reveal = std::get_if<RevealOp>(&op)) {
        auto verifier = [](const Lock& lock, const FactorizationSolution& solution) {
            return verify_factorization(lock, solution);
        };
        bounty_.reveal(sender, reveal->solution.lock_index, reveal->solution, time_, verifier);
    }
}

const BlockRecord& Ledger::advance_block(bool censor_reveals) {
    height_ += 1;
    time_ += params_.block_time_seconds;

    // fee-descending greedy packing; FIFO among equal fees
    std::vector<std::size_t> order(mempool_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return mempool_[a].priority_fee > mempool_[b].priority_fee;
    });

    BlockRecord block;
    block.height = height_;
    block.time = time_;
    block.censored = censor_reveals;

    std::vector<bool> included(mempool_.size(), false);
    std::uint64_t used = 0;
    for (std::size_t idx : order) {
        const Transaction& tx = mempool_[idx];
        if (censor_reveals && std::holds_alternative<RevealOp>(tx.op)) continue;
        if (used + tx.cost > params_.cost_limit) continue;
        AppliedTx applied;
        applied.tx = tx;
        try {
            apply_operation(tx.sender, tx.op);
            applied.ok = true;
        } catch (const ProtocolError& e) {
            applied.ok = false;
            applied.error = errc_name(e.code());
        }
        used += tx.cost; // failed operations still consume their cost
        included[idx] = true;
        block.txs.push_back(std::move(applied));
    }

    std::vector<Transaction> rest;
    rest.reserve(mempool_.size() - block.txs.size());
    for (std::size_t i = 0; i < mempool_.size(); ++i)
        if (!included[i]) rest.push_back(std::move(mempool_[i]));
    mempool_ = std::move(rest);

    block.cost_used = used;
    base_fee_ = update_base_fee(base_fee_, used, params_.cost_limit / 2);
    block.base_fee_after = base_fee_;

    HashWriter w;
    w.write(ByteView(tip_digest_.data(), tip_digest_.size()));
    w.write_u64(height_);
    w.write_u64(time_);
    for (const AppliedTx& applied : block.txs) {
        Hash256 d = transaction_digest(applied);
        w.write(ByteView(d.data(), d.size()));
    }
    tip_digest_ = w.finalize();
    block.digest = tip_digest_;

    history_.push_back(std::move(block));
    return history_.back();
}

void Ledger::advance_blocks(std::uint64_t n, bool censor_reveals) {
    for (std::uint64_t i = 0; i < n; ++i) advance_block(censor_reveals);
}

} // namespace qbounty
