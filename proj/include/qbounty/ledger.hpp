#pragma once

#include "qbounty/accumulator.hpp"
#include "qbounty/bounty.hpp"
#include "qbounty/params.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace qbounty {

// Abstract cost units for ledger operations, in the style of metered
// execution: a flat per-transaction charge, a quadratic-in-width modular
// multiplication, per-word hashing, and a storage write premium.
struct CostSchedule {
    std::uint64_t base_tx = 21'000;
    std::uint64_t modmul_word2 = 30;    // per 64-bit-word-pair modular multiply
    std::uint64_t hash_word = 36;       // per 32-byte word hashed
    std::uint64_t storage_write = 20'000;
    std::uint32_t mr_rounds = 64;       // rounds charged per primality check

    static std::uint64_t words64(std::size_t bits) { return (bits + 63) / 64; }

    // one w1-word by w2-word modular multiplication
    std::uint64_t modmul_cost(std::uint64_t w1, std::uint64_t w2) const {
        return modmul_word2 * w1 * w2;
    }
    // square-and-multiply: ~1.5 multiplications per exponent bit at width w
    std::uint64_t modpow_cost(std::size_t exponent_bits, std::uint64_t w) const;
    // one Miller-Rabin primality check over an n_bits-wide candidate
    std::uint64_t miller_rabin_cost(std::size_t n_bits) const;
    std::uint64_t hash_cost(std::size_t n_bytes) const {
        return hash_word * ((n_bytes + 31) / 32);
    }
};

struct FundOp {
    std::uint64_t amount = 0;
};
struct ContributeOp {
    Word256 word{};
};
struct CommitOp {
    std::uint32_t lock_index = 0;
    Hash256 digest{};
};
struct RevealOp {
    FactorizationSolution solution;
};

using Operation = std::variant<FundOp, ContributeOp, CommitOp, RevealOp>;

const char* operation_name(const Operation& op);

// Deterministic cost of an operation under a schedule. Reveal cost is
// dominated by one Miller-Rabin check per claimed factor plus the product
// recomputation and hashing of the canonical encoding.
std::uint64_t metered_cost(const Operation& op, const CostSchedule& costs);

struct Transaction {
    std::uint64_t seq = 0;
    Address sender{};
    Operation op;
    double priority_fee = 0.0;
    std::uint64_t cost = 0;
    std::uint64_t submitted_at = 0;
};

struct AppliedTx {
    Transaction tx;
    bool ok = false;
    std::string error; // Errc name when !ok
};

struct BlockRecord {
    std::uint64_t height = 0;
    std::uint64_t time = 0;
    bool censored = false;
    std::uint64_t cost_used = 0;
    double base_fee_after = 0.0;
    Hash256 digest{};
    std::vector<AppliedTx> txs;
};

struct LedgerParams {
    std::uint64_t block_time_seconds = 12;
    std::uint64_t cost_limit = 30'000'000;
    double initial_base_fee = 1.0;
    CostSchedule costs;
};

// One fee-update step: the base fee moves by up to 1/8 toward matching the
// target (half the limit), and never drops below 1.
double update_base_fee(double base_fee, std::uint64_t cost_used, std::uint64_t cost_target);

// Single-proposer chain simulation owning the protocol state. Transactions
// enter a mempool and are packed into blocks by descending priority fee; a
// censoring proposer simply leaves reveal transactions out.
class Ledger {
public:
    Ledger(GenerationParams gen_params, LedgerParams ledger_params,
           std::uint64_t reveal_delay_seconds = 86'400, std::uint64_t min_bounty = 0);

    // Errc::Unincludable when the op alone exceeds the block cost limit.
    std::uint64_t submit(const Address& sender, Operation op, double priority_fee);
    // Re-enter a recorded transaction verbatim (state-file replay path).
    void submit_exact(const Transaction& tx);

    const BlockRecord& advance_block(bool censor_reveals = false);
    void advance_blocks(std::uint64_t n, bool censor_reveals = false);

    const GenerationParams& gen_params() const { return gen_params_; }
    const LedgerParams& params() const { return params_; }
    std::uint64_t reveal_delay() const { return bounty_.reveal_delay(); }
    std::uint64_t height() const { return height_; }
    std::uint64_t now() const { return time_; }
    double base_fee() const { return base_fee_; }
    const Hash256& tip_digest() const { return tip_digest_; }
    const AccumulatorState& accumulator() const { return accumulator_; }
    const BountyState& bounty() const { return bounty_; }
    const std::vector<Transaction>& mempool() const { return mempool_; }
    const std::vector<BlockRecord>& history() const { return history_; }
    std::uint64_t next_seq() const { return next_seq_; }

private:
    void apply_operation(const Address& sender, const Operation& op);

    GenerationParams gen_params_;
    LedgerParams params_;
    AccumulatorState accumulator_;
    BountyState bounty_;
    std::vector<Transaction> mempool_;
    std::vector<BlockRecord> history_;
    std::uint64_t next_seq_ = 1;
    std::uint64_t height_ = 0;
    std::uint64_t time_ = 0;
    double base_fee_;
    Hash256 tip_digest_{};
};

} // namespace qbounty
