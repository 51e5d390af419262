// Command-line front end: every mutation is a transaction pushed through the
// simulated ledger, then the state file is rewritten.

#include "qbounty/bounty.hpp"
#include "qbounty/errors.hpp"
#include "qbounty/frontrun.hpp"
#include "qbounty/ledger.hpp"
#include "qbounty/params.hpp"
#include "qbounty/statefile.hpp"
#include "qbounty/verifiers.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace qbounty;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRejected = 3;
constexpr int kExitIo = 4;

int exit_code_for(Errc code) {
    switch (code) {
    case Errc::StateExists:
    case Errc::BadStateFile:
    case Errc::StateLocked:
        return kExitIo;
    case Errc::InvalidInput:
    case Errc::OutOfRange:
    case Errc::ZeroModulus:
    case Errc::BothZero:
        return kExitUsage;
    default:
        return kExitRejected;
    }
}

std::vector<BigUint> parse_factor_list(const std::string& text) {
    std::vector<BigUint> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string item = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                         : comma - start);
        if (item.empty()) raise(Errc::InvalidInput, "empty factor in list");
        out.push_back(BigUint::from_hex(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) raise(Errc::InvalidInput, "expected at least one factor");
    return out;
}

Word256 parse_word(const std::string& hex) {
    Bytes raw = hex_decode(hex);
    if (raw.size() != 32) raise(Errc::InvalidInput, "contribution word must be 32 bytes of hex");
    Word256 w;
    std::copy(raw.begin(), raw.end(), w.begin());
    return w;
}

Word256 random_word() {
    std::random_device rd;
    Word256 w;
    for (auto& b : w) b = static_cast<std::uint8_t>(rd() & 0xff);
    return w;
}

// Submits one operation, seals blocks until it lands, and reports the outcome.
// Failed operations stay on the ledger (they consumed their cost); the command
// still exits nonzero so scripts see the rejection.
const AppliedTx& push_through(Ledger& ledger, const Address& sender, Operation op, double fee) {
    std::uint64_t seq = ledger.submit(sender, std::move(op), fee);
    for (int i = 0; i < 64; ++i) {
        const BlockRecord& block = ledger.advance_block();
        for (const AppliedTx& applied : block.txs)
            if (applied.tx.seq == seq) return applied;
    }
    raise(Errc::Unincludable, "transaction was not included after 64 blocks");
}

struct StateSession {
    explicit StateSession(const std::string& path)
        : guard(path), loaded(load_state(path)), path_(path) {}

    void save() { save_state(path_, loaded.ledger, loaded.instance); }

    SingleInstanceLock guard;
    LoadedState loaded;

private:
    std::string path_;
};

void print_status(const Ledger& ledger, const std::string& instance) {
    const BountyState& bounty = ledger.bounty();
    const AccumulatorState& acc = ledger.accumulator();
    std::cout << "instance = " << instance << "\n";
    std::cout << "height = " << ledger.height() << "\n";
    std::cout << "time = " << ledger.now() << "\n";
    std::cout << "base_fee = " << ledger.base_fee() << "\n";
    std::cout << "mempool = " << ledger.mempool().size() << "\n";
    std::cout << "entropy_filled_bytes = " << acc.buffer().size() << "\n";
    std::cout << "entropy_target_bytes = " << acc.target_bytes() << "\n";
    std::cout << "generation_complete = " << (bounty.generation_complete() ? "true" : "false") << "\n";
    std::cout << "balance = " << bounty.balance() << "\n";
    std::cout << "min_bounty = " << bounty.min_bounty() << "\n";
    if (bounty.underfunded())
        std::cout << "warning = balance below min_bounty\n";
    std::cout << "commitments = " << bounty.commitments().size() << "\n";
    std::cout << "solved = " << (bounty.solved() ? "true" : "false") << "\n";
    if (bounty.generation_complete()) {
        std::cout << "locks_unsolved = " << bounty.unsolved_count() << "\n";
        for (const Lock& lock : bounty.locks()) {
            std::cout << "lock[" << lock.index << "] = " << lock.value.to_hex()
                      << (lock.solved ? " solved by " + lock.solver->to_hex() : " unsolved") << "\n";
        }
    }
    for (const Payout& p : bounty.payouts())
        std::cout << "payout = " << p.amount << " to " << p.solver.to_hex() << " at " << p.at_time
                  << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"factoring-bounty protocol simulator"};
    app.require_subcommand(1);

    std::string state_path;
    std::string from_hex = "01";
    double fee = 1.0;

    // generate
    auto* generate = app.add_subcommand("generate", "create a fresh state file");
    GenerationParams gen = GenerationParams::protocol_default();
    bool desk_scale = false;
    std::uint64_t reveal_delay = 86'400;
    std::uint64_t min_bounty = 0;
    LedgerParams ledger_params;
    std::optional<std::uint32_t> prime_bits_flag;
    generate->add_option("--state", state_path, "state file path")->required();
    generate->add_flag("--desk-scale", desk_scale, "8 locks x 64 bits, solvable on a laptop");
    generate->add_option("--locks", gen.lock_count, "number of locks");
    generate->add_option("--lock-bits", gen.lock_bits, "bit width of each lock");
    generate->add_option("--prime-bits", prime_bits_flag, "assumed hard-prime width (0 = none)");
    generate->add_option("--failure-prob", gen.failure_probability, "acceptable chance of zero hard locks");
    generate->add_option("--hardness", gen.per_lock_hardness, "per-lock hardness probability");
    generate->add_option("--reveal-delay", reveal_delay, "commit-to-reveal delay in seconds");
    generate->add_option("--min-bounty", min_bounty, "advisory funding floor");
    generate->add_option("--block-time", ledger_params.block_time_seconds, "seconds per block");
    generate->add_option("--cost-limit", ledger_params.cost_limit, "per-block cost limit");

    // contribute
    auto* contribute = app.add_subcommand("contribute", "feed entropy words into generation");
    std::string word_hex;
    std::uint32_t word_count = 1;
    contribute->add_option("--state", state_path, "state file path")->required();
    contribute->add_option("--from", from_hex, "contributor address (hex)");
    contribute->add_option("--word", word_hex, "32-byte hex word (default: random words)");
    contribute->add_option("--count", word_count, "number of random words to contribute");
    contribute->add_option("--fee", fee, "priority fee");

    // status
    auto* status = app.add_subcommand("status", "print the bounty state");
    bool verify_replay = false;
    status->add_option("--state", state_path, "state file path")->required();
    status->add_flag("--verify-replay", verify_replay, "re-run the event log and compare");

    // fund
    auto* fund = app.add_subcommand("fund", "add to the bounty pot");
    std::uint64_t amount = 0;
    fund->add_option("--state", state_path, "state file path")->required();
    fund->add_option("--from", from_hex, "funder address (hex)");
    fund->add_option("--amount", amount, "fund units to add")->required();
    fund->add_option("--fee", fee, "priority fee");

    // commit
    auto* commit = app.add_subcommand("commit", "commit to a solution digest");
    std::uint32_t lock_index = 0;
    std::string factors_text;
    std::string digest_hex;
    commit->add_option("--state", state_path, "state file path")->required();
    commit->add_option("--from", from_hex, "solver address (hex)");
    commit->add_option("--lock", lock_index, "lock index")->required();
    commit->add_option("--factors", factors_text, "comma-separated hex factors (digest computed)");
    commit->add_option("--digest", digest_hex, "precomputed 32-byte commitment digest");
    commit->add_option("--fee", fee, "priority fee");

    // reveal
    auto* reveal = app.add_subcommand("reveal", "open a commitment with the claimed factors");
    reveal->add_option("--state", state_path, "state file path")->required();
    reveal->add_option("--from", from_hex, "solver address (hex)");
    reveal->add_option("--lock", lock_index, "lock index")->required();
    reveal->add_option("--factors", factors_text, "comma-separated hex factors")->required();
    reveal->add_option("--fee", fee, "priority fee");

    // advance
    auto* advance = app.add_subcommand("advance", "seal empty blocks to pass time");
    std::uint64_t blocks = 1;
    bool censor = false;
    advance->add_option("--state", state_path, "state file path")->required();
    advance->add_option("--blocks", blocks, "number of blocks to seal");
    advance->add_flag("--censor", censor, "proposers leave reveals out of these blocks");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run a frontrunning experiment");
    std::string scenario_path;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::uint32_t> trials_override;
    simulate->add_option("--scenario", scenario_path, "scenario file (key = value lines)")->required();
    simulate->add_option("--seed", seed_override, "override the scenario seed");
    simulate->add_option("--trials", trials_override, "override the trial count");

    // params
    auto* params_cmd = app.add_subcommand("params", "print derived protocol parameters");
    double p_failure = 1e-9;
    double p_hardness = 0.16;
    std::optional<double> p_xi;
    std::uint32_t p_lock_bits = 4608;
    std::optional<std::uint32_t> p_locks;
    std::optional<double> p_coprime;
    double p_gas = 8e8;
    double p_gas_price = 23.8;
    params_cmd->add_option("--failure-prob", p_failure, "acceptable chance of zero hard locks");
    params_cmd->add_option("--hardness", p_hardness, "per-lock hardness probability");
    params_cmd->add_option("--xi", p_xi, "hard-prime size fraction; prints the hardness bound");
    params_cmd->add_option("--lock-bits", p_lock_bits, "lock width for the factor-count estimate");
    params_cmd->add_option("--locks", p_locks, "override lock count (default: required count)");
    params_cmd->add_option("--coprime-prob", p_coprime, "per-pair coprime chance; prints pair count");
    params_cmd->add_option("--gas", p_gas, "gas required to claim");
    params_cmd->add_option("--gas-price", p_gas_price, "gas price in billionths of a currency unit");

    // cost-report
    auto* cost_report = app.add_subcommand("cost-report", "print metered operation costs");
    std::string cost_state;
    std::uint32_t factor_bits = 512;
    std::uint32_t factor_count = 8;
    cost_report->add_option("--state", cost_state, "read the cost schedule from a state file");
    cost_report->add_option("--factor-bits", factor_bits, "claimed factor width for the reveal row");
    cost_report->add_option("--factors", factor_count, "claimed factor count for the reveal row");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (generate->parsed()) {
            if (desk_scale) gen = GenerationParams::desk_scale();
            if (prime_bits_flag) gen.prime_bits = *prime_bits_flag;
            else if (!desk_scale && gen.lock_bits != 4608 && gen.lock_bits % 3 == 0)
                gen.prime_bits = gen.lock_bits / 3;
            else if (!desk_scale && gen.lock_bits != 4608)
                gen.prime_bits = 0;
            gen.validate();
            if (std::filesystem::exists(state_path))
                raise(Errc::StateExists, state_path + " already exists");
            Ledger ledger(gen, ledger_params, reveal_delay, min_bounty);
            std::string instance = random_instance_token();
            save_state(state_path, ledger, instance);
            std::cout << "state = " << state_path << "\n";
            std::cout << "instance = " << instance << "\n";
            std::cout << "lock_count = " << gen.lock_count << "\n";
            std::cout << "lock_bits = " << gen.lock_bits << "\n";
            std::cout << "required_lock_count = "
                      << required_lock_count(gen.failure_probability, gen.per_lock_hardness) << "\n";
            std::cout << "entropy_target_bytes = " << gen.target_bytes() << "\n";
            return kExitOk;
        }

        if (contribute->parsed()) {
            StateSession session(state_path);
            Address from = Address::from_hex(from_hex);
            std::uint32_t n = word_hex.empty() ? word_count : 1;
            for (std::uint32_t i = 0; i < n; ++i) {
                Word256 word = word_hex.empty() ? random_word() : parse_word(word_hex);
                const AppliedTx& applied =
                    push_through(session.loaded.ledger, from, ContributeOp{word}, fee);
                if (!applied.ok) {
                    session.save();
                    std::cerr << "rejected: " << applied.error << "\n";
                    return kExitRejected;
                }
            }
            session.save();
            const AccumulatorState& acc = session.loaded.ledger.accumulator();
            std::cout << "entropy_filled_bytes = " << acc.buffer().size() << "\n";
            std::cout << "entropy_target_bytes = " << acc.target_bytes() << "\n";
            std::cout << "generation_complete = "
                      << (session.loaded.ledger.bounty().generation_complete() ? "true" : "false")
                      << "\n";
            return kExitOk;
        }

        if (status->parsed()) {
            StateSession session(state_path);
            print_status(session.loaded.ledger, session.loaded.instance);
            if (verify_replay) {
                auto serialized = state_to_json(session.loaded.ledger, session.loaded.instance);
                LoadedState again = state_from_json(serialized);
                bool same = state_to_json(again.ledger, again.instance) == serialized;
                std::cout << "replay = " << (same ? "consistent" : "DIVERGED") << "\n";
                if (!same) return kExitRejected;
            }
            return kExitOk;
        }

        if (fund->parsed()) {
            StateSession session(state_path);
            const AppliedTx& applied =
                push_through(session.loaded.ledger, Address::from_hex(from_hex), FundOp{amount}, fee);
            session.save();
            if (!applied.ok) {
                std::cerr << "rejected: " << applied.error << "\n";
                return kExitRejected;
            }
            std::cout << "balance = " << session.loaded.ledger.bounty().balance() << "\n";
            return kExitOk;
        }

        if (commit->parsed()) {
            StateSession session(state_path);
            Address from = Address::from_hex(from_hex);
            Hash256 digest;
            if (!factors_text.empty()) {
                FactorizationSolution solution;
                solution.lock_index = lock_index;
                solution.factors = parse_factor_list(factors_text);
                digest = commitment_digest(solution, from);
            } else if (!digest_hex.empty()) {
                digest = hash_from_hex(digest_hex);
            } else {
                raise(Errc::InvalidInput, "commit needs --factors or --digest");
            }
            const AppliedTx& applied =
                push_through(session.loaded.ledger, from, CommitOp{lock_index, digest}, fee);
            session.save();
            if (!applied.ok) {
                std::cerr << "rejected: " << applied.error << "\n";
                return kExitRejected;
            }
            std::cout << "commitment_digest = " << hash_to_hex(digest) << "\n";
            std::cout << "committed_at = " << session.loaded.ledger.now() << "\n";
            return kExitOk;
        }

        if (reveal->parsed()) {
            StateSession session(state_path);
            Address from = Address::from_hex(from_hex);
            FactorizationSolution solution;
            solution.lock_index = lock_index;
            solution.factors = parse_factor_list(factors_text);
            const AppliedTx& applied =
                push_through(session.loaded.ledger, from, RevealOp{std::move(solution)}, fee);
            session.save();
            if (!applied.ok) {
                std::cerr << "rejected: " << applied.error << "\n";
                return kExitRejected;
            }
            const BountyState& bounty = session.loaded.ledger.bounty();
            std::cout << "lock_solved = true\n";
            std::cout << "bounty_solved = " << (bounty.solved() ? "true" : "false") << "\n";
            if (!bounty.payouts().empty()) {
                const Payout& p = bounty.payouts().back();
                std::cout << "payout = " << p.amount << " to " << p.solver.to_hex() << "\n";
            }
            return kExitOk;
        }

        if (advance->parsed()) {
            StateSession session(state_path);
            session.loaded.ledger.advance_blocks(blocks, censor);
            session.save();
            std::cout << "height = " << session.loaded.ledger.height() << "\n";
            std::cout << "time = " << session.loaded.ledger.now() << "\n";
            return kExitOk;
        }

        if (simulate->parsed()) {
            std::ifstream in(scenario_path);
            if (!in) raise(Errc::BadStateFile, "cannot open " + scenario_path);
            FrontrunScenario scenario = parse_scenario(in);
            if (seed_override) scenario.seed = *seed_override;
            if (trials_override) scenario.trials = *trials_override;
            scenario.validate();
            FrontrunReport report = simulate_frontrun(scenario);
            std::cout << "strategy = " << attack_strategy_name(scenario.strategy) << "\n";
            std::cout << report.to_text();
            return kExitOk;
        }

        if (params_cmd->parsed()) {
            std::uint32_t required = required_lock_count(p_failure, p_hardness);
            std::uint32_t locks = p_locks.value_or(required);
            GenerationParams gp;
            gp.lock_count = locks;
            gp.lock_bits = p_lock_bits;
            gp.prime_bits = 0;
            gp.failure_probability = p_failure;
            gp.per_lock_hardness = p_hardness;
            std::cout << "required_lock_count = " << required << "\n";
            std::cout << "expected_prime_factor_count = " << expected_prime_factor_count(p_lock_bits)
                      << "\n";
            std::cout << "expected_hard_lock_count = " << expected_hard_lock_count(gp) << "\n";
            if (p_xi) std::cout << "sander_hardness = " << sander_hardness(*p_xi) << "\n";
            if (p_coprime)
                std::cout << "coprime_pair_count = " << coprime_pair_count(p_failure, *p_coprime)
                          << "\n";
            std::cout << "min_bounty_currency = " << min_bounty_in_currency(p_gas, p_gas_price)
                      << "\n";
            return kExitOk;
        }

        if (cost_report->parsed()) {
            CostSchedule costs;
            if (!cost_state.empty()) {
                LoadedState loaded = load_state(cost_state);
                costs = loaded.ledger.params().costs;
            }
            std::cout << "cost_fund = " << metered_cost(FundOp{1}, costs) << "\n";
            std::cout << "cost_contribute = " << metered_cost(ContributeOp{}, costs) << "\n";
            std::cout << "cost_commit = " << metered_cost(CommitOp{}, costs) << "\n";
            FactorizationSolution solution;
            solution.lock_index = 0;
            BigUint factor = (BigUint(1) << (factor_bits - 1)) + BigUint(1);
            for (std::uint32_t i = 0; i < factor_count; ++i)
                solution.factors.push_back(factor);
            std::cout << "cost_reveal(" << factor_count << "x" << factor_bits
                      << "b) = " << metered_cost(RevealOp{std::move(solution)}, costs) << "\n";
            std::cout << "cost_miller_rabin(" << factor_bits
                      << "b) = " << costs.miller_rabin_cost(factor_bits) << "\n";
            std::cout << "cost_modmul(" << CostSchedule::words64(factor_bits) << "w) = "
                      << costs.modmul_cost(CostSchedule::words64(factor_bits),
                                           CostSchedule::words64(factor_bits))
                      << "\n";
            return kExitOk;
        }
    } catch (const ProtocolError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    return run(argc, argv);
}
