#pragma once

#include "qbounty/accumulator.hpp"
#include "qbounty/address.hpp"
#include "qbounty/hash.hpp"
#include "qbounty/verifiers.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace qbounty {

// Solution digest bound to the solver so nobody can replay someone else's
// reveal: keccak256(canonical_encoding(solution) || solver address).
Hash256 commitment_digest(const FactorizationSolution& solution, const Address& solver);

// gas * price expressed in whole currency (price given in 1e-9 currency units).
double min_bounty_in_currency(double gas_required, double gas_price_gwei);

struct Commitment {
    Hash256 digest{};
    std::uint64_t committed_at = 0;
};

struct Payout {
    Address solver{};
    std::uint64_t amount = 0;
    std::uint64_t at_time = 0;
};

// How a reveal gets checked against its lock; injected so callers choose the
// puzzle family and primality settings.
using SolutionVerifier = std::function<VerifyResult(const Lock&, const FactorizationSolution&)>;

// Pot, locks, and commitments for one bounty instance. Mutations follow the
// lifecycle: accumulate entropy -> install locks -> fund/commit/reveal ->
// solved (terminal; everything after is rejected with AlreadySolved).
class BountyState {
public:
    using CommitKey = std::pair<Address, std::uint32_t>;

    explicit BountyState(std::uint64_t reveal_delay_seconds = 86'400, std::uint64_t min_bounty = 0);

    // Called once when entropy generation completes. Errc::AlreadyComplete after.
    void install_locks(std::vector<Lock> locks);

    void fund(const Address& from, std::uint64_t amount);
    void commit(const Address& solver, std::uint32_t lock_index, const Hash256& digest,
                std::uint64_t now);
    void withdraw_commit(const Address& solver, std::uint32_t lock_index);

    struct RevealOutcome {
        bool lock_solved = false;
        bool bounty_solved = false;      // this reveal solved the last lock
        std::optional<Payout> payout;    // full pot, paid only on the final reveal
    };

    RevealOutcome reveal(const Address& solver, std::uint32_t lock_index,
                         const FactorizationSolution& solution, std::uint64_t now,
                         const SolutionVerifier& verifier);

    bool generation_complete() const { return generation_complete_; }
    bool solved() const { return solved_; }
    std::uint64_t balance() const { return balance_; }
    std::uint64_t min_bounty() const { return min_bounty_; }
    bool underfunded() const { return balance_ < min_bounty_; }
    std::uint64_t reveal_delay() const { return reveal_delay_; }
    const std::vector<Lock>& locks() const { return locks_; }
    std::size_t unsolved_count() const;
    const std::map<CommitKey, Commitment>& commitments() const { return commitments_; }
    const std::vector<Payout>& payouts() const { return payouts_; }

private:
    void reject_if_solved() const;

    std::uint64_t reveal_delay_;
    std::uint64_t min_bounty_;
    bool generation_complete_ = false;
    bool solved_ = false;
    std::uint64_t balance_ = 0;
    std::vector<Lock> locks_;
    std::map<CommitKey, Commitment> commitments_;
    std::vector<Payout> payouts_;
};

} // namespace qbounty
