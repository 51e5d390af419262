#include "qbounty/bounty.hpp"

#include "qbounty/errors.hpp"

#include <algorithm>

namespace qbounty {

Hash256 commitment_digest(const FactorizationSolution& solution, const Address& solver) {
    HashWriter w;
    w.write(ByteView(solution.canonical_encoding()));
    w.write(solver.view());
    return w.finalize();
}

double min_bounty_in_currency(double gas_required, double gas_price_gwei) {
    return gas_required * gas_price_gwei * 1e-9;
}

BountyState::BountyState(std::uint64_t reveal_delay_seconds, std::uint64_t min_bounty)
    : reveal_delay_(reveal_delay_seconds), min_bounty_(min_bounty) {}

void BountyState::reject_if_solved() const {
    if (solved_) raise(Errc::AlreadySolved, "bounty is settled");
}

void BountyState::install_locks(std::vector<Lock> locks) {
    if (generation_complete_) raise(Errc::AlreadyComplete, "locks already installed");
    if (locks.empty()) raise(Errc::InvalidInput, "a bounty needs at least one lock");
    for (const Lock& lock : locks)
        if (lock.solved) raise(Errc::InvalidInput, "freshly generated locks must be unsolved");
    locks_ = std::move(locks);
    generation_complete_ = true;
}

void BountyState::fund(const Address&, std::uint64_t amount) {
    reject_if_solved();
    if (amount == 0) raise(Errc::ZeroAmount, "funding must move a positive amount");
    balance_ += amount;
}

void BountyState::commit(const Address& solver, std::uint32_t lock_index, const Hash256& digest,
                         std::uint64_t now) {
    reject_if_solved();
    if (!generation_complete_) raise(Errc::GenerationIncomplete, "locks are not generated yet");
    if (lock_index >= locks_.size()) raise(Errc::BadLockIndex, "no such lock");
    if (locks_[lock_index].solved) raise(Errc::LockAlreadySolved, "lock is already open");
    // re-commit replaces the digest and restarts the reveal clock
    commitments_[{solver, lock_index}] = Commitment{digest, now};
}

void BountyState::withdraw_commit(const Address& solver, std::uint32_t lock_index) {
    reject_if_solved();
    auto it = commitments_.find({solver, lock_index});
    if (it == commitments_.end()) raise(Errc::NoCommitment, "nothing to withdraw");
    commitments_.erase(it);
}

BountyState::RevealOutcome BountyState::reveal(const Address& solver, std::uint32_t lock_index,
                                               const FactorizationSolution& solution,
                                               std::uint64_t now, const SolutionVerifier& verifier) {
    reject_if_solved();
    auto it = commitments_.find({solver, lock_index});
    if (it == commitments_.end()) raise(Errc::NoCommitment, "reveal requires a prior commitment");
    Lock& lock = locks_.at(lock_index);
    if (lock.solved) raise(Errc::LockAlreadySolved, "lock is already open");
    const Commitment& c = it->second;
    if (now < c.committed_at + reveal_delay_)
        raise(Errc::RevealTooEarly, "commitment has not aged past the reveal delay");
    if (commitment_digest(solution, solver) != c.digest)
        raise(Errc::DigestMismatch, "solution does not match the committed digest");
    VerifyResult vr = verifier(lock, solution);
    if (!vr.accepted)
        raise(Errc::VerificationFailed, reject_reason_name(vr.reason));

    lock.solved = true;
    lock.solver = solver;
    commitments_.erase(it);

    RevealOutcome outcome;
    outcome.lock_solved = true;
    if (unsolved_count() == 0) {
        Payout payout{solver, balance_, now};
        balance_ = 0;
        solved_ = true;
        payouts_.push_back(payout);
        outcome.bounty_solved = true;
        outcome.payout = payout;
    }
    return outcome;
}

std::size_t BountyState::unsolved_count() const {
    return static_cast<std::size_t>(
        std::count_if(locks_.begin(), locks_.end(), [](const Lock& l) { return !l.solved; }));
}

} // namespace qbounty
