#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace qbounty {

enum class AttackStrategy {
    CensorReveal,    // bribed proposers leave the victim's reveal out
    FeeSpam,         // attacker stuffs blocks to crowd the reveal out
    CopyAndFrontrun, // both, plus the attacker commits to the copied solution
};

const char* attack_strategy_name(AttackStrategy s);
AttackStrategy attack_strategy_from_name(const std::string& name);

// One experiment: a victim broadcasts a reveal at t = 0; the attacker saw the
// solution in the mempool and tries to take the bounty for themselves.
struct FrontrunScenario {
    AttackStrategy strategy = AttackStrategy::CopyAndFrontrun;
    double censor_fraction = 0.9;      // share of proposers the attacker controls/bribes
    std::uint64_t block_time_seconds = 12;
    std::uint64_t reveal_delay_seconds = 86'400;
    std::uint32_t trials = 10'000;
    std::uint64_t seed = 1;
    double spam_budget = 0.0;          // fee units available for block stuffing
    std::uint64_t cost_limit = 30'000'000;
    double initial_base_fee = 1.0;

    void validate() const;
};

struct FrontrunReport {
    double attack_success_rate = 0.0;
    double mean_inclusion_delay_seconds = 0.0; // over trials where the victim landed
    double attacker_spend = 0.0;               // mean fee spend per trial
    std::uint32_t trials = 0;
    std::uint32_t included_trials = 0;
    std::uint64_t seed = 0;

    std::string to_text() const; // fixed "name = value" lines
};

// Deterministic for a given scenario (per-trial RNG streams derived from the
// seed). The attack succeeds only if the attacker's own commitment ages past
// the reveal delay while the victim's reveal never makes it into a block.
FrontrunReport simulate_frontrun(const FrontrunScenario& scenario);

// key = value lines; '#' starts a comment. Unknown keys raise InvalidInput.
FrontrunScenario parse_scenario(std::istream& in);

} // namespace qbounty
