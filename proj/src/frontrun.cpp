#include "qbounty/frontrun.hpp"

#include "qbounty/errors.hpp"
#include "qbounty/ledger.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <random>
#include <sstream>

namespace qbounty {

const char* attack_strategy_name(AttackStrategy s) {
    switch (s) {
    case AttackStrategy::CensorReveal: return "censor-reveal";
    case AttackStrategy::FeeSpam: return "fee-spam";
    case AttackStrategy::CopyAndFrontrun: return "copy-and-frontrun";
    }
    return "unknown";
}

AttackStrategy attack_strategy_from_name(const std::string& name) {
    if (name == "censor-reveal") return AttackStrategy::CensorReveal;
    if (name == "fee-spam") return AttackStrategy::FeeSpam;
    if (name == "copy-and-frontrun") return AttackStrategy::CopyAndFrontrun;
    raise(Errc::InvalidInput, "unknown attack strategy: " + name);
}

void FrontrunScenario::validate() const {
    if (trials < 1) raise(Errc::OutOfRange, "at least one trial required");
    if (!(censor_fraction >= 0.0 && censor_fraction < 1.0))
        raise(Errc::OutOfRange, "censor_fraction must lie in [0, 1)");
    if (block_time_seconds < 1) raise(Errc::OutOfRange, "block_time must be positive");
    if (spam_budget < 0.0) raise(Errc::OutOfRange, "spam_budget cannot be negative");
    if (cost_limit < 2) raise(Errc::OutOfRange, "cost limit too small");
    if (!(initial_base_fee >= 1.0)) raise(Errc::OutOfRange, "base fee starts at 1 or above");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// uniform in [0, 1) with 53 random bits; avoids distribution objects so the
// stream is identical across standard library implementations
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct TrialResult {
    bool attack_succeeded = false;
    bool victim_included = false;
    std::uint64_t inclusion_time = 0;
    double spend = 0.0;
};

TrialResult run_trial(const FrontrunScenario& sc, std::uint64_t trial) {
    std::mt19937_64 rng(splitmix64(sc.seed ^ splitmix64(trial + 1)));

    const bool censors = sc.strategy == AttackStrategy::CensorReveal ||
                         sc.strategy == AttackStrategy::CopyAndFrontrun;
    const bool spams = sc.strategy == AttackStrategy::FeeSpam ||
                       sc.strategy == AttackStrategy::CopyAndFrontrun;
    const bool recommits = sc.strategy == AttackStrategy::CopyAndFrontrun;

    // victim's reveal hits the mempool at t = 0; a copying attacker commits in
    // the first block after seeing it
    const std::uint64_t attacker_commit_time = sc.block_time_seconds;

    TrialResult result;
    double base_fee = sc.initial_base_fee;
    const std::uint64_t target = sc.cost_limit / 2;

    for (std::uint64_t block = 1;; ++block) {
        const std::uint64_t t = block * sc.block_time_seconds;

        // attacker outbids everyone, so a stuffed block holds only spam
        bool stuffed = false;
        if (spams) {
            double stuffing_cost = base_fee * static_cast<double>(sc.cost_limit);
            if (result.spend + stuffing_cost <= sc.spam_budget) {
                result.spend += stuffing_cost;
                stuffed = true;
            }
        }

        // once the attacker's own commitment has aged, their reveal rides the
        // next block ahead of the victim's (they pay the higher fee)
        if (recommits && t >= attacker_commit_time + sc.reveal_delay_seconds) {
            result.attack_succeeded = true;
            return result;
        }

        if (!stuffed) {
            bool censored = censors && uniform01(rng) < sc.censor_fraction;
            if (!censored) {
                result.victim_included = true;
                result.inclusion_time = t;
                return result;
            }
        }

        base_fee = update_base_fee(base_fee, stuffed ? sc.cost_limit : 0, target);

        // without a commitment of their own the attacker can only delay;
        // bounded-horizon guard for strategies that cannot terminate by success
        if (!recommits && t > sc.reveal_delay_seconds + 365ULL * 86'400)
            return result;
    }
}

} // namespace

FrontrunReport simulate_frontrun(const FrontrunScenario& scenario) {
    scenario.validate();

    FrontrunReport report;
    report.trials = scenario.trials;
    report.seed = scenario.seed;

    std::uint64_t successes = 0;
    std::uint64_t included = 0;
    double delay_sum = 0.0;
    double spend_sum = 0.0;
    for (std::uint32_t trial = 0; trial < scenario.trials; ++trial) {
        TrialResult r = run_trial(scenario, trial);
        if (r.attack_succeeded) ++successes;
        if (r.victim_included) {
            ++included;
            delay_sum += static_cast<double>(r.inclusion_time);
        }
        spend_sum += r.spend;
    }

    report.attack_success_rate = static_cast<double>(successes) / scenario.trials;
    report.included_trials = static_cast<std::uint32_t>(included);
    report.mean_inclusion_delay_seconds = included ? delay_sum / static_cast<double>(included) : 0.0;
    report.attacker_spend = spend_sum / scenario.trials;
    return report;
}

std::string FrontrunReport::to_text() const {
    std::ostringstream out;
    out << "attack_success_rate = " << attack_success_rate << "\n";
    out << "mean_inclusion_delay_seconds = " << mean_inclusion_delay_seconds << "\n";
    out << "attacker_spend = " << attacker_spend << "\n";
    out << "trials = " << trials << "\n";
    out << "included_trials = " << included_trials << "\n";
    out << "seed = " << seed << "\n";
    return out.str();
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

FrontrunScenario parse_scenario(std::istream& in) {
    FrontrunScenario sc;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            raise(Errc::InvalidInput, "scenario line " + std::to_string(lineno) + " is not key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        try {
            if (key == "strategy") sc.strategy = attack_strategy_from_name(value);
            else if (key == "censor_fraction") sc.censor_fraction = std::stod(value);
            else if (key == "block_time_seconds") sc.block_time_seconds = std::stoull(value);
            else if (key == "reveal_delay_seconds") sc.reveal_delay_seconds = std::stoull(value);
            else if (key == "trials") sc.trials = static_cast<std::uint32_t>(std::stoul(value));
            else if (key == "seed") sc.seed = std::stoull(value);
            else if (key == "spam_budget") sc.spam_budget = std::stod(value);
            else if (key == "cost_limit") sc.cost_limit = std::stoull(value);
            else if (key == "initial_base_fee") sc.initial_base_fee = std::stod(value);
            else raise(Errc::InvalidInput, "unknown scenario key: " + key);
        } catch (const std::invalid_argument&) {
            raise(Errc::InvalidInput, "bad value for " + key + " on line " + std::to_string(lineno));
        } catch (const std::out_of_range&) {
            raise(Errc::InvalidInput, "value out of range for " + key + " on line " + std::to_string(lineno));
        }
    }
    sc.validate();
    return sc;
}

} // namespace qbounty
