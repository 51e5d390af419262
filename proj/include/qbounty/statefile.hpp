#pragma once

#include "qbounty/ledger.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

namespace qbounty {

inline constexpr int kStateFormatVersion = 1;
inline constexpr const char* kHashFamily = "keccak256";

// Live-state snapshots (for equality checks and status displays).
nlohmann::ordered_json bounty_snapshot(const BountyState& bounty);
nlohmann::ordered_json accumulator_snapshot(const AccumulatorState& acc);

// Full persisted form: header, profile, event log, pending mempool. Loading
// replays the event log through a fresh ledger, so a loaded state is exactly
// the state the log produces.
nlohmann::ordered_json state_to_json(const Ledger& ledger, const std::string& instance);

struct LoadedState {
    Ledger ledger;
    std::string instance;
};

LoadedState state_from_json(const nlohmann::ordered_json& doc);

void save_state(const std::filesystem::path& path, const Ledger& ledger, const std::string& instance);
LoadedState load_state(const std::filesystem::path& path); // Errc::BadStateFile

std::string random_instance_token();

// Cooperative single-writer guard: holds "<state>.lock" for this process's
// lifetime; a second owner gets Errc::StateLocked.
class SingleInstanceLock {
public:
    explicit SingleInstanceLock(const std::filesystem::path& state_path);
    ~SingleInstanceLock();

    SingleInstanceLock(const SingleInstanceLock&) = delete;
    SingleInstanceLock& operator=(const SingleInstanceLock&) = delete;

private:
    std::filesystem::path lock_path_;
    bool held_ = false;
};

} // namespace qbounty
