#include "qbounty/errors.hpp"
#include "qbounty/statefile.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace qbounty;
namespace fs = std::filesystem;

namespace {

const Address kFunder = Address::from_hex("f00d");
const Address kSolver = Address::from_hex("50e1");

struct TempFile {
    fs::path path;
    explicit TempFile(const char* name)
        : path(fs::temp_directory_path() / (std::string("qbounty-test-") + name)) {
        fs::remove(path);
    }
    ~TempFile() {
        std::error_code ec;
        fs::remove(path, ec);
        fs::remove(path.string() + ".lock", ec);
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const ProtocolError& e) {
        return e.code();
    }
    FAIL("expected a throw");
    return Errc::InvalidInput;
}

FactorizationSolution factored(const Lock& lock) {
    FactorizationSolution s;
    s.lock_index = lock.index;
    for (std::uint64_t p : oracle::factorize(lock.value.to_u64()))
        s.factors.push_back(BigUint(p));
    return s;
}

// A history with a little of everything: transaction blocks, a failed reveal,
// empty and censored runs, and two transactions still waiting in the mempool.
Ledger scripted_ledger() {
    Ledger ledger(GenerationParams::desk_scale(), LedgerParams{}, /*reveal_delay=*/24);
    std::mt19937_64 rng(4242);

    Word256 w;
    for (auto& b : w) b = static_cast<std::uint8_t>(rng() & 0xff);
    ledger.submit(kFunder, ContributeOp{w}, 1.0);
    for (auto& b : w) b = static_cast<std::uint8_t>(rng() & 0xff);
    ledger.submit(kFunder, ContributeOp{w}, 1.0);
    ledger.submit(kFunder, FundOp{5'000}, 1.0);
    ledger.advance_block(); // locks exist from t=12

    std::vector<FactorizationSolution> solutions;
    for (const Lock& lock : ledger.bounty().locks()) {
        solutions.push_back(factored(lock));
        ledger.submit(kSolver, CommitOp{lock.index, commitment_digest(solutions.back(), kSolver)},
                      1.0);
    }
    ledger.advance_block(); // commitments at t=24

    ledger.submit(kSolver, RevealOp{solutions[0]}, 1.0);
    ledger.advance_block(); // t=36: fails with RevealTooEarly, cost consumed

    ledger.advance_block(); // one quiet block
    for (std::size_t i = 0; i + 1 < solutions.size(); ++i)
        ledger.submit(kSolver, RevealOp{solutions[i]}, 1.0);
    ledger.advance_block(); // seven locks fall at t=60
    ledger.advance_blocks(2, /*censor=*/true);

    // left pending: the final reveal and a top-up that outbids it
    ledger.submit(kSolver, RevealOp{solutions.back()}, 1.0);
    ledger.submit(kFunder, FundOp{9}, 2.0);
    return ledger;
}

} // namespace

TEST_CASE("save/load/save is byte-identical and state-identical") {
    TempFile first("roundtrip-a.json");
    TempFile second("roundtrip-b.json");

    Ledger original = scripted_ledger();
    save_state(first.path, original, "cafe0123");
    LoadedState loaded = load_state(first.path);
    save_state(second.path, loaded.ledger, loaded.instance);

    CHECK(loaded.instance == "cafe0123");
    CHECK(slurp(first.path) == slurp(second.path));
    CHECK(slurp(first.path).size() > 0);

    CHECK(bounty_snapshot(loaded.ledger.bounty()) == bounty_snapshot(original.bounty()));
    CHECK(accumulator_snapshot(loaded.ledger.accumulator()) ==
          accumulator_snapshot(original.accumulator()));
    CHECK(loaded.ledger.tip_digest() == original.tip_digest());
    CHECK(loaded.ledger.height() == original.height());
    CHECK(loaded.ledger.now() == original.now());
    CHECK(loaded.ledger.base_fee() == original.base_fee());
    CHECK(loaded.ledger.next_seq() == original.next_seq());
    CHECK(loaded.ledger.mempool().size() == 2);

    // partially solved exactly as scripted
    CHECK(!loaded.ledger.bounty().solved());
    CHECK(loaded.ledger.bounty().unsolved_count() == 1);
    CHECK(loaded.ledger.bounty().balance() == 5'000);
}

TEST_CASE("a loaded ledger keeps running like the live one") {
    TempFile file("continue.json");
    Ledger original = scripted_ledger();
    save_state(file.path, original, "feed");
    LoadedState loaded = load_state(file.path);

    // the pending fund outbids the final reveal, so the sweep takes both
    original.advance_block();
    loaded.ledger.advance_block();

    CHECK(original.bounty().solved());
    CHECK(loaded.ledger.bounty().solved());
    REQUIRE(original.bounty().payouts().size() == 1);
    CHECK(original.bounty().payouts()[0].amount == 5'009);
    CHECK(bounty_snapshot(loaded.ledger.bounty()) == bounty_snapshot(original.bounty()));
    CHECK(loaded.ledger.tip_digest() == original.tip_digest());
}

TEST_CASE("quiet stretches collapse to run-length events") {
    Ledger ledger(GenerationParams::desk_scale(), LedgerParams{});
    ledger.advance_blocks(5);
    ledger.advance_blocks(3, /*censor=*/true);
    ledger.submit(kFunder, FundOp{1}, 1.0);
    ledger.advance_block();

    auto doc = state_to_json(ledger, "beef");
    const auto& events = doc.at("events");
    REQUIRE(events.size() == 3);
    CHECK(events[0].at("kind") == "blocks");
    CHECK(events[0].at("count") == 5);
    CHECK(events[0].at("censored") == false);
    CHECK(events[1].at("kind") == "blocks");
    CHECK(events[1].at("count") == 3);
    CHECK(events[1].at("censored") == true);
    CHECK(events[2].at("kind") == "block");
    CHECK(events[2].at("txs").size() == 1);

    LoadedState replayed = state_from_json(doc);
    CHECK(replayed.ledger.height() == 9);
    CHECK(replayed.ledger.tip_digest() == ledger.tip_digest());
}

TEST_CASE("loader rejects files it cannot trust") {
    TempFile missing("missing.json");
    CHECK(code_of([&] { load_state(missing.path); }) == Errc::BadStateFile);

    TempFile garbage("garbage.json");
    std::ofstream(garbage.path) << "not json {";
    CHECK(code_of([&] { load_state(garbage.path); }) == Errc::BadStateFile);

    TempFile skeletal("skeletal.json");
    std::ofstream(skeletal.path) << R"({"format_version":1,"hash_family":"keccak256"})";
    CHECK(code_of([&] { load_state(skeletal.path); }) == Errc::BadStateFile);

    Ledger ledger = scripted_ledger();
    auto good = state_to_json(ledger, "fabc");

    auto wrong_version = good;
    wrong_version["format_version"] = 99;
    CHECK(code_of([&] { state_from_json(wrong_version); }) == Errc::BadStateFile);

    auto wrong_family = good;
    wrong_family["hash_family"] = "sha3-256";
    CHECK(code_of([&] { state_from_json(wrong_family); }) == Errc::BadStateFile);

    auto alien_op = good;
    alien_op["events"][0]["txs"][0]["op"]["kind"] = "teleport";
    CHECK(code_of([&] { state_from_json(alien_op); }) == Errc::BadStateFile);

    auto alien_event = good;
    alien_event["events"][0]["kind"] = "epoch";
    CHECK(code_of([&] { state_from_json(alien_event); }) == Errc::BadStateFile);

    auto short_word = good;
    short_word["events"][0]["txs"][0]["op"]["word"] = "abcd";
    CHECK(code_of([&] { state_from_json(short_word); }) == Errc::BadStateFile);
}

TEST_CASE("instance tokens are fresh 128-bit hex") {
    std::string a = random_instance_token();
    std::string b = random_instance_token();
    CHECK(a.size() == 32);
    CHECK(b.size() == 32);
    CHECK(a != b);
    CHECK(a.find_first_not_of("0123456789abcdef") == std::string::npos);
}

TEST_CASE("single-instance lock excludes a second owner") {
    TempFile state("locked.json");
    {
        SingleInstanceLock held(state.path);
        CHECK(fs::exists(state.path.string() + ".lock"));
        CHECK(code_of([&] { SingleInstanceLock second(state.path); }) == Errc::StateLocked);
    }
    CHECK(!fs::exists(state.path.string() + ".lock"));
    SingleInstanceLock fresh(state.path); // reacquire after release
}
