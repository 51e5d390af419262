#include "qbounty/statefile.hpp"

#include "qbounty/errors.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <fstream>
#include <random>
#include <sstream>

namespace qbounty {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string hash_hex(const Hash256& h) {
    return hex_encode(ByteView(h.data(), h.size()));
}

Hash256 hash_unhex(const std::string& s) {
    Bytes raw = hex_decode(s);
    if (raw.size() != 32) raise(Errc::BadStateFile, "digest field is not 32 bytes");
    Hash256 out;
    std::copy(raw.begin(), raw.end(), out.begin());
    return out;
}

ordered_json operation_to_json(const Operation& op) {
    ordered_json j;
    if (const auto* fund = std::get_if<FundOp>(&op)) {
        j["kind"] = "fund";
        j["amount"] = fund->amount;
    } else if (const auto* contribute = std::get_if<ContributeOp>(&op)) {
        j["kind"] = "contribute";
        j["word"] = hex_encode(ByteView(contribute->word.data(), contribute->word.size()));
    } else if (const auto* commit = std::get_if<CommitOp>(&op)) {
        j["kind"] = "commit";
        j["lock_index"] = commit->lock_index;
        j["digest"] = hash_hex(commit->digest);
    } else if (const auto* reveal = std::get_if<RevealOp>(&op)) {
        j["kind"] = "reveal";
        j["lock_index"] = reveal->solution.lock_index;
        ordered_json factors = ordered_json::array();
        for (const BigUint& f : reveal->solution.factors)
            factors.push_back(f.to_hex());
        j["factors"] = std::move(factors);
    }
    return j;
}

Operation operation_from_json(const ordered_json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "fund") {
        return FundOp{j.at("amount").get<std::uint64_t>()};
    }
    if (kind == "contribute") {
        Bytes raw = hex_decode(j.at("word").get<std::string>());
        if (raw.size() != 32) raise(Errc::BadStateFile, "contribution word is not 32 bytes");
        Word256 word;
        std::copy(raw.begin(), raw.end(), word.begin());
        return ContributeOp{word};
    }
    if (kind == "commit") {
        return CommitOp{j.at("lock_index").get<std::uint32_t>(),
                        hash_unhex(j.at("digest").get<std::string>())};
    }
    if (kind == "reveal") {
        FactorizationSolution solution;
        solution.lock_index = j.at("lock_index").get<std::uint32_t>();
        for (const auto& f : j.at("factors"))
            solution.factors.push_back(BigUint::from_hex(f.get<std::string>()));
        return RevealOp{std::move(solution)};
    }
    raise(Errc::BadStateFile, "unknown operation kind: " + kind);
}

ordered_json transaction_to_json(const Transaction& tx) {
    ordered_json j;
    j["seq"] = tx.seq;
    j["sender"] = tx.sender.to_hex();
    j["priority_fee"] = tx.priority_fee;
    j["submitted_at"] = tx.submitted_at;
    j["op"] = operation_to_json(tx.op);
    return j;
}

Transaction transaction_from_json(const ordered_json& j, const CostSchedule& costs) {
    Transaction tx;
    tx.seq = j.at("seq").get<std::uint64_t>();
    tx.sender = Address::from_hex(j.at("sender").get<std::string>());
    tx.priority_fee = j.at("priority_fee").get<double>();
    tx.submitted_at = j.at("submitted_at").get<std::uint64_t>();
    tx.op = operation_from_json(j.at("op"));
    tx.cost = metered_cost(tx.op, costs);
    return tx;
}

// Runs of empty blocks with the same censoring flag collapse into one entry,
// so a quiet day is a single line instead of 7200 records.
ordered_json events_to_json(const std::vector<BlockRecord>& history) {
    ordered_json events = ordered_json::array();
    std::size_t i = 0;
    while (i < history.size()) {
        const BlockRecord& block = history[i];
        if (block.txs.empty()) {
            std::size_t j = i;
            while (j < history.size() && history[j].txs.empty() &&
                   history[j].censored == block.censored)
                ++j;
            ordered_json e;
            e["kind"] = "blocks";
            e["count"] = j - i;
            e["censored"] = block.censored;
            events.push_back(std::move(e));
            i = j;
        } else {
            ordered_json e;
            e["kind"] = "block";
            e["censored"] = block.censored;
            ordered_json txs = ordered_json::array();
            for (const AppliedTx& applied : block.txs)
                txs.push_back(transaction_to_json(applied.tx));
            e["txs"] = std::move(txs);
            events.push_back(std::move(e));
            ++i;
        }
    }
    return events;
}

} // namespace

ordered_json bounty_snapshot(const BountyState& bounty) {
    ordered_json j;
    j["generation_complete"] = bounty.generation_complete();
    j["solved"] = bounty.solved();
    j["balance"] = bounty.balance();
    j["min_bounty"] = bounty.min_bounty();
    j["reveal_delay_seconds"] = bounty.reveal_delay();
    ordered_json locks = ordered_json::array();
    for (const Lock& lock : bounty.locks()) {
        ordered_json l;
        l["index"] = lock.index;
        l["bits"] = lock.bits;
        l["value"] = lock.value.to_hex();
        l["solved"] = lock.solved;
        l["solver"] = lock.solver ? ordered_json(lock.solver->to_hex()) : ordered_json(nullptr);
        locks.push_back(std::move(l));
    }
    j["locks"] = std::move(locks);
    ordered_json commitments = ordered_json::array();
    for (const auto& [key, c] : bounty.commitments()) {
        ordered_json e;
        e["solver"] = key.first.to_hex();
        e["lock_index"] = key.second;
        e["digest"] = hash_hex(c.digest);
        e["committed_at"] = c.committed_at;
        commitments.push_back(std::move(e));
    }
    j["commitments"] = std::move(commitments);
    ordered_json payouts = ordered_json::array();
    for (const Payout& p : bounty.payouts()) {
        ordered_json e;
        e["solver"] = p.solver.to_hex();
        e["amount"] = p.amount;
        e["at_time"] = p.at_time;
        payouts.push_back(std::move(e));
    }
    j["payouts"] = std::move(payouts);
    return j;
}

ordered_json accumulator_snapshot(const AccumulatorState& acc) {
    ordered_json j;
    j["target_bytes"] = acc.target_bytes();
    j["filled_bytes"] = acc.buffer().size();
    j["buffer"] = hex_encode(ByteView(acc.buffer()));
    j["chain_digest"] = hash_hex(acc.chain_digest());
    return j;
}

ordered_json state_to_json(const Ledger& ledger, const std::string& instance) {
    ordered_json j;
    j["format_version"] = kStateFormatVersion;
    j["hash_family"] = kHashFamily;
    j["instance"] = instance;

    const GenerationParams& gp = ledger.gen_params();
    ordered_json params;
    params["lock_count"] = gp.lock_count;
    params["lock_bits"] = gp.lock_bits;
    params["prime_bits"] = gp.prime_bits;
    params["failure_probability"] = gp.failure_probability;
    params["per_lock_hardness"] = gp.per_lock_hardness;
    j["params"] = std::move(params);

    const LedgerParams& lp = ledger.params();
    ordered_json lparams;
    lparams["block_time_seconds"] = lp.block_time_seconds;
    lparams["cost_limit"] = lp.cost_limit;
    lparams["initial_base_fee"] = lp.initial_base_fee;
    ordered_json costs;
    costs["base_tx"] = lp.costs.base_tx;
    costs["modmul_word2"] = lp.costs.modmul_word2;
    costs["hash_word"] = lp.costs.hash_word;
    costs["storage_write"] = lp.costs.storage_write;
    costs["mr_rounds"] = lp.costs.mr_rounds;
    lparams["costs"] = std::move(costs);
    j["ledger_params"] = std::move(lparams);

    j["reveal_delay_seconds"] = ledger.reveal_delay();
    j["min_bounty"] = ledger.bounty().min_bounty();
    j["events"] = events_to_json(ledger.history());

    ordered_json mempool = ordered_json::array();
    for (const Transaction& tx : ledger.mempool())
        mempool.push_back(transaction_to_json(tx));
    j["mempool"] = std::move(mempool);
    return j;
}

LoadedState state_from_json(const ordered_json& doc) {
    try {
        if (doc.at("format_version").get<int>() != kStateFormatVersion)
            raise(Errc::BadStateFile, "unsupported format version");
        if (doc.at("hash_family").get<std::string>() != kHashFamily)
            raise(Errc::BadStateFile, "unsupported hash family");

        GenerationParams gp;
        const auto& params = doc.at("params");
        gp.lock_count = params.at("lock_count").get<std::uint32_t>();
        gp.lock_bits = params.at("lock_bits").get<std::uint32_t>();
        gp.prime_bits = params.at("prime_bits").get<std::uint32_t>();
        gp.failure_probability = params.at("failure_probability").get<double>();
        gp.per_lock_hardness = params.at("per_lock_hardness").get<double>();

        LedgerParams lp;
        const auto& lparams = doc.at("ledger_params");
        lp.block_time_seconds = lparams.at("block_time_seconds").get<std::uint64_t>();
        lp.cost_limit = lparams.at("cost_limit").get<std::uint64_t>();
        lp.initial_base_fee = lparams.at("initial_base_fee").get<double>();
        const auto& costs = lparams.at("costs");
        lp.costs.base_tx = costs.at("base_tx").get<std::uint64_t>();
        lp.costs.modmul_word2 = costs.at("modmul_word2").get<std::uint64_t>();
        lp.costs.hash_word = costs.at("hash_word").get<std::uint64_t>();
        lp.costs.storage_write = costs.at("storage_write").get<std::uint64_t>();
        lp.costs.mr_rounds = costs.at("mr_rounds").get<std::uint32_t>();

        LoadedState out{
            Ledger(gp, lp, doc.at("reveal_delay_seconds").get<std::uint64_t>(),
                   doc.at("min_bounty").get<std::uint64_t>()),
            doc.at("instance").get<std::string>(),
        };

        for (const auto& event : doc.at("events")) {
            const std::string kind = event.at("kind").get<std::string>();
            if (kind == "blocks") {
                out.ledger.advance_blocks(event.at("count").get<std::uint64_t>(),
                                          event.at("censored").get<bool>());
            } else if (kind == "block") {
                for (const auto& txj : event.at("txs"))
                    out.ledger.submit_exact(transaction_from_json(txj, lp.costs));
                out.ledger.advance_block(event.at("censored").get<bool>());
            } else {
                raise(Errc::BadStateFile, "unknown event kind: " + kind);
            }
        }
        for (const auto& txj : doc.at("mempool"))
            out.ledger.submit_exact(transaction_from_json(txj, lp.costs));
        return out;
    } catch (const ordered_json::exception& e) {
        raise(Errc::BadStateFile, e.what());
    }
}

void save_state(const std::filesystem::path& path, const Ledger& ledger, const std::string& instance) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) raise(Errc::BadStateFile, "cannot open " + path.string() + " for writing");
    out << state_to_json(ledger, instance).dump(2) << "\n";
    if (!out) raise(Errc::BadStateFile, "failed writing " + path.string());
}

LoadedState load_state(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::BadStateFile, "cannot open " + path.string());
    ordered_json doc = ordered_json::parse(in, nullptr, false);
    if (doc.is_discarded()) raise(Errc::BadStateFile, path.string() + " is not valid JSON");
    return state_from_json(doc);
}

std::string random_instance_token() {
    std::random_device rd;
    Bytes token(16);
    for (auto& b : token) b = static_cast<std::uint8_t>(rd() & 0xff);
    return hex_encode(ByteView(token));
}

SingleInstanceLock::SingleInstanceLock(const std::filesystem::path& state_path)
    : lock_path_(state_path.string() + ".lock") {
    int fd = ::open(lock_path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0)
        raise(Errc::StateLocked, lock_path_.string() +
                                     " exists; another process owns this state"
                                     " (remove the file if that process is gone)");
    std::string pid = std::to_string(::getpid()) + "\n";
    [[maybe_unused]] ssize_t written = ::write(fd, pid.data(), pid.size());
    ::close(fd);
    held_ = true;
}

SingleInstanceLock::~SingleInstanceLock() {
    if (held_) {
        std::error_code ec;
        std::filesystem::remove(lock_path_, ec);
    }
}

} // namespace qbounty
