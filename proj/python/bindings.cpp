#include "qbounty/accumulator.hpp"
#include "qbounty/bounty.hpp"
#include "qbounty/errors.hpp"
#include "qbounty/fallback.hpp"
#include "qbounty/frontrun.hpp"
#include "qbounty/lamport.hpp"
#include "qbounty/ledger.hpp"
#include "qbounty/params.hpp"
#include "qbounty/primality.hpp"
#include "qbounty/verifiers.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <memory>
#include <string>

namespace py = pybind11;
using namespace qbounty;

namespace pybind11 {
namespace detail {

// BigUint rides python's arbitrary-precision int in both directions.
template <>
struct type_caster<BigUint> {
    PYBIND11_TYPE_CASTER(BigUint, const_name("int"));

    bool load(handle src, bool) {
        if (!PyLong_Check(src.ptr())) return false;
        PyObject* hexobj = PyNumber_ToBase(src.ptr(), 16);
        if (!hexobj) {
            PyErr_Clear();
            return false;
        }
        std::string hex = py::cast<std::string>(py::reinterpret_steal<py::object>(hexobj));
        if (!hex.empty() && hex[0] == '-') return false; // no negatives
        value = BigUint::from_hex(hex);
        return true;
    }

    static handle cast(const BigUint& src, return_value_policy, handle) {
        std::string hex = src.to_hex();
        return PyLong_FromString(hex.c_str(), nullptr, 16);
    }
};

} // namespace detail
} // namespace pybind11

namespace {

Hash256 hash_from_pybytes(const py::bytes& b, const char* what) {
    std::string raw(b);
    if (raw.size() != 32) throw py::value_error(std::string(what) + " must be exactly 32 bytes");
    Hash256 h;
    std::memcpy(h.data(), raw.data(), 32);
    return h;
}

Word256 word_from_pybytes(const py::bytes& b) {
    std::string raw(b);
    if (raw.size() != 32) throw py::value_error("contribution word must be exactly 32 bytes");
    Word256 w;
    std::memcpy(w.data(), raw.data(), 32);
    return w;
}

py::bytes hash_to_pybytes(const Hash256& h) {
    return py::bytes(reinterpret_cast<const char*>(h.data()), h.size());
}

SolutionVerifier default_verifier() {
    return [](const Lock& lock, const FactorizationSolution& s) {
        return verify_factorization(lock, s);
    };
}

py::dict outcome_to_dict(const BountyState::RevealOutcome& outcome) {
    py::dict d;
    d["lock_solved"] = outcome.lock_solved;
    d["bounty_solved"] = outcome.bounty_solved;
    d["payout"] = outcome.payout ? py::object(py::int_(outcome.payout->amount)) : py::none();
    return d;
}

py::dict block_to_dict(const BlockRecord& block) {
    py::dict d;
    d["height"] = block.height;
    d["time"] = block.time;
    d["censored"] = block.censored;
    d["cost_used"] = block.cost_used;
    d["base_fee_after"] = block.base_fee_after;
    py::list txs;
    for (const AppliedTx& applied : block.txs) {
        py::dict t;
        t["seq"] = applied.tx.seq;
        t["op"] = operation_name(applied.tx.op);
        t["ok"] = applied.ok;
        t["error"] = applied.error;
        txs.append(std::move(t));
    }
    d["txs"] = std::move(txs);
    return d;
}

FactorizationSolution make_solution(std::uint32_t lock_index, std::vector<BigUint> factors) {
    FactorizationSolution s;
    s.lock_index = lock_index;
    s.factors = std::move(factors);
    return s;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "factoring-bounty protocol simulator core";

    py::register_exception<ProtocolError>(m, "ProtocolError");

    // --- hashing and number theory -------------------------------------------
    m.def(
        "keccak256",
        [](const py::bytes& data) {
            std::string raw(data);
            return hash_to_pybytes(keccak256(as_bytes(raw)));
        },
        py::arg("data"));

    m.def(
        "classify_prime",
        [](const BigUint& n, std::uint32_t rounds) {
            PrimalityConfig config;
            config.rounds = rounds;
            PrimalityVerdict v = classify_prime(n, config);
            return py::make_tuple(v.probably_prime(), v.rounds_used);
        },
        py::arg("n"), py::arg("rounds") = 64,
        "returns (probably_prime, rounds_used)");
    m.def(
        "is_probable_prime",
        [](const BigUint& n) { return classify_prime(n).probably_prime(); }, py::arg("n"));

    m.def("mod_pow", &mod_pow, py::arg("base"), py::arg("exponent"), py::arg("modulus"));
    m.def("gcd", &gcd, py::arg("a"), py::arg("b"));

    // --- protocol parameters --------------------------------------------------
    py::class_<GenerationParams>(m, "GenerationParams")
        .def(py::init<>())
        .def_readwrite("lock_count", &GenerationParams::lock_count)
        .def_readwrite("lock_bits", &GenerationParams::lock_bits)
        .def_readwrite("prime_bits", &GenerationParams::prime_bits)
        .def_readwrite("failure_probability", &GenerationParams::failure_probability)
        .def_readwrite("per_lock_hardness", &GenerationParams::per_lock_hardness)
        .def_static("protocol_default", &GenerationParams::protocol_default)
        .def_static("desk_scale", &GenerationParams::desk_scale)
        .def("lock_bytes", &GenerationParams::lock_bytes)
        .def("target_bytes", &GenerationParams::target_bytes)
        .def("validate", &GenerationParams::validate);

    m.def("required_lock_count", &required_lock_count, py::arg("failure_probability"),
          py::arg("per_lock_hardness"));
    m.def("sander_hardness", &sander_hardness, py::arg("xi"));
    m.def("expected_prime_factor_count", &expected_prime_factor_count, py::arg("bits"));
    m.def("expected_hard_lock_count", &expected_hard_lock_count, py::arg("params"));
    m.def("coprime_pair_count", &coprime_pair_count, py::arg("failure_probability"),
          py::arg("coprime_probability"));
    m.def("min_bounty_in_currency", &min_bounty_in_currency, py::arg("gas_required"),
          py::arg("gas_price_gwei"));

    // --- locks and verification -----------------------------------------------
    py::class_<Lock>(m, "Lock")
        .def(py::init([](std::uint32_t index, std::uint32_t bits, const BigUint& value) {
                 Lock lock;
                 lock.index = index;
                 lock.bits = bits;
                 lock.value = value;
                 return lock;
             }),
             py::arg("index"), py::arg("bits"), py::arg("value"))
        .def_readonly("index", &Lock::index)
        .def_readonly("bits", &Lock::bits)
        .def_readonly("value", &Lock::value)
        .def_readonly("solved", &Lock::solved)
        .def_property_readonly("solver", [](const Lock& lock) -> py::object {
            return lock.solver ? py::object(py::str(lock.solver->to_hex())) : py::none();
        });

    py::class_<FactorizationSolution>(m, "FactorizationSolution")
        .def(py::init(&make_solution), py::arg("lock_index"), py::arg("factors"))
        .def_readonly("lock_index", &FactorizationSolution::lock_index)
        .def_readonly("factors", &FactorizationSolution::factors)
        .def("canonical_encoding", [](const FactorizationSolution& s) {
            Bytes encoding = s.canonical_encoding();
            return py::bytes(reinterpret_cast<const char*>(encoding.data()), encoding.size());
        });

    py::class_<VerifyResult>(m, "VerifyResult")
        .def_readonly("accepted", &VerifyResult::accepted)
        .def_property_readonly("reason",
                               [](const VerifyResult& r) { return reject_reason_name(r.reason); })
        .def_property_readonly("factor_index", [](const VerifyResult& r) -> py::object {
            return r.factor_index ? py::object(py::int_(*r.factor_index)) : py::none();
        });

    m.def("verify_factorization",
          [](const Lock& lock, const FactorizationSolution& solution) {
              return verify_factorization(lock, solution);
          },
          py::arg("lock"), py::arg("solution"));

    m.def(
        "commitment_digest",
        [](const FactorizationSolution& solution, const std::string& solver) {
            return hash_to_pybytes(commitment_digest(solution, Address::from_hex(solver)));
        },
        py::arg("solution"), py::arg("solver"));

    // --- entropy accumulation ---------------------------------------------------
    py::class_<AccumulatorState>(m, "AccumulatorState")
        .def(py::init<std::size_t>(), py::arg("target_bytes"))
        .def(
            "contribute",
            [](AccumulatorState& acc, const py::bytes& word, const std::string& contributor,
               const py::bytes& prev_block_digest) {
                ContributionContext ctx;
                ctx.prev_block_digest = hash_from_pybytes(prev_block_digest, "prev_block_digest");
                ctx.contributor = Address::from_hex(contributor);
                acc.contribute(word_from_pybytes(word), ctx);
            },
            py::arg("word"), py::arg("contributor") = "01",
            py::arg("prev_block_digest") = py::bytes(std::string(32, '\0')))
        .def("complete", &AccumulatorState::complete)
        .def("remaining_bytes", &AccumulatorState::remaining_bytes)
        .def("target_bytes", &AccumulatorState::target_bytes)
        .def("buffer", [](const AccumulatorState& acc) {
            return py::bytes(reinterpret_cast<const char*>(acc.buffer().data()),
                             acc.buffer().size());
        });

    m.def("extract_locks", &extract_locks, py::arg("accumulator"), py::arg("params"));

    // --- bounty state machine ----------------------------------------------------
    py::class_<BountyState>(m, "BountyState")
        .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("reveal_delay_seconds") = 86'400,
             py::arg("min_bounty") = 0)
        .def("install_locks", &BountyState::install_locks, py::arg("locks"))
        .def(
            "fund",
            [](BountyState& b, const std::string& from, std::uint64_t amount) {
                b.fund(Address::from_hex(from), amount);
            },
            py::arg("sender"), py::arg("amount"))
        .def(
            "commit",
            [](BountyState& b, const std::string& solver, std::uint32_t lock_index,
               const py::bytes& digest, std::uint64_t now) {
                b.commit(Address::from_hex(solver), lock_index, hash_from_pybytes(digest, "digest"),
                         now);
            },
            py::arg("solver"), py::arg("lock_index"), py::arg("digest"), py::arg("now"))
        .def(
            "withdraw_commit",
            [](BountyState& b, const std::string& solver, std::uint32_t lock_index) {
                b.withdraw_commit(Address::from_hex(solver), lock_index);
            },
            py::arg("solver"), py::arg("lock_index"))
        .def(
            "reveal",
            [](BountyState& b, const std::string& solver, std::uint32_t lock_index,
               const FactorizationSolution& solution, std::uint64_t now) {
                return outcome_to_dict(b.reveal(Address::from_hex(solver), lock_index, solution,
                                                now, default_verifier()));
            },
            py::arg("solver"), py::arg("lock_index"), py::arg("solution"), py::arg("now"))
        .def_property_readonly("generation_complete", &BountyState::generation_complete)
        .def_property_readonly("solved", &BountyState::solved)
        .def_property_readonly("balance", &BountyState::balance)
        .def_property_readonly("min_bounty", &BountyState::min_bounty)
        .def_property_readonly("underfunded", &BountyState::underfunded)
        .def_property_readonly("reveal_delay", &BountyState::reveal_delay)
        .def_property_readonly("unsolved_count", &BountyState::unsolved_count)
        .def_property_readonly("locks", &BountyState::locks);

    // --- ledger simulation ----------------------------------------------------------
    py::class_<Ledger>(m, "Ledger")
        .def(py::init([](const GenerationParams& gen, std::uint64_t block_time_seconds,
                         std::uint64_t cost_limit, std::uint64_t reveal_delay_seconds,
                         std::uint64_t min_bounty) {
                 LedgerParams lp;
                 lp.block_time_seconds = block_time_seconds;
                 lp.cost_limit = cost_limit;
                 return Ledger(gen, lp, reveal_delay_seconds, min_bounty);
             }),
             py::arg("params"), py::arg("block_time_seconds") = 12,
             py::arg("cost_limit") = 30'000'000, py::arg("reveal_delay_seconds") = 86'400,
             py::arg("min_bounty") = 0)
        .def(
            "submit_fund",
            [](Ledger& ledger, const std::string& sender, std::uint64_t amount, double fee) {
                return ledger.submit(Address::from_hex(sender), FundOp{amount}, fee);
            },
            py::arg("sender"), py::arg("amount"), py::arg("fee") = 1.0)
        .def(
            "submit_contribute",
            [](Ledger& ledger, const std::string& sender, const py::bytes& word, double fee) {
                return ledger.submit(Address::from_hex(sender),
                                     ContributeOp{word_from_pybytes(word)}, fee);
            },
            py::arg("sender"), py::arg("word"), py::arg("fee") = 1.0)
        .def(
            "submit_commit",
            [](Ledger& ledger, const std::string& sender, std::uint32_t lock_index,
               const py::bytes& digest, double fee) {
                return ledger.submit(Address::from_hex(sender),
                                     CommitOp{lock_index, hash_from_pybytes(digest, "digest")},
                                     fee);
            },
            py::arg("sender"), py::arg("lock_index"), py::arg("digest"), py::arg("fee") = 1.0)
        .def(
            "submit_reveal",
            [](Ledger& ledger, const std::string& sender, std::uint32_t lock_index,
               std::vector<BigUint> factors, double fee) {
                return ledger.submit(Address::from_hex(sender),
                                     RevealOp{make_solution(lock_index, std::move(factors))}, fee);
            },
            py::arg("sender"), py::arg("lock_index"), py::arg("factors"), py::arg("fee") = 1.0)
        .def(
            "advance_block",
            [](Ledger& ledger, bool censor) { return block_to_dict(ledger.advance_block(censor)); },
            py::arg("censor_reveals") = false)
        .def("advance_blocks", &Ledger::advance_blocks, py::arg("n"),
             py::arg("censor_reveals") = false)
        .def_property_readonly("height", &Ledger::height)
        .def_property_readonly("now", &Ledger::now)
        .def_property_readonly("base_fee", &Ledger::base_fee)
        .def_property_readonly("mempool_size",
                               [](const Ledger& ledger) { return ledger.mempool().size(); })
        .def_property_readonly("bounty",
                               [](const Ledger& ledger) -> const BountyState& {
                                   return ledger.bounty();
                               },
                               py::return_value_policy::reference_internal)
        .def_property_readonly("payouts", [](const Ledger& ledger) {
            py::list out;
            for (const Payout& p : ledger.bounty().payouts()) {
                py::dict d;
                d["solver"] = p.solver.to_hex();
                d["amount"] = p.amount;
                d["at_time"] = p.at_time;
                out.append(std::move(d));
            }
            return out;
        });

    // --- censorship / frontrunning experiments -----------------------------------
    py::enum_<AttackStrategy>(m, "AttackStrategy")
        .value("CensorReveal", AttackStrategy::CensorReveal)
        .value("FeeSpam", AttackStrategy::FeeSpam)
        .value("CopyAndFrontrun", AttackStrategy::CopyAndFrontrun);

    py::class_<FrontrunScenario>(m, "FrontrunScenario")
        .def(py::init<>())
        .def_readwrite("strategy", &FrontrunScenario::strategy)
        .def_readwrite("censor_fraction", &FrontrunScenario::censor_fraction)
        .def_readwrite("block_time_seconds", &FrontrunScenario::block_time_seconds)
        .def_readwrite("reveal_delay_seconds", &FrontrunScenario::reveal_delay_seconds)
        .def_readwrite("trials", &FrontrunScenario::trials)
        .def_readwrite("seed", &FrontrunScenario::seed)
        .def_readwrite("spam_budget", &FrontrunScenario::spam_budget)
        .def_readwrite("cost_limit", &FrontrunScenario::cost_limit)
        .def_readwrite("initial_base_fee", &FrontrunScenario::initial_base_fee)
        .def("validate", &FrontrunScenario::validate);

    py::class_<FrontrunReport>(m, "FrontrunReport")
        .def_readonly("attack_success_rate", &FrontrunReport::attack_success_rate)
        .def_readonly("mean_inclusion_delay_seconds",
                      &FrontrunReport::mean_inclusion_delay_seconds)
        .def_readonly("attacker_spend", &FrontrunReport::attacker_spend)
        .def_readonly("trials", &FrontrunReport::trials)
        .def_readonly("included_trials", &FrontrunReport::included_trials)
        .def_readonly("seed", &FrontrunReport::seed)
        .def("to_text", &FrontrunReport::to_text);

    m.def("simulate_frontrun", &simulate_frontrun, py::arg("scenario"));

    // --- post-quantum fallback ------------------------------------------------------
    py::class_<LamportKeyPair>(m, "LamportKeyPair")
        .def_readonly("used", &LamportKeyPair::used)
        .def("public_key_hex",
             [](const LamportKeyPair& k) { return lamport_public_to_hex(k.public_key); });

    m.def(
        "lamport_keygen",
        [](const py::bytes& seed) { return lamport_keygen(hash_from_pybytes(seed, "seed")); },
        py::arg("seed"));
    m.def(
        "lamport_sign",
        [](const py::bytes& message, LamportKeyPair& key) {
            std::string raw(message);
            return lamport_signature_to_hex(lamport_sign(as_bytes(raw), key));
        },
        py::arg("message"), py::arg("key"));
    m.def(
        "lamport_verify",
        [](const py::bytes& message, const std::string& signature_hex,
           const std::string& public_key_hex) {
            std::string raw(message);
            return lamport_verify(as_bytes(raw), lamport_signature_from_hex(signature_hex),
                                  lamport_public_from_hex(public_key_hex));
        },
        py::arg("message"), py::arg("signature_hex"), py::arg("public_key_hex"));

    py::class_<KeyedHashVerifier, std::shared_ptr<KeyedHashVerifier>>(m, "KeyedHashVerifier")
        .def(py::init([](const py::bytes& key) {
                 std::string raw(key);
                 return std::make_shared<KeyedHashVerifier>(Bytes(raw.begin(), raw.end()));
             }),
             py::arg("key"))
        .def("make_credential",
             [](const KeyedHashVerifier& v, const py::bytes& message) {
                 std::string raw(message);
                 Bytes cred = v.make_credential(as_bytes(raw));
                 return py::bytes(reinterpret_cast<const char*>(cred.data()), cred.size());
             })
        .def("verify", [](const KeyedHashVerifier& v, const py::bytes& message,
                          const py::bytes& credential) {
            std::string msg(message), cred(credential);
            return v.verify(as_bytes(msg), ByteView(reinterpret_cast<const std::uint8_t*>(
                                                        cred.data()),
                                                    cred.size()));
        });

    py::class_<FallbackAccount>(m, "FallbackAccount")
        .def(py::init([](std::shared_ptr<KeyedHashVerifier> legacy,
                         const std::string& fallback_key_hex, std::function<bool()> switched) {
                 return FallbackAccount(std::move(legacy),
                                        lamport_public_from_hex(fallback_key_hex),
                                        std::move(switched));
             }),
             py::arg("legacy"), py::arg("fallback_key_hex"), py::arg("switched"))
        .def(
            "authorize_legacy",
            [](const FallbackAccount& account, const py::bytes& message,
               const py::bytes& credential) {
                std::string msg(message), cred(credential);
                Credential c = LegacyCredential{Bytes(cred.begin(), cred.end())};
                return auth_result_name(account.authorize(as_bytes(msg), c));
            },
            py::arg("message"), py::arg("credential"))
        .def(
            "authorize_lamport",
            [](const FallbackAccount& account, const py::bytes& message,
               const std::string& signature_hex) {
                std::string msg(message);
                Credential c = lamport_signature_from_hex(signature_hex);
                return auth_result_name(account.authorize(as_bytes(msg), c));
            },
            py::arg("message"), py::arg("signature_hex"));
}
