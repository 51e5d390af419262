#pragma once

#include "qbounty/biguint.hpp"

#include <cstdint>
#include <functional>

namespace qbounty {

struct PrimalityVerdict {
    enum class Kind { Composite, ProbablePrime };

    Kind verdict = Kind::Composite;
    std::uint32_t rounds_used = 0;

    bool probably_prime() const { return verdict == Kind::ProbablePrime; }
};

// Supplies the witness for a given testing round; must return a value in [2, n-2].
using WitnessSource = std::function<BigUint(const BigUint& n, std::uint32_t round)>;

// Raw Miller-Rabin: runs exactly `rounds` witnesses from the source (or stops
// at the first composite witness). Requires n odd and >= 5; rounds >= 1.
// Error probability for a random witness source is at most 4^-rounds.
PrimalityVerdict miller_rabin(const BigUint& n, std::uint32_t rounds, const WitnessSource& witnesses);

// Deterministic witness derivation: round r uses
//   2 + keccak256(bytes(n) || u64be(r)) mod (n - 3),
// which lands in [2, n-2]. Anyone can recompute the witness schedule.
WitnessSource derived_witnesses();

struct PrimalityConfig {
    std::uint32_t rounds = 64;
    // below the proven bound for the fixed witness set, use it and skip randomness
    bool deterministic_small = true;
};

// Protocol-facing primality check:
//   n < 2          -> Errc::InvalidInput
//   n in {2, 3}    -> ProbablePrime (special-cased, 0 rounds)
//   even n > 2     -> Composite (0 rounds)
//   n below the fixed-witness bound -> deterministic verdict
//   otherwise      -> miller_rabin(n, cfg.rounds, derived_witnesses())
PrimalityVerdict classify_prime(const BigUint& n, const PrimalityConfig& cfg = {});

// Deterministic Miller-Rabin for word-sized inputs (no allocation).
bool is_prime_u64(std::uint64_t n);

} // namespace qbounty
