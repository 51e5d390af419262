#pragma once

#include <cstdint>
#include <cstddef>

namespace qbounty {

// Sizing profile for one generation run.
struct GenerationParams {
    std::uint32_t lock_count = 119;
    std::uint32_t lock_bits = 4608;
    // Bit width of the primes assumed hard to recover from a lock; 0 when the
    // profile makes no assumption (e.g. toy runs whose locks are facto-trivial).
    std::uint32_t prime_bits = 1536;
    double failure_probability = 1e-9;
    double per_lock_hardness = 0.16;

    static GenerationParams protocol_default();
    // 8 locks x 64 bits: everything is solvable on a laptop, used for end-to-end runs.
    static GenerationParams desk_scale();

    std::size_t lock_bytes() const { return lock_bits / 8; }
    std::size_t target_bytes() const { return static_cast<std::size_t>(lock_count) * lock_bytes(); }

    // Errc::OutOfRange / Errc::InvalidInput on inconsistent profiles.
    void validate() const;
};

// Smallest k with (1 - per_lock_hardness)^k <= failure_probability.
// Requires both probabilities in (0, 1).
std::uint32_t required_lock_count(double failure_probability, double per_lock_hardness);

// Lower bound on the chance that a uniform modulus resists factoring when any
// prime factor above the xi * bits threshold makes it hard; valid for
// xi in [1/3, 1/2]: (1/2) * ln^2(1 / (2 xi)).
double sander_hardness(double xi);

// Expected number of distinct prime factors of a uniform `bits`-bit integer:
// ln(bits * ln 2). Requires bits >= 2.
double expected_prime_factor_count(std::uint32_t bits);

// lock_count * per_lock_hardness.
double expected_hard_lock_count(const GenerationParams& params);

} // namespace qbounty
