#include "qbounty/params.hpp"

#include "qbounty/errors.hpp"

#include <cmath>

namespace qbounty {

GenerationParams GenerationParams::protocol_default() {
    return GenerationParams{};
}

GenerationParams GenerationParams::desk_scale() {
    GenerationParams p;
    p.lock_count = 8;
    p.lock_bits = 64;
    p.prime_bits = 0;
    return p;
}

void GenerationParams::validate() const {
    if (lock_count < 1) raise(Errc::OutOfRange, "lock_count must be positive");
    if (lock_bits < 8 || lock_bits % 8 != 0)
        raise(Errc::InvalidInput, "lock_bits must be a positive multiple of 8");
    if (prime_bits != 0 && lock_bits != 3 * prime_bits)
        raise(Errc::InvalidInput, "lock_bits must be 3x prime_bits when primes are sized");
    if (!(failure_probability > 0.0 && failure_probability < 1.0))
        raise(Errc::OutOfRange, "failure_probability must lie in (0, 1)");
    if (!(per_lock_hardness > 0.0 && per_lock_hardness < 1.0))
        raise(Errc::OutOfRange, "per_lock_hardness must lie in (0, 1)");
}

std::uint32_t required_lock_count(double failure_probability, double per_lock_hardness) {
    if (!(failure_probability > 0.0 && failure_probability < 1.0))
        raise(Errc::OutOfRange, "failure_probability must lie in (0, 1)");
    if (!(per_lock_hardness > 0.0 && per_lock_hardness < 1.0))
        raise(Errc::OutOfRange, "per_lock_hardness must lie in (0, 1)");
    double k = std::log(failure_probability) / std::log(1.0 - per_lock_hardness);
    auto count = static_cast<std::uint32_t>(std::ceil(k));
    return count < 1 ? 1 : count;
}

double sander_hardness(double xi) {
    if (!(xi >= 1.0 / 3.0 && xi <= 0.5))
        raise(Errc::OutOfRange, "xi must lie in [1/3, 1/2]");
    double t = std::log(1.0 / (2.0 * xi));
    return 0.5 * t * t;
}

double expected_prime_factor_count(std::uint32_t bits) {
    if (bits < 2) raise(Errc::OutOfRange, "bits must be at least 2");
    return std::log(bits * std::log(2.0));
}

double expected_hard_lock_count(const GenerationParams& params) {
    params.validate();
    return params.lock_count * params.per_lock_hardness;
}

} // namespace qbounty
