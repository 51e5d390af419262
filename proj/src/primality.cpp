#include "qbounty/primality.hpp"

#include "qbounty/errors.hpp"
#include "qbounty/hash.hpp"

namespace qbounty {

namespace {

// First 13 primes. The full set is a proven deterministic witness set for
// n < 3,317,044,064,679,887,385,961,981 (~3.3e24); the first 12 already cover
// every 64-bit integer.
constexpr std::uint64_t kFixedWitnesses[13] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

// 3,317,044,064,679,887,385,961,981
const BigUint& fixed_witness_bound() {
    static const BigUint bound = BigUint::from_hex("2be6951adc5b22410a5fd");
    return bound;
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod_u64(result, base, m);
        exp >>= 1;
        if (exp) base = mulmod_u64(base, base, m);
    }
    return result;
}

// One witness round; n odd, n >= 5, d odd with d * 2^s == n - 1.
bool witness_passes_u64(std::uint64_t a, std::uint64_t n, std::uint64_t d, int s) {
    a %= n;
    if (a < 2) return true; // degenerate witness carries no information
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

bool witness_passes_big(const BigUint& a, const BigUint& n, const BigUint& d, std::size_t s,
                        const BigUint& n_minus_1) {
    BigUint x = mod_pow(a, d, n);
    if (x == BigUint(1) || x == n_minus_1) return true;
    for (std::size_t i = 1; i < s; ++i) {
        x *= x;
        x %= n;
        if (x == n_minus_1) return true;
    }
    return false;
}

// Fixed-witness verdict for odd n known to exceed 64 bits (all 13 witnesses
// are then non-degenerate).
PrimalityVerdict run_fixed_witnesses(const BigUint& n) {
    BigUint n_minus_1 = n - BigUint(1);
    BigUint d = n_minus_1;
    std::size_t s = 0;
    while (d.is_even()) {
        d >>= 1;
        ++s;
    }
    std::uint32_t used = 0;
    for (std::uint64_t w : kFixedWitnesses) {
        ++used;
        if (!witness_passes_big(BigUint(w), n, d, s, n_minus_1))
            return {PrimalityVerdict::Kind::Composite, used};
    }
    return {PrimalityVerdict::Kind::ProbablePrime, used};
}

// Counting variant for word-sized odd n >= 5: reports how many witness rounds ran.
PrimalityVerdict classify_u64(std::uint64_t n) {
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n == p) return {PrimalityVerdict::Kind::ProbablePrime, 0};
        if (n % p == 0) return {PrimalityVerdict::Kind::Composite, 0};
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::uint32_t used = 0;
    for (int i = 0; i < 12; ++i) {
        ++used;
        if (!witness_passes_u64(kFixedWitnesses[i], n, d, s))
            return {PrimalityVerdict::Kind::Composite, used};
    }
    return {PrimalityVerdict::Kind::ProbablePrime, used};
}

} // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // the first 12 primes are a deterministic witness set for all 64-bit n
    for (int i = 0; i < 12; ++i) {
        if (!witness_passes_u64(kFixedWitnesses[i], n, d, s)) return false;
    }
    return true;
}

PrimalityVerdict miller_rabin(const BigUint& n, std::uint32_t rounds, const WitnessSource& witnesses) {
    if (n < BigUint(2)) raise(Errc::InvalidInput, "primality is defined for n >= 2");
    if (rounds < 1) raise(Errc::InvalidInput, "at least one round required");
    if (n == BigUint(2) || n == BigUint(3))
        return {PrimalityVerdict::Kind::ProbablePrime, 0};
    if (n.is_even())
        return {PrimalityVerdict::Kind::Composite, 0};

    BigUint n_minus_1 = n - BigUint(1);
    BigUint d = n_minus_1;
    std::size_t s = 0;
    while (d.is_even()) {
        d >>= 1;
        ++s;
    }
    for (std::uint32_t r = 0; r < rounds; ++r) {
        BigUint a = witnesses(n, r);
        if (a < BigUint(2) || a > n - BigUint(2))
            raise(Errc::InvalidInput, "witness outside [2, n-2]");
        if (!witness_passes_big(a, n, d, s, n_minus_1))
            return {PrimalityVerdict::Kind::Composite, r + 1};
    }
    return {PrimalityVerdict::Kind::ProbablePrime, rounds};
}

WitnessSource derived_witnesses() {
    return [](const BigUint& n, std::uint32_t round) {
        HashWriter w;
        w.write(ByteView(n.to_bytes_be()));
        w.write_u64(round);
        Hash256 digest = w.finalize();
        BigUint x = BigUint::from_bytes_be(ByteView(digest.data(), digest.size()));
        return BigUint(2) + x % (n - BigUint(3));
    };
}

PrimalityVerdict classify_prime(const BigUint& n, const PrimalityConfig& cfg) {
    if (n < BigUint(2)) raise(Errc::InvalidInput, "primality is defined for n >= 2");
    if (n == BigUint(2) || n == BigUint(3))
        return {PrimalityVerdict::Kind::ProbablePrime, 0};
    if (n.is_even())
        return {PrimalityVerdict::Kind::Composite, 0};
    if (cfg.deterministic_small && n.fits_u64())
        return classify_u64(n.to_u64());
    if (cfg.deterministic_small && n < fixed_witness_bound())
        return run_fixed_witnesses(n);
    return miller_rabin(n, cfg.rounds, derived_witnesses());
}

} // namespace qbounty
