#include "qbounty/errors.hpp"
#include "qbounty/primality.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace qbounty;

TEST_CASE("inputs below 2 are invalid") {
    CHECK_THROWS_AS(classify_prime(BigUint(0)), ProtocolError);
    CHECK_THROWS_AS(classify_prime(BigUint(1)), ProtocolError);
    CHECK_THROWS_AS(miller_rabin(BigUint(1), 8, derived_witnesses()), ProtocolError);
    try {
        classify_prime(BigUint(0));
        FAIL("expected a throw");
    } catch (const ProtocolError& e) {
        CHECK(e.code() == Errc::InvalidInput);
    }
}

TEST_CASE("small special cases") {
    auto two = classify_prime(BigUint(2));
    CHECK(two.probably_prime());
    CHECK(two.rounds_used == 0);
    CHECK(classify_prime(BigUint(3)).probably_prime());

    auto four = classify_prime(BigUint(4));
    CHECK(!four.probably_prime());
    CHECK(four.rounds_used == 0);
    CHECK(!classify_prime(BigUint(1'000'000)).probably_prime());
}

TEST_CASE("Carmichael numbers are caught") {
    // Fermat-only tests pass these; the strong test must not
    for (std::uint64_t carmichael : {561ULL, 1105ULL, 1729ULL, 2465ULL, 41041ULL, 825265ULL})
        CHECK(!classify_prime(BigUint(carmichael)).probably_prime());
}

TEST_CASE("known primes and composites") {
    CHECK(classify_prime(BigUint(2147483647)).probably_prime()); // 2^31 - 1
    CHECK(classify_prime(BigUint(18446744073709551557ULL)).probably_prime());
    // product of the two largest 32-bit primes
    CHECK(!classify_prime(BigUint(18446743979220271189ULL)).probably_prime());
}

TEST_CASE("verdicts match a sieve on [2, 10000]") {
    auto flags = oracle::prime_flags(10'000);
    for (std::uint64_t n = 2; n <= 10'000; ++n)
        CHECK(classify_prime(BigUint(n)).probably_prime() == flags[n]);
}

TEST_CASE("verdicts match trial division on random 64-bit-ish values") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 400; ++i) {
        std::uint64_t n = 2 + rng() % 1'000'000'000ULL;
        CAPTURE(n);
        CHECK(classify_prime(BigUint(n)).probably_prime() == oracle::trial_division_prime(n));
    }
}

TEST_CASE("values above 64 bits take the wide paths") {
    // below the fixed-witness bound: deterministic witnesses
    BigUint p65 = (BigUint(1) << 64) + BigUint(13); // 2^64 + 13 is prime
    CHECK(classify_prime(p65).probably_prime());
    BigUint c65 = (BigUint(1) << 64) + BigUint(1); // 274177 * 67280421310721
    CHECK(!classify_prime(c65).probably_prime());

    // above the bound: derived-witness rounds
    BigUint m127 = (BigUint(1) << 127) - BigUint(1); // Mersenne prime
    auto verdict = classify_prime(m127);
    CHECK(verdict.probably_prime());
    CHECK(verdict.rounds_used == 64);
    BigUint c128 = (BigUint(1) << 128) - BigUint(1); // divisible by 3
    CHECK(!classify_prime(c128).probably_prime());

    BigUint semiprime = BigUint(18446744073709551557ULL) * BigUint(18446744073709551533ULL);
    CHECK(!classify_prime(semiprime).probably_prime());
}

TEST_CASE("raw miller_rabin enforces its contract") {
    CHECK_THROWS_AS(miller_rabin(BigUint(97), 0, derived_witnesses()), ProtocolError);

    // witness outside [2, n-2] is a caller error
    auto bad_source = [](const BigUint& n, std::uint32_t) { return n - BigUint(1); };
    CHECK_THROWS_AS(miller_rabin(BigUint(97), 1, bad_source), ProtocolError);

    // a fixed honest witness
    auto two_source = [](const BigUint&, std::uint32_t) { return BigUint(2); };
    CHECK(miller_rabin(BigUint(97), 5, two_source).probably_prime());
    CHECK(miller_rabin(BigUint(97), 5, two_source).rounds_used == 5);
    auto composite = miller_rabin(BigUint(95), 5, two_source);
    CHECK(!composite.probably_prime());
    CHECK(composite.rounds_used == 1);
}

TEST_CASE("even inputs short-circuit") {
    auto verdict = miller_rabin(BigUint(1) << 100, 16, derived_witnesses());
    CHECK(!verdict.probably_prime());
    CHECK(verdict.rounds_used == 0);
}

TEST_CASE("derived witnesses stay in range and are deterministic") {
    WitnessSource source = derived_witnesses();
    for (std::uint64_t n : {5ULL, 7ULL, 1000003ULL, 2147483647ULL}) {
        for (std::uint32_t round = 0; round < 8; ++round) {
            BigUint w = source(BigUint(n), round);
            CHECK(w >= BigUint(2));
            CHECK(w <= BigUint(n - 2));
            CHECK(w == source(BigUint(n), round)); // same round, same witness
        }
    }
    // distinct rounds almost surely give distinct witnesses for big n
    BigUint n = (BigUint(1) << 127) - BigUint(1);
    CHECK(source(n, 0) != source(n, 1));
}

TEST_CASE("classification is stable across calls") {
    BigUint n = (BigUint(1) << 89) - BigUint(1); // Mersenne prime
    auto a = classify_prime(n);
    auto b = classify_prime(n);
    CHECK(a.probably_prime() == b.probably_prime());
    CHECK(a.rounds_used == b.rounds_used);
}

TEST_CASE("is_prime_u64 agrees with the oracle sieve") {
    auto flags = oracle::prime_flags(50'000);
    for (std::uint64_t n = 0; n <= 50'000; ++n)
        CHECK(is_prime_u64(n) == flags[n]);
}
