#include "qbounty/errors.hpp"
#include "qbounty/params.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace qbounty;

TEST_CASE("default profile") {
    GenerationParams p = GenerationParams::protocol_default();
    CHECK(p.lock_count == 119);
    CHECK(p.lock_bits == 4608);
    CHECK(p.prime_bits == 1536);
    CHECK(p.failure_probability == doctest::Approx(1e-9));
    CHECK(p.per_lock_hardness == doctest::Approx(0.16));
    CHECK(p.lock_bytes() == 576);
    CHECK(p.target_bytes() == 68'544);
    p.validate();
}

TEST_CASE("desk profile") {
    GenerationParams p = GenerationParams::desk_scale();
    CHECK(p.lock_count == 8);
    CHECK(p.lock_bits == 64);
    CHECK(p.prime_bits == 0);
    CHECK(p.target_bytes() == 64);
    p.validate();
}

TEST_CASE("profile validation") {
    GenerationParams p = GenerationParams::protocol_default();
    p.lock_count = 0;
    CHECK_THROWS_AS(p.validate(), ProtocolError);

    p = GenerationParams::protocol_default();
    p.lock_bits = 100; // not a multiple of 8
    CHECK_THROWS_AS(p.validate(), ProtocolError);

    p = GenerationParams::protocol_default();
    p.prime_bits = 1000; // 3 * 1000 != 4608
    CHECK_THROWS_AS(p.validate(), ProtocolError);

    p = GenerationParams::protocol_default();
    p.failure_probability = 0.0;
    CHECK_THROWS_AS(p.validate(), ProtocolError);

    p = GenerationParams::protocol_default();
    p.per_lock_hardness = 1.0;
    CHECK_THROWS_AS(p.validate(), ProtocolError);
}

TEST_CASE("required lock count reproduces the published sizing") {
    CHECK(required_lock_count(1e-9, 0.16) == 119);
    // under the conservative hardness bound the same failure budget needs 243
    CHECK(required_lock_count(1e-9, 0.082) == 243);
    CHECK(required_lock_count(0.5, 0.5) == 1);
}

TEST_CASE("required lock count satisfies its defining inequality") {
    std::mt19937_64 rng(31);
    auto u01 = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int i = 0; i < 500; ++i) {
        double f = std::pow(10.0, -1.0 - 10.0 * u01()); // 1e-11 .. 1e-1
        double h = 0.01 + 0.98 * u01();
        std::uint32_t k = required_lock_count(f, h);
        std::uint32_t brute = oracle::smallest_covering_count(f, h);
        CAPTURE(f);
        CAPTURE(h);
        CHECK(k == brute);
    }
}

TEST_CASE("required lock count domain") {
    CHECK_THROWS_AS(required_lock_count(0.0, 0.5), ProtocolError);
    CHECK_THROWS_AS(required_lock_count(1.0, 0.5), ProtocolError);
    CHECK_THROWS_AS(required_lock_count(0.5, 0.0), ProtocolError);
    CHECK_THROWS_AS(required_lock_count(0.5, 1.0), ProtocolError);
}

TEST_CASE("hardness lower bound at the published thresholds") {
    // any prime above one third of the modulus size counts as hard
    CHECK(sander_hardness(1.0 / 3.0) == doctest::Approx(0.0822009769465827).epsilon(1e-12));
    CHECK(sander_hardness(0.4) == doctest::Approx(0.0248965222465587).epsilon(1e-12));
    CHECK(sander_hardness(0.5) == doctest::Approx(0.0));
    CHECK_THROWS_AS(sander_hardness(0.3), ProtocolError);
    CHECK_THROWS_AS(sander_hardness(0.51), ProtocolError);
}

TEST_CASE("expected distinct prime factors of a uniform integer") {
    // ln(bits * ln 2): about 8 at the default lock width
    CHECK(expected_prime_factor_count(4608) == doctest::Approx(8.069036281794062).epsilon(1e-12));
    CHECK(expected_prime_factor_count(3072) == doctest::Approx(7.663571173685899).epsilon(1e-12));
    CHECK(expected_prime_factor_count(4608) > expected_prime_factor_count(3072));
    // 4-bit integers average just over one distinct prime factor
    CHECK(expected_prime_factor_count(4) == doctest::Approx(std::log(4 * std::log(2.0))));
    CHECK_THROWS_AS(expected_prime_factor_count(1), ProtocolError);
}

TEST_CASE("expected hard lock count") {
    GenerationParams p = GenerationParams::protocol_default();
    CHECK(expected_hard_lock_count(p) == doctest::Approx(119 * 0.16));

    p.lock_count = 243;
    p.per_lock_hardness = 0.082;
    p.prime_bits = 0;
    CHECK(expected_hard_lock_count(p) == doctest::Approx(19.926));
}
