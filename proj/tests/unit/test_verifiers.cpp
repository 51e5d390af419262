#include "qbounty/errors.hpp"
#include "qbounty/verifiers.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace qbounty;

namespace {

Lock make_lock(std::uint64_t value, std::uint32_t index = 0) {
    Lock lock;
    lock.index = index;
    lock.bits = 64;
    lock.value = BigUint(value);
    return lock;
}

FactorizationSolution make_solution(std::uint32_t index, std::vector<std::uint64_t> factors) {
    FactorizationSolution s;
    s.lock_index = index;
    for (std::uint64_t f : factors) s.factors.push_back(BigUint(f));
    return s;
}

} // namespace

TEST_CASE("valid factorizations are accepted regardless of order") {
    Lock lock = make_lock(15);
    CHECK(verify_factorization(lock, make_solution(0, {3, 5})).accepted);
    CHECK(verify_factorization(lock, make_solution(0, {5, 3})).accepted);
}

TEST_CASE("repeated factors are counted with multiplicity") {
    CHECK(verify_factorization(make_lock(8), make_solution(0, {2, 2, 2})).accepted);
    auto r = verify_factorization(make_lock(8), make_solution(0, {2, 2}));
    CHECK(!r.accepted);
    CHECK(r.reason == RejectReason::ProductMismatch);
}

TEST_CASE("the empty list is rejected first") {
    auto r = verify_factorization(make_lock(15), make_solution(0, {}));
    CHECK(!r.accepted);
    CHECK(r.reason == RejectReason::EmptyFactorList);
}

TEST_CASE("composite factors are reported before the product check") {
    // the product would match, but 15 itself is not prime
    auto r = verify_factorization(make_lock(15), make_solution(0, {15}));
    CHECK(!r.accepted);
    CHECK(r.reason == RejectReason::NotPrime);
    CHECK(r.factor_index == 0);

    auto mixed = verify_factorization(make_lock(30), make_solution(0, {2, 15}));
    CHECK(mixed.reason == RejectReason::NotPrime);
    CHECK(mixed.factor_index == 1);
}

TEST_CASE("zero and one are not prime factors") {
    CHECK(verify_factorization(make_lock(15), make_solution(0, {1, 15})).reason ==
          RejectReason::NotPrime);
    CHECK(verify_factorization(make_lock(15), make_solution(0, {0, 15})).reason ==
          RejectReason::NotPrime);
}

TEST_CASE("wrong products are rejected") {
    auto r = verify_factorization(make_lock(15), make_solution(0, {3, 7}));
    CHECK(!r.accepted);
    CHECK(r.reason == RejectReason::ProductMismatch);
    // partial product already exceeding the lock takes the same path
    CHECK(verify_factorization(make_lock(15), make_solution(0, {3, 5, 7})).reason ==
          RejectReason::ProductMismatch);
    CHECK(verify_factorization(make_lock(15), make_solution(0, {13})).reason ==
          RejectReason::ProductMismatch);
}

TEST_CASE("factor count cap") {
    Lock lock;
    lock.index = 0;
    lock.bits = 65;
    lock.value = BigUint(1) << 64;
    std::vector<std::uint64_t> sixty_four(64, 2);
    CHECK(verify_factorization(lock, make_solution(0, sixty_four)).accepted);

    Lock bigger;
    bigger.index = 0;
    bigger.bits = 66;
    bigger.value = BigUint(1) << 65;
    std::vector<std::uint64_t> sixty_five(65, 2);
    auto r = verify_factorization(bigger, make_solution(0, sixty_five));
    CHECK(!r.accepted);
    CHECK(r.reason == RejectReason::TooManyFactors);
}

TEST_CASE("oracle-factored random locks verify") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 50; ++i) {
        std::uint64_t value = (rng() | 0x8000000000000000ULL);
        std::vector<std::uint64_t> factors = oracle::factorize(value);
        FactorizationSolution solution = make_solution(0, factors);
        CHECK(verify_factorization(make_lock(value), solution).accepted);

        // perturb one factor: the product no longer matches (or goes composite)
        solution.factors[0] += BigUint(1);
        CHECK(!verify_factorization(make_lock(value), solution).accepted);
    }
}

TEST_CASE("canonical encoding sorts factors and length-prefixes them") {
    FactorizationSolution s = make_solution(3, {5, 2});
    Bytes expected{
        0, 0, 0, 0, 0, 0, 0, 3, // lock index
        0, 0, 0, 0, 0, 0, 0, 2, // factor count
        0, 0, 0, 0, 0, 0, 0, 1, 0x02, // 2 first: ascending order
        0, 0, 0, 0, 0, 0, 0, 1, 0x05,
    };
    CHECK(s.canonical_encoding() == expected);
    CHECK(make_solution(3, {2, 5}).canonical_encoding() == expected);
    // multiplicity is preserved
    CHECK(make_solution(3, {2, 2}).canonical_encoding() !=
          make_solution(3, {2}).canonical_encoding());
}

TEST_CASE("order puzzle accepts exactly the unit exponents") {
    OrderLock lock{BigUint(15), BigUint(2)};
    lock.validate();
    // ord_15(2) = 4
    CHECK(verify_order(lock, OrderSolution{0, BigUint(4)}).accepted);
    CHECK(verify_order(lock, OrderSolution{0, BigUint(8)}).accepted);
    auto r = verify_order(lock, OrderSolution{0, BigUint(3)});
    CHECK(!r.accepted);
    CHECK(r.reason == RejectReason::NotUnitResult);
}

TEST_CASE("zero exponent is malformed, not merely wrong") {
    OrderLock lock{BigUint(15), BigUint(2)};
    CHECK_THROWS_AS(verify_order(lock, OrderSolution{0, BigUint(0)}), ProtocolError);
}

TEST_CASE("oversize exponents are rejected before evaluation") {
    OrderLock lock{BigUint(15), BigUint(2)};
    // 65536 is a multiple of the order, but it needs 3 bytes against a 1-byte modulus
    auto r = verify_order(lock, OrderSolution{0, BigUint(65'536)});
    CHECK(!r.accepted);
    CHECK(r.reason == RejectReason::ExponentTooLarge);
    // right at the cap: 2 bytes
    CHECK(verify_order(lock, OrderSolution{0, BigUint(65'532)}).accepted); // 4 * 16383
}

TEST_CASE("order verdicts match the multiplicative-order oracle") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 200; ++i) {
        std::uint64_t n = 5 + rng() % 65'000;
        std::uint64_t a = 2 + rng() % (n - 3);
        if (std::gcd(a, n) != 1) continue;
        if (a == n - 1) continue;
        std::uint64_t ord = oracle::multiplicative_order(a, n);
        OrderLock lock{BigUint(n), BigUint(a)};
        lock.validate();
        CHECK(verify_order(lock, OrderSolution{0, BigUint(ord)}).accepted);
        CHECK(verify_order(lock, OrderSolution{0, BigUint(2 * ord)}).accepted);
        if (ord > 1)
            CHECK(!verify_order(lock, OrderSolution{0, BigUint(ord - 1)}).accepted);
    }
}

TEST_CASE("order lock validation") {
    CHECK_THROWS_AS((OrderLock{BigUint(15), BigUint(1)}.validate()), ProtocolError);
    CHECK_THROWS_AS((OrderLock{BigUint(15), BigUint(14)}.validate()), ProtocolError); // n - 1
    CHECK_THROWS_AS((OrderLock{BigUint(15), BigUint(5)}.validate()), ProtocolError);  // shared factor
    OrderLock{BigUint(15), BigUint(2)}.validate();
}

TEST_CASE("entropy slices walk the buffer") {
    Bytes buf{1, 2, 3, 4, 5};
    EntropySlices slices(ByteView(buf), 2);
    CHECK(slices.remaining_slices() == 2);
    CHECK(*slices.next() == Bytes{1, 2});
    CHECK(*slices.next() == Bytes{3, 4});
    CHECK(!slices.next().has_value()); // trailing odd byte is unusable
}

TEST_CASE("checked order-lock generation resamples bad bases") {
    // modulus slice, then: base 0 (skip), base 1 (skip), base 2 (valid: modulus is odd)
    Bytes buf{0x30, 0x09, 0x00, 0x00, 0x00, 0x01, 0x00, 0x02};
    EntropySlices slices(ByteView(buf), 2);
    OrderLock lock = generate_order_lock_checked(slices);
    CHECK(lock.modulus == BigUint(0xb009)); // top bit forced
    CHECK(lock.base == BigUint(2));
    lock.validate();
}

TEST_CASE("checked generation reports entropy exhaustion") {
    Bytes only_modulus{0x30, 0x09, 0x00, 0x01};
    EntropySlices slices(ByteView(only_modulus), 2);
    try {
        generate_order_lock_checked(slices); // the lone base candidate is 1
        FAIL("expected a throw");
    } catch (const ProtocolError& e) {
        CHECK(e.code() == Errc::ExhaustedEntropy);
    }

    Bytes empty;
    EntropySlices none(ByteView(empty), 2);
    CHECK_THROWS_AS(generate_order_lock_checked(none), ProtocolError);
}

TEST_CASE("probabilistic generation emits raw pairs") {
    std::mt19937_64 rng(47);
    Bytes buf(6 * 8);
    for (auto& b : buf) b = static_cast<std::uint8_t>(rng() & 0xff);
    EntropySlices slices(ByteView(buf), 8);
    std::vector<OrderLock> pairs = generate_order_lock_candidates(slices, 3);
    REQUIRE(pairs.size() == 3);
    for (const OrderLock& p : pairs) {
        CHECK(p.modulus.bit_length() == 64); // top bit forced
        CHECK(p.base.bit_length() < 64);     // top bit cleared
    }
    EntropySlices exhausted(ByteView(buf), 8);
    CHECK_THROWS_AS(generate_order_lock_candidates(exhausted, 4), ProtocolError);
}

TEST_CASE("coprime pair count reproduces the published sizing") {
    CHECK(coprime_pair_count(1e-9, 0.6079) == 23);
    CHECK(coprime_pair_count(0.5, 0.5) == 1);
    CHECK_THROWS_AS(coprime_pair_count(0.0, 0.5), ProtocolError);
    CHECK_THROWS_AS(coprime_pair_count(0.5, 1.0), ProtocolError);
}

TEST_CASE("coprime pair count satisfies its defining inequality") {
    std::mt19937_64 rng(53);
    auto u01 = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int i = 0; i < 500; ++i) {
        double f = std::pow(10.0, -1.0 - 10.0 * u01());
        double p = 0.05 + 0.9 * u01();
        CHECK(coprime_pair_count(f, p) == oracle::smallest_covering_count(f, p));
    }
}
