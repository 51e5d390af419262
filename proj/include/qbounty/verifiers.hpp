#pragma once

#include "qbounty/accumulator.hpp"
#include "qbounty/biguint.hpp"
#include "qbounty/primality.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qbounty {

// Claimed multiset of prime factors for one lock. Factors are kept in the
// order given; the canonical encoding sorts them.
struct FactorizationSolution {
    static constexpr std::size_t kMaxFactors = 64;

    std::uint32_t lock_index = 0;
    std::vector<BigUint> factors;

    // u64be(lock_index) || u64be(count) || for each factor ascending:
    // u64be(byte length) || canonical big-endian bytes.
    Bytes canonical_encoding() const;
};

enum class RejectReason {
    None,
    EmptyFactorList,
    TooManyFactors,
    NotPrime,
    ProductMismatch,
    ExponentTooLarge,
    NotUnitResult,
};

const char* reject_reason_name(RejectReason reason);

struct VerifyResult {
    bool accepted = false;
    RejectReason reason = RejectReason::None;
    // for NotPrime: position of the offending factor in the caller's list
    std::optional<std::size_t> factor_index;

    static VerifyResult ok() { return {true, RejectReason::None, std::nullopt}; }
    static VerifyResult fail(RejectReason r, std::optional<std::size_t> index = std::nullopt) {
        return {false, r, index};
    }
};

// Check order: empty list, factor-count cap, primality of every factor
// (first offender reported), then the product against the lock value.
VerifyResult verify_factorization(const Lock& lock, const FactorizationSolution& solution,
                                  const PrimalityConfig& primality = {});

// Order-finding puzzle: a modulus and a unit base; solved by any exponent
// e > 0 with base^e = 1 (mod modulus).
struct OrderLock {
    BigUint modulus;
    BigUint base;

    // Errc::InvalidInput unless 1 < base < modulus - 1 and gcd(base, modulus) == 1.
    void validate() const;
};

struct OrderSolution {
    std::uint32_t lock_index = 0;
    BigUint exponent; // must be positive; verify_order raises InvalidInput on 0
};

// Accepts when base^exponent = 1 (mod modulus). The exponent may be at most
// twice the modulus byte length (a boundable witness always exists below that).
VerifyResult verify_order(const OrderLock& lock, const OrderSolution& solution);

// Fixed-width reader over an entropy buffer; each call hands out the next slice.
class EntropySlices {
public:
    EntropySlices(ByteView buffer, std::size_t slice_bytes);

    std::optional<Bytes> next();
    std::size_t remaining_slices() const;

private:
    ByteView buffer_;
    std::size_t width_;
    std::size_t offset_ = 0;
};

// Draws modulus then base candidates from the slices (modulus top bit forced,
// base top bit cleared) and resamples the base until it is a valid unit.
// Errc::ExhaustedEntropy when the slices run out first.
OrderLock generate_order_lock_checked(EntropySlices& slices);

// Cheap variant: emits pair_count raw (modulus, base) pairs with no validity
// checks; some fraction will be unusable, which the pair count budgets for.
std::vector<OrderLock> generate_order_lock_candidates(EntropySlices& slices, std::uint32_t pair_count);

// Smallest k with (1 - coprime_probability)^k <= failure_probability.
std::uint32_t coprime_pair_count(double failure_probability, double coprime_probability);

} // namespace qbounty
