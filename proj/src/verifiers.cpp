#include "qbounty/verifiers.hpp"

#include "qbounty/errors.hpp"

#include <algorithm>
#include <cmath>

namespace qbounty {

Bytes FactorizationSolution::canonical_encoding() const {
    std::vector<BigUint> sorted = factors;
    std::sort(sorted.begin(), sorted.end());
    Bytes out;
    append_u64_be(out, lock_index);
    append_u64_be(out, sorted.size());
    for (const BigUint& f : sorted) {
        Bytes raw = f.to_bytes_be();
        append_u64_be(out, raw.size());
        append_bytes(out, ByteView(raw));
    }
    return out;
}

const char* reject_reason_name(RejectReason reason) {
    switch (reason) {
    case RejectReason::None: return "None";
    case RejectReason::EmptyFactorList: return "EmptyFactorList";
    case RejectReason::TooManyFactors: return "TooManyFactors";
    case RejectReason::NotPrime: return "NotPrime";
    case RejectReason::ProductMismatch: return "ProductMismatch";
    case RejectReason::ExponentTooLarge: return "ExponentTooLarge";
    case RejectReason::NotUnitResult: return "NotUnitResult";
    }
    return "Unknown";
}

VerifyResult verify_factorization(const Lock& lock, const FactorizationSolution& solution,
                                  const PrimalityConfig& primality) {
    const auto& factors = solution.factors;
    if (factors.empty())
        return VerifyResult::fail(RejectReason::EmptyFactorList);
    if (factors.size() > FactorizationSolution::kMaxFactors)
        return VerifyResult::fail(RejectReason::TooManyFactors);

    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i] < BigUint(2))
            return VerifyResult::fail(RejectReason::NotPrime, i);
        if (!classify_prime(factors[i], primality).probably_prime())
            return VerifyResult::fail(RejectReason::NotPrime, i);
    }

    // all factors are >= 2 here, so the partial product only grows
    BigUint product(1);
    for (const BigUint& f : factors) {
        product *= f;
        if (product > lock.value)
            return VerifyResult::fail(RejectReason::ProductMismatch);
    }
    if (product != lock.value)
        return VerifyResult::fail(RejectReason::ProductMismatch);
    return VerifyResult::ok();
}

void OrderLock::validate() const {
    if (modulus < BigUint(4)) raise(Errc::InvalidInput, "modulus too small");
    if (base < BigUint(2)) raise(Errc::InvalidInput, "base must exceed 1");
    if (base >= modulus - BigUint(1)) raise(Errc::InvalidInput, "base must be below modulus - 1");
    if (gcd(base, modulus) != BigUint(1)) raise(Errc::InvalidInput, "base must be a unit");
}

VerifyResult verify_order(const OrderLock& lock, const OrderSolution& solution) {
    if (solution.exponent.is_zero())
        raise(Errc::InvalidInput, "exponent must be positive");
    if (solution.exponent.byte_length() > 2 * lock.modulus.byte_length())
        return VerifyResult::fail(RejectReason::ExponentTooLarge);
    if (mod_pow(lock.base, solution.exponent, lock.modulus) != BigUint(1))
        return VerifyResult::fail(RejectReason::NotUnitResult);
    return VerifyResult::ok();
}

EntropySlices::EntropySlices(ByteView buffer, std::size_t slice_bytes)
    : buffer_(buffer), width_(slice_bytes) {
    if (width_ == 0) raise(Errc::InvalidInput, "slice width must be positive");
}

std::optional<Bytes> EntropySlices::next() {
    if (offset_ + width_ > buffer_.size()) return std::nullopt;
    Bytes out(buffer_.begin() + offset_, buffer_.begin() + offset_ + width_);
    offset_ += width_;
    return out;
}

std::size_t EntropySlices::remaining_slices() const {
    return (buffer_.size() - offset_) / width_;
}

OrderLock generate_order_lock_checked(EntropySlices& slices) {
    auto mod_slice = slices.next();
    if (!mod_slice) raise(Errc::ExhaustedEntropy, "no entropy left for a modulus");
    (*mod_slice)[0] |= 0x80;
    BigUint modulus = BigUint::from_bytes_be(ByteView(*mod_slice));

    while (auto base_slice = slices.next()) {
        (*base_slice)[0] &= 0x7f; // keeps the candidate below the modulus
        BigUint base = BigUint::from_bytes_be(ByteView(*base_slice));
        if (base < BigUint(2)) continue;
        if (base >= modulus - BigUint(1)) continue;
        if (gcd(base, modulus) != BigUint(1)) continue;
        return OrderLock{std::move(modulus), std::move(base)};
    }
    raise(Errc::ExhaustedEntropy, "no entropy left for a base");
}

std::vector<OrderLock> generate_order_lock_candidates(EntropySlices& slices, std::uint32_t pair_count) {
    std::vector<OrderLock> out;
    out.reserve(pair_count);
    for (std::uint32_t i = 0; i < pair_count; ++i) {
        auto mod_slice = slices.next();
        auto base_slice = slices.next();
        if (!mod_slice || !base_slice)
            raise(Errc::ExhaustedEntropy, "not enough entropy for requested pairs");
        (*mod_slice)[0] |= 0x80;
        (*base_slice)[0] &= 0x7f;
        out.push_back(OrderLock{BigUint::from_bytes_be(ByteView(*mod_slice)),
                                BigUint::from_bytes_be(ByteView(*base_slice))});
    }
    return out;
}

std::uint32_t coprime_pair_count(double failure_probability, double coprime_probability) {
    if (!(failure_probability > 0.0 && failure_probability < 1.0))
        raise(Errc::OutOfRange, "failure_probability must lie in (0, 1)");
    if (!(coprime_probability > 0.0 && coprime_probability < 1.0))
        raise(Errc::OutOfRange, "coprime_probability must lie in (0, 1)");
    double k = std::log(failure_probability) / std::log(1.0 - coprime_probability);
    auto count = static_cast<std::uint32_t>(std::ceil(k));
    return count < 1 ? 1 : count;
}

} // namespace qbounty
