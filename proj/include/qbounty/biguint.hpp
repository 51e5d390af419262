#pragma once

#include "qbounty/bytes.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace qbounty {

// Arbitrary-precision unsigned integer with a canonical byte/hex form:
// big-endian, no leading zero bytes, zero encodes as a single 0x00 byte.
class BigUint {
public:
    BigUint() = default;
    BigUint(std::uint64_t value) : v_(value) {}

    static BigUint from_bytes_be(ByteView bytes);
    static BigUint from_hex(std::string_view hex);
    static BigUint from_decimal(std::string_view text);

    Bytes to_bytes_be() const;
    std::string to_hex() const;
    std::string to_decimal() const;

    bool is_zero() const { return v_.is_zero(); }
    bool is_even() const;
    std::size_t bit_length() const;  // 0 for zero
    std::size_t byte_length() const; // length of to_bytes_be(); 1 for zero

    bool fits_u64() const;
    std::uint64_t to_u64() const; // Errc::OutOfRange if it does not fit

    BigUint& operator+=(const BigUint& rhs);
    BigUint& operator-=(const BigUint& rhs); // Errc::OutOfRange on underflow
    BigUint& operator*=(const BigUint& rhs);
    BigUint& operator/=(const BigUint& rhs); // Errc::ZeroModulus on /0
    BigUint& operator%=(const BigUint& rhs); // Errc::ZeroModulus on %0
    BigUint& operator>>=(unsigned shift);
    BigUint& operator<<=(unsigned shift);

    friend BigUint operator+(BigUint lhs, const BigUint& rhs) { return lhs += rhs; }
    friend BigUint operator-(BigUint lhs, const BigUint& rhs) { return lhs -= rhs; }
    friend BigUint operator*(BigUint lhs, const BigUint& rhs) { return lhs *= rhs; }
    friend BigUint operator/(BigUint lhs, const BigUint& rhs) { return lhs /= rhs; }
    friend BigUint operator%(BigUint lhs, const BigUint& rhs) { return lhs %= rhs; }
    friend BigUint operator>>(BigUint lhs, unsigned shift) { return lhs >>= shift; }
    friend BigUint operator<<(BigUint lhs, unsigned shift) { return lhs <<= shift; }

    bool operator==(const BigUint& rhs) const { return v_ == rhs.v_; }
    std::strong_ordering operator<=>(const BigUint& rhs) const;

private:
    boost::multiprecision::cpp_int v_;
};

// base^exponent mod modulus. Errc::ZeroModulus when modulus < 2.
// exponent 0 yields 1 (reduced mod modulus).
BigUint mod_pow(const BigUint& base, const BigUint& exponent, const BigUint& modulus);

// Greatest common divisor. Errc::BothZero when both arguments are zero.
BigUint gcd(const BigUint& a, const BigUint& b);

} // namespace qbounty
