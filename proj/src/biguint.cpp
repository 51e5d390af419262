#include "qbounty/biguint.hpp"

#include "qbounty/errors.hpp"

#include <iterator>

namespace qbounty {

namespace mp = boost::multiprecision;

BigUint BigUint::from_bytes_be(ByteView bytes) {
    BigUint out;
    if (!bytes.empty())
        mp::import_bits(out.v_, bytes.begin(), bytes.end(), 8, true);
    return out;
}

BigUint BigUint::from_hex(std::string_view hex) {
    Bytes raw = hex_decode(hex);
    if (raw.empty()) raise(Errc::InvalidInput, "empty hex value");
    return from_bytes_be(raw);
}

BigUint BigUint::from_decimal(std::string_view text) {
    if (text.empty()) raise(Errc::InvalidInput, "empty decimal value");
    BigUint out;
    for (char c : text) {
        if (c < '0' || c > '9') raise(Errc::InvalidInput, "bad decimal digit");
        out.v_ = out.v_ * 10 + (c - '0');
    }
    return out;
}

Bytes BigUint::to_bytes_be() const {
    if (v_.is_zero()) return Bytes{0x00};
    Bytes out;
    mp::export_bits(v_, std::back_inserter(out), 8, true);
    return out;
}

std::string BigUint::to_hex() const {
    return hex_encode(ByteView(to_bytes_be()));
}

std::string BigUint::to_decimal() const {
    return v_.str();
}

bool BigUint::is_even() const {
    return !mp::bit_test(v_, 0);
}

std::size_t BigUint::bit_length() const {
    if (v_.is_zero()) return 0;
    return mp::msb(v_) + 1;
}

std::size_t BigUint::byte_length() const {
    if (v_.is_zero()) return 1;
    return (bit_length() + 7) / 8;
}

bool BigUint::fits_u64() const {
    return bit_length() <= 64;
}

std::uint64_t BigUint::to_u64() const {
    if (!fits_u64()) raise(Errc::OutOfRange, "value exceeds 64 bits");
    return v_.convert_to<std::uint64_t>();
}

BigUint& BigUint::operator+=(const BigUint& rhs) {
    v_ += rhs.v_;
    return *this;
}

BigUint& BigUint::operator-=(const BigUint& rhs) {
    if (v_ < rhs.v_) raise(Errc::OutOfRange, "unsigned underflow");
    v_ -= rhs.v_;
    return *this;
}

BigUint& BigUint::operator*=(const BigUint& rhs) {
    v_ *= rhs.v_;
    return *this;
}

BigUint& BigUint::operator/=(const BigUint& rhs) {
    if (rhs.v_.is_zero()) raise(Errc::ZeroModulus, "division by zero");
    v_ /= rhs.v_;
    return *this;
}

BigUint& BigUint::operator%=(const BigUint& rhs) {
    if (rhs.v_.is_zero()) raise(Errc::ZeroModulus, "reduction modulo zero");
    v_ %= rhs.v_;
    return *this;
}

BigUint& BigUint::operator>>=(unsigned shift) {
    v_ >>= shift;
    return *this;
}

BigUint& BigUint::operator<<=(unsigned shift) {
    v_ <<= shift;
    return *this;
}

std::strong_ordering BigUint::operator<=>(const BigUint& rhs) const {
    int c = v_.compare(rhs.v_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

BigUint mod_pow(const BigUint& base, const BigUint& exponent, const BigUint& modulus) {
    if (modulus < BigUint(2)) raise(Errc::ZeroModulus, "modulus must be at least 2");
    BigUint result(1);
    BigUint b = base % modulus;
    BigUint e = exponent;
    while (!e.is_zero()) {
        if (!e.is_even()) {
            result *= b;
            result %= modulus;
        }
        e >>= 1;
        if (!e.is_zero()) {
            b *= b;
            b %= modulus;
        }
    }
    return result;
}

BigUint gcd(const BigUint& a, const BigUint& b) {
    if (a.is_zero() && b.is_zero()) raise(Errc::BothZero, "gcd(0, 0) is undefined");
    BigUint x = a;
    BigUint y = b;
    while (!y.is_zero()) {
        BigUint r = x % y;
        x = y;
        y = r;
    }
    return x;
}

} // namespace qbounty
