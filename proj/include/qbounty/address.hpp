#pragma once

#include "qbounty/bytes.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace qbounty {

// 20-byte account identifier, printed as 40 lowercase hex digits.
struct Address {
    std::array<std::uint8_t, 20> bytes{};

    // Accepts 0x prefix and short input (left-padded with zeros).
    static Address from_hex(std::string_view hex);
    std::string to_hex() const;

    ByteView view() const { return ByteView(bytes.data(), bytes.size()); }

    auto operator<=>(const Address&) const = default;
};

} // namespace qbounty
