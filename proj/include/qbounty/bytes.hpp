#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qbounty {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

// Lowercase, no prefix, two digits per byte.
std::string hex_encode(ByteView data);

// Accepts an optional 0x/0X prefix and odd length (implied leading zero digit).
// Throws Errc::InvalidInput on anything that is not a hex digit.
Bytes hex_decode(std::string_view hex);

void append_u64_be(Bytes& out, std::uint64_t value);
void append_bytes(Bytes& out, ByteView data);

ByteView as_bytes(std::string_view text);

} // namespace qbounty
