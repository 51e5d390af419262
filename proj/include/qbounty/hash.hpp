#pragma once

#include "qbounty/bytes.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace qbounty {

using Hash256 = std::array<std::uint8_t, 32>;

// Keccak-256 as used on Ethereum (0x01 domain padding, rate 136).
Hash256 keccak256(ByteView data);
Hash256 keccak256(std::string_view text);

std::string hash_to_hex(const Hash256& h);
Hash256 hash_from_hex(std::string_view hex);

// Accumulates a multi-part preimage, then hashes it in one shot.
class HashWriter {
public:
    HashWriter& write(ByteView data);
    HashWriter& write(std::string_view text);
    HashWriter& write_byte(std::uint8_t b);
    HashWriter& write_u64(std::uint64_t value); // big-endian
    Hash256 finalize() const;

private:
    Bytes buf_;
};

} // namespace qbounty
