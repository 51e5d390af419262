#include "qbounty/bytes.hpp"

#include "qbounty/errors.hpp"

namespace qbounty {

static const char* kHexDigits = "0123456789abcdef";

std::string hex_encode(ByteView data) {
    std::string out;
    out.reserve(data.size() * 2);
    for (std::uint8_t b : data) {
        out.push_back(kHexDigits[b >> 4]);
        out.push_back(kHexDigits[b & 0x0f]);
    }
    return out;
}

static int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

Bytes hex_decode(std::string_view hex) {
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X'))
        hex.remove_prefix(2);
    Bytes out;
    out.reserve(hex.size() / 2 + 1);
    std::size_t i = 0;
    if (hex.size() % 2 == 1) {
        int lo = hex_nibble(hex[0]);
        if (lo < 0) raise(Errc::InvalidInput, "bad hex digit");
        out.push_back(static_cast<std::uint8_t>(lo));
        i = 1;
    }
    for (; i < hex.size(); i += 2) {
        int hi = hex_nibble(hex[i]);
        int lo = hex_nibble(hex[i + 1]);
        if (hi < 0 || lo < 0) raise(Errc::InvalidInput, "bad hex digit");
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

void append_u64_be(Bytes& out, std::uint64_t value) {
    for (int shift = 56; shift >= 0; shift -= 8)
        out.push_back(static_cast<std::uint8_t>(value >> shift));
}

void append_bytes(Bytes& out, ByteView data) {
    out.insert(out.end(), data.begin(), data.end());
}

ByteView as_bytes(std::string_view text) {
    return ByteView(reinterpret_cast<const std::uint8_t*>(text.data()), text.size());
}

} // namespace qbounty
