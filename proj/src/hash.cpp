#include "qbounty/hash.hpp"

#include "qbounty/errors.hpp"

#include <bit>
#include <cstring>

namespace qbounty {

namespace {

constexpr int kRate = 136; // 1088-bit rate for a 256-bit digest

constexpr std::uint64_t kRoundConstants[24] = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
    0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

constexpr int kRotations[25] = {
    0,  1,  62, 28, 27, //
    36, 44, 6,  55, 20, //
    3,  10, 43, 25, 39, //
    41, 45, 15, 21, 8,  //
    18, 2,  61, 56, 14, //
};

void keccak_f1600(std::uint64_t a[25]) {
    for (int round = 0; round < 24; ++round) {
        // theta
        std::uint64_t c[5];
        for (int x = 0; x < 5; ++x)
            c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
        for (int x = 0; x < 5; ++x) {
            std::uint64_t d = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
            for (int y = 0; y < 5; ++y)
                a[x + 5 * y] ^= d;
        }
        // rho + pi
        std::uint64_t b[25];
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                b[y + 5 * ((2 * x + 3 * y) % 5)] = std::rotl(a[x + 5 * y], kRotations[x + 5 * y]);
        // chi
        for (int y = 0; y < 5; ++y)
            for (int x = 0; x < 5; ++x)
                a[x + 5 * y] = b[x + 5 * y] ^ (~b[(x + 1) % 5 + 5 * y] & b[(x + 2) % 5 + 5 * y]);
        // iota
        a[0] ^= kRoundConstants[round];
    }
}

} // namespace

Hash256 keccak256(ByteView data) {
    std::uint64_t state[25] = {};
    std::uint8_t block[kRate];

    // absorb full blocks
    while (data.size() >= kRate) {
        for (int i = 0; i < kRate / 8; ++i) {
            std::uint64_t lane;
            std::memcpy(&lane, data.data() + 8 * i, 8); // little-endian host assumed
            state[i] ^= lane;
        }
        keccak_f1600(state);
        data = data.subspan(kRate);
    }

    // final block with 0x01 ... 0x80 padding (original Keccak domain)
    std::memset(block, 0, sizeof(block));
    if (!data.empty()) std::memcpy(block, data.data(), data.size());
    block[data.size()] ^= 0x01;
    block[kRate - 1] ^= 0x80;
    for (int i = 0; i < kRate / 8; ++i) {
        std::uint64_t lane;
        std::memcpy(&lane, block + 8 * i, 8);
        state[i] ^= lane;
    }
    keccak_f1600(state);

    Hash256 out;
    std::memcpy(out.data(), state, 32);
    return out;
}

Hash256 keccak256(std::string_view text) {
    return keccak256(as_bytes(text));
}

std::string hash_to_hex(const Hash256& h) {
    return hex_encode(ByteView(h.data(), h.size()));
}

Hash256 hash_from_hex(std::string_view hex) {
    Bytes raw = hex_decode(hex);
    if (raw.size() != 32) raise(Errc::InvalidInput, "expected 32-byte digest");
    Hash256 out;
    std::memcpy(out.data(), raw.data(), 32);
    return out;
}

HashWriter& HashWriter::write(ByteView data) {
    append_bytes(buf_, data);
    return *this;
}

HashWriter& HashWriter::write(std::string_view text) {
    return write(as_bytes(text));
}

HashWriter& HashWriter::write_byte(std::uint8_t b) {
    buf_.push_back(b);
    return *this;
}

HashWriter& HashWriter::write_u64(std::uint64_t value) {
    append_u64_be(buf_, value);
    return *this;
}

Hash256 HashWriter::finalize() const {
    return keccak256(ByteView(buf_));
}

} // namespace qbounty
