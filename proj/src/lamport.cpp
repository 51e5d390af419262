#include "qbounty/lamport.hpp"

#include "qbounty/errors.hpp"

#include <cstring>

namespace qbounty {

namespace {

int digest_bit(const Hash256& digest, int i) {
    return (digest[i / 8] >> (7 - i % 8)) & 1;
}

} // namespace

LamportKeyPair lamport_keygen(const Hash256& seed) {
    LamportKeyPair kp;
    for (int i = 0; i < 256; ++i) {
        for (int b = 0; b < 2; ++b) {
            HashWriter w;
            w.write(ByteView(seed.data(), seed.size()));
            w.write_byte(static_cast<std::uint8_t>(i));
            w.write_byte(static_cast<std::uint8_t>(b));
            kp.secret[i][b] = w.finalize();
            kp.public_key[i][b] = keccak256(ByteView(kp.secret[i][b].data(), kp.secret[i][b].size()));
        }
    }
    return kp;
}

LamportSignature lamport_sign(ByteView message, LamportKeyPair& key) {
    if (key.used) raise(Errc::KeyReuse, "one-time key was already spent");
    key.used = true;
    Hash256 digest = keccak256(message);
    LamportSignature sig;
    for (int i = 0; i < 256; ++i)
        sig.revealed[i] = key.secret[i][digest_bit(digest, i)];
    return sig;
}

bool lamport_verify(ByteView message, const LamportSignature& sig, const LamportPublicKey& pub) {
    Hash256 digest = keccak256(message);
    for (int i = 0; i < 256; ++i) {
        Hash256 h = keccak256(ByteView(sig.revealed[i].data(), sig.revealed[i].size()));
        if (h != pub[i][digest_bit(digest, i)]) return false;
    }
    return true;
}

std::string lamport_public_to_hex(const LamportPublicKey& pub) {
    Bytes flat;
    flat.reserve(256 * 2 * 32);
    for (const auto& pair : pub)
        for (const auto& h : pair)
            append_bytes(flat, ByteView(h.data(), h.size()));
    return hex_encode(ByteView(flat));
}

LamportPublicKey lamport_public_from_hex(std::string_view hex) {
    Bytes flat = hex_decode(hex);
    if (flat.size() != 256 * 2 * 32) raise(Errc::InvalidInput, "expected 16384 public key bytes");
    LamportPublicKey pub;
    const std::uint8_t* p = flat.data();
    for (auto& pair : pub)
        for (auto& h : pair) {
            std::memcpy(h.data(), p, 32);
            p += 32;
        }
    return pub;
}

std::string lamport_signature_to_hex(const LamportSignature& sig) {
    Bytes flat;
    flat.reserve(256 * 32);
    for (const auto& h : sig.revealed)
        append_bytes(flat, ByteView(h.data(), h.size()));
    return hex_encode(ByteView(flat));
}

LamportSignature lamport_signature_from_hex(std::string_view hex) {
    Bytes flat = hex_decode(hex);
    if (flat.size() != 256 * 32) raise(Errc::InvalidInput, "expected 8192 signature bytes");
    LamportSignature sig;
    const std::uint8_t* p = flat.data();
    for (auto& h : sig.revealed) {
        std::memcpy(h.data(), p, 32);
        p += 32;
    }
    return sig;
}

} // namespace qbounty
