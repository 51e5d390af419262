#pragma once

#include "qbounty/hash.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace qbounty {

// One-time hash-based signatures over 256-bit message digests: one secret
// pair per digest bit, the public key is the hash of every secret.
using LamportSecretKey = std::array<std::array<Hash256, 2>, 256>;
using LamportPublicKey = std::array<std::array<Hash256, 2>, 256>;

struct LamportSignature {
    std::array<Hash256, 256> revealed{};
};

struct LamportKeyPair {
    LamportSecretKey secret{};
    LamportPublicKey public_key{};
    bool used = false;
};

// Secrets derive from the seed: secret[i][b] = keccak256(seed || i || b).
LamportKeyPair lamport_keygen(const Hash256& seed);

// Signs keccak256(message), revealing one secret per digest bit.
// Errc::KeyReuse on a second signature with the same key pair.
LamportSignature lamport_sign(ByteView message, LamportKeyPair& key);

bool lamport_verify(ByteView message, const LamportSignature& sig, const LamportPublicKey& pub);

// Flat hex blobs: 16384 bytes of public key, 8192 bytes of signature.
std::string lamport_public_to_hex(const LamportPublicKey& pub);
LamportPublicKey lamport_public_from_hex(std::string_view hex);
std::string lamport_signature_to_hex(const LamportSignature& sig);
LamportSignature lamport_signature_from_hex(std::string_view hex);

} // namespace qbounty
