#pragma once

#include "qbounty/bytes.hpp"
#include "qbounty/lamport.hpp"

#include <functional>
#include <memory>
#include <variant>

namespace qbounty {

// Signature scheme in use before the switchover; abstract because the ledger
// host decides what "legacy" means (ECDSA on a real chain).
class LegacyVerifier {
public:
    virtual ~LegacyVerifier() = default;
    virtual bool verify(ByteView message, ByteView credential) const = 0;
};

// Deterministic stand-in for tests and the simulator: credential is
// keccak256(key || message).
class KeyedHashVerifier : public LegacyVerifier {
public:
    explicit KeyedHashVerifier(Bytes key) : key_(std::move(key)) {}

    bool verify(ByteView message, ByteView credential) const override;
    Bytes make_credential(ByteView message) const;

private:
    Bytes key_;
};

struct LegacyCredential {
    Bytes bytes;
};

using Credential = std::variant<LegacyCredential, LamportSignature>;

enum class AuthResult {
    Accepted,
    Rejected,            // right kind of credential, fails verification
    WrongCredentialKind, // scheme not active under the current flag
};

const char* auth_result_name(AuthResult r);

// Account guarded by a switchover flag: legacy credentials authorize while the
// flag reads false, only hash-based signatures once it reads true.
class FallbackAccount {
public:
    FallbackAccount(std::shared_ptr<const LegacyVerifier> legacy, LamportPublicKey fallback_key,
                    std::function<bool()> switched);

    AuthResult authorize(ByteView message, const Credential& credential) const;

private:
    std::shared_ptr<const LegacyVerifier> legacy_;
    LamportPublicKey fallback_key_;
    std::function<bool()> switched_;
};

} // namespace qbounty
