#include "qbounty/fallback.hpp"

#include "qbounty/errors.hpp"
#include "qbounty/hash.hpp"

namespace qbounty {

bool KeyedHashVerifier::verify(ByteView message, ByteView credential) const {
    Bytes expected = make_credential(message);
    if (credential.size() != expected.size()) return false;
    return std::equal(credential.begin(), credential.end(), expected.begin());
}

Bytes KeyedHashVerifier::make_credential(ByteView message) const {
    HashWriter w;
    w.write(ByteView(key_));
    w.write(message);
    Hash256 h = w.finalize();
    return Bytes(h.begin(), h.end());
}

const char* auth_result_name(AuthResult r) {
    switch (r) {
    case AuthResult::Accepted: return "Accepted";
    case AuthResult::Rejected: return "Rejected";
    case AuthResult::WrongCredentialKind: return "WrongCredentialKind";
    }
    return "Unknown";
}

FallbackAccount::FallbackAccount(std::shared_ptr<const LegacyVerifier> legacy,
                                 LamportPublicKey fallback_key, std::function<bool()> switched)
    : legacy_(std::move(legacy)), fallback_key_(fallback_key), switched_(std::move(switched)) {
    if (!legacy_) raise(Errc::InvalidInput, "legacy verifier required");
    if (!switched_) raise(Errc::InvalidInput, "switchover flag source required");
}

AuthResult FallbackAccount::authorize(ByteView message, const Credential& credential) const {
    const bool switched = switched_();
    if (const auto* legacy = std::get_if<LegacyCredential>(&credential)) {
        if (switched) return AuthResult::WrongCredentialKind;
        return legacy_->verify(message, ByteView(legacy->bytes)) ? AuthResult::Accepted
                                                                 : AuthResult::Rejected;
    }
    const auto& sig = std::get<LamportSignature>(credential);
    if (!switched) return AuthResult::WrongCredentialKind;
    return lamport_verify(message, sig, fallback_key_) ? AuthResult::Accepted : AuthResult::Rejected;
}

} // namespace qbounty
