#include "qbounty/errors.hpp"

namespace qbounty {

const char* errc_name(Errc code) {
    switch (code) {
    case Errc::ZeroModulus: return "ZeroModulus";
    case Errc::BothZero: return "BothZero";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::AlreadyComplete: return "AlreadyComplete";
    case Errc::Incomplete: return "Incomplete";
    case Errc::ExhaustedEntropy: return "ExhaustedEntropy";
    case Errc::AlreadySolved: return "AlreadySolved";
    case Errc::ZeroAmount: return "ZeroAmount";
    case Errc::GenerationIncomplete: return "GenerationIncomplete";
    case Errc::LockAlreadySolved: return "LockAlreadySolved";
    case Errc::BadLockIndex: return "BadLockIndex";
    case Errc::NoCommitment: return "NoCommitment";
    case Errc::RevealTooEarly: return "RevealTooEarly";
    case Errc::DigestMismatch: return "DigestMismatch";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::Unincludable: return "Unincludable";
    case Errc::KeyReuse: return "KeyReuse";
    case Errc::StateExists: return "StateExists";
    case Errc::BadStateFile: return "BadStateFile";
    case Errc::StateLocked: return "StateLocked";
    }
    return "Unknown";
}

static std::string format_what(Errc code, const std::string& detail) {
    std::string out = errc_name(code);
    if (!detail.empty()) {
        out += ": ";
        out += detail;
    }
    return out;
}

ProtocolError::ProtocolError(Errc code, const std::string& detail)
    : std::runtime_error(format_what(code, detail)), code_(code) {}

ProtocolError::ProtocolError(Errc code) : ProtocolError(code, "") {}

void raise(Errc code, const std::string& detail) {
    throw ProtocolError(code, detail);
}

} // namespace qbounty
