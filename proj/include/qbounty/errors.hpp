#pragma once

#include <stdexcept>
#include <string>

namespace qbounty {

// Every rule violation in the protocol maps to one of these codes so callers
// (state machine, ledger, CLI) can branch on the reason without string matching.
enum class Errc {
    // numeric core
    ZeroModulus,
    BothZero,
    InvalidInput,
    OutOfRange,
    // entropy accumulation / lock generation
    AlreadyComplete,
    Incomplete,
    ExhaustedEntropy,
    // bounty state machine
    AlreadySolved,
    ZeroAmount,
    GenerationIncomplete,
    LockAlreadySolved,
    BadLockIndex,
    NoCommitment,
    RevealTooEarly,
    DigestMismatch,
    VerificationFailed,
    // ledger
    Unincludable,
    // one-time signatures
    KeyReuse,
    // persistence
    StateExists,
    BadStateFile,
    StateLocked,
};

const char* errc_name(Errc code);

class ProtocolError : public std::runtime_error {
public:
    ProtocolError(Errc code, const std::string& detail);
    explicit ProtocolError(Errc code);

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& detail = "");

} // namespace qbounty
