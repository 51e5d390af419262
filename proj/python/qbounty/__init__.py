"""Python surface of the factoring-bounty protocol simulator."""

from ._core import (  # noqa: F401
    AccumulatorState,
    AttackStrategy,
    BountyState,
    FactorizationSolution,
    FallbackAccount,
    FrontrunReport,
    FrontrunScenario,
    GenerationParams,
    KeyedHashVerifier,
    LamportKeyPair,
    Ledger,
    Lock,
    ProtocolError,
    VerifyResult,
    classify_prime,
    commitment_digest,
    coprime_pair_count,
    expected_hard_lock_count,
    expected_prime_factor_count,
    extract_locks,
    gcd,
    is_probable_prime,
    keccak256,
    lamport_keygen,
    lamport_sign,
    lamport_verify,
    min_bounty_in_currency,
    mod_pow,
    required_lock_count,
    sander_hardness,
    simulate_frontrun,
    verify_factorization,
)

__version__ = "0.1.0"
