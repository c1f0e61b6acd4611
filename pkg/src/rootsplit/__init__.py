"""rootsplit: a candidate one-way function from balanced factorizations of
x**(p-1) - 1 over GF(p), with verification, brute-force inversion, a
factorization census, and one-time signatures."""

from .backend import NUMBA_ENABLED, backend_name
from .errors import RootsplitError
from .gfpoly import Poly, RootSet, ext_gcd, is_prime, mod_inverse
from .lamport import LamportKeySet, Signature, lamport_keygen, sign, verify_signature
from .rng import SplitMix64
from .scheme import (
    BalancedFactorPair,
    FactorPair,
    KeyPair,
    PublicKey,
    VerifyOutcome,
    derive_public_key,
    keygen,
    sample_balanced_factorization,
    verify_proof,
)
from .search import (
    AttackResult,
    SurveyReport,
    brute_force_invert,
    count_search_space,
    uniqueness_survey,
    verify_report,
)

__version__ = "0.1.0"

__all__ = [
    "AttackResult",
    "BalancedFactorPair",
    "FactorPair",
    "KeyPair",
    "LamportKeySet",
    "NUMBA_ENABLED",
    "Poly",
    "PublicKey",
    "RootSet",
    "RootsplitError",
    "Signature",
    "SplitMix64",
    "SurveyReport",
    "VerifyOutcome",
    "backend_name",
    "brute_force_invert",
    "count_search_space",
    "derive_public_key",
    "ext_gcd",
    "is_prime",
    "keygen",
    "lamport_keygen",
    "mod_inverse",
    "sample_balanced_factorization",
    "sign",
    "uniqueness_survey",
    "verify_proof",
    "verify_report",
    "verify_signature",
    "__version__",
]
