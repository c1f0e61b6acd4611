"""The core construction: factor x**(p-1) - 1 over GF(p) by splitting its
root set {1, ..., p-1} into two halves, then publish the canonical Bezout
coefficient A with A*P = 1 (mod Q).

Forward direction (keygen) is polynomial-time; recovering the split from A
alone is conjectured hard and is probed empirically in search.py.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .errors import MalformedKey, NotCoprime
from .gfpoly import Poly, RootSet, check_prime, ext_gcd
from .rng import SplitMix64

EXPERIMENTAL_PRIME_FLOOR = 64


class ExperimentalParametersWarning(UserWarning):
    """Raised (as a warning) for desk-scale primes with no security margin."""


@dataclass(frozen=True)
class PublicKey:
    """Published polynomial A: the inverse of the secret factor P mod Q."""

    p: int
    A: Poly

    def __post_init__(self):
        check_prime(self.p)
        if self.A.p != self.p:
            raise MalformedKey(f"A has modulus {self.A.p}, key has p={self.p}")
        if self.A.is_zero():
            raise MalformedKey("public polynomial must be nonzero")
        if self.A.degree >= (self.p - 1) // 2:
            raise MalformedKey(
                f"deg A = {self.A.degree} not below (p-1)/2 = {(self.p - 1) // 2}"
            )

    @property
    def half_degree(self) -> int:
        return (self.p - 1) // 2


@dataclass(frozen=True)
class FactorPair:
    """Ordered coprime factorization x**(p-1) - 1 = P * Q, each factor the
    product of (x - j) over its root set."""

    p: int
    rootsP: RootSet
    rootsQ: RootSet
    P: Poly
    Q: Poly

    def __post_init__(self):
        check_prime(self.p)
        if self.rootsP.p != self.p or self.rootsQ.p != self.p:
            raise ValueError("root sets carry a different modulus")
        union = set(self.rootsP.roots) | set(self.rootsQ.roots)
        if set(self.rootsP.roots) & set(self.rootsQ.roots):
            raise ValueError("root sets overlap")
        if union != set(range(1, self.p)):
            raise ValueError("root sets do not cover {1, ..., p-1}")
        if len(self.rootsP) == 0 or len(self.rootsQ) == 0:
            raise ValueError("trivial split: both factors must be nonconstant")
        if self.P != self.rootsP.polynomial():
            raise ValueError("P does not match its root set")
        if self.Q != self.rootsQ.polynomial():
            raise ValueError("Q does not match its root set")
        # disjoint roots of a squarefree product force coprimality; assert anyway
        d, _, _ = ext_gcd(self.P, self.Q)
        if not d.is_one():
            raise ValueError("factors are not coprime")

    @classmethod
    def from_roots(cls, p: int, rootsP: RootSet) -> "FactorPair":
        rootsQ = rootsP.complement()
        return cls(p, rootsP, rootsQ, rootsP.polynomial(), rootsQ.polynomial())

    def swapped(self) -> "FactorPair":
        return FactorPair(self.p, self.rootsQ, self.rootsP, self.Q, self.P)

    def is_balanced(self) -> bool:
        return len(self.rootsP) == (self.p - 1) // 2


class BalancedFactorPair(FactorPair):
    """FactorPair with deg P = deg Q = (p-1)/2."""

    def __post_init__(self):
        super().__post_init__()
        half = (self.p - 1) // 2
        if len(self.rootsP) != half:
            raise ValueError(f"deg P = {len(self.rootsP)}, expected {half}")

    @classmethod
    def from_roots(cls, p: int, rootsP: RootSet) -> "BalancedFactorPair":
        rootsQ = rootsP.complement()
        return cls(p, rootsP, rootsQ, rootsP.polynomial(), rootsQ.polynomial())


@dataclass(frozen=True)
class KeyPair:
    """Full key material: the published A plus the secret split and the
    Bezout witness B with A*P + B*Q = 1 exactly."""

    public: PublicKey
    P: Poly
    rootsP: RootSet
    B: Poly
    seed: int

    @property
    def p(self) -> int:
        return self.public.p

    def factor_pair(self) -> BalancedFactorPair:
        return BalancedFactorPair.from_roots(self.p, self.rootsP)


@dataclass(frozen=True)
class VerifyOutcome:
    """Accept/reject with the first failed check ('a'..'d') on rejection."""

    accepted: bool
    check: str | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.accepted

    @classmethod
    def ok(cls) -> "VerifyOutcome":
        return cls(True)

    @classmethod
    def fail(cls, check: str, reason: str) -> "VerifyOutcome":
        return cls(False, check, reason)


def sample_balanced_factorization(p: int, rng: SplitMix64) -> BalancedFactorPair:
    """Uniformly random balanced split of {1, ..., p-1} under the given
    generator; deterministic for a fixed seed."""
    check_prime(p)
    half = (p - 1) // 2
    roots = rng.sample_subset(p - 1, half)
    return BalancedFactorPair.from_roots(p, RootSet(p, roots))


def derive_public_key(pair: FactorPair) -> tuple[PublicKey, Poly]:
    """Canonical Bezout pair for (P, Q): A*P + B*Q = 1 with deg A < deg Q
    and deg B < deg P; A is the inverse of P in GF(p)[x]/(Q)."""
    d, u, v = ext_gcd(pair.P, pair.Q)
    if not d.is_one():
        raise NotCoprime("factor pair is not coprime")
    return PublicKey(pair.p, u), v


def verify_proof(pub: PublicKey, P: Poly) -> VerifyOutcome:
    """Check a revealed factor P against a public key.

    Ordered checks: (a) P is monic of degree (p-1)/2; (b) P divides
    x**(p-1) - 1 exactly; (c) with Q the cofactor, (A*P) mod Q = 1;
    (d) deg A < deg Q. The outcome carries the first failure.
    """
    if not isinstance(pub, PublicKey):
        raise MalformedKey(f"expected a PublicKey, got {type(pub).__name__}")
    if P.p != pub.p:
        raise MalformedKey(f"proof modulus {P.p} differs from key modulus {pub.p}")
    p = pub.p
    half = (p - 1) // 2
    if P.degree != half:
        return VerifyOutcome.fail("a", f"deg P = {P.degree}, expected {half}")
    if not P.is_monic():
        return VerifyOutcome.fail("a", "P is not monic")
    modulus_poly = Poly.x_pow_minus_one(p - 1, p)
    q, r = modulus_poly.divmod(P)
    if not r.is_zero():
        return VerifyOutcome.fail("b", f"P does not divide x^{p - 1} - 1 (remainder {r})")
    rem = (pub.A * P) % q
    if not rem.is_one():
        return VerifyOutcome.fail("c", f"(A*P) mod Q = {rem}, expected 1")
    if pub.A.degree >= q.degree:
        return VerifyOutcome.fail("d", f"deg A = {pub.A.degree} not below deg Q = {q.degree}")
    return VerifyOutcome.ok()


def keygen(p: int, seed: int) -> KeyPair:
    """Sample a balanced factorization from the seed and derive its key."""
    check_prime(p)
    if p < EXPERIMENTAL_PRIME_FLOOR:
        warnings.warn(
            f"p = {p} is a desk-scale experiment, not a secure parameter",
            ExperimentalParametersWarning,
            stacklevel=2,
        )
    rng = SplitMix64(seed)
    pair = sample_balanced_factorization(p, rng)
    pub, b = derive_public_key(pair)
    return KeyPair(public=pub, P=pair.P, rootsP=pair.rootsP, B=b, seed=int(seed) & ((1 << 64) - 1))
