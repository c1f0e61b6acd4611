"""One-time signatures over fixed-length bitstrings.

A message bit selects which of two precommitted factor splits to reveal at
each position: key pair [i][b] commits bit value b at index i. Revealing a
factor consumes it, so a key set signs exactly one message; the used flag
is enforced here in memory and persisted by the file layer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidBitLength, KeyAlreadyUsed, LengthMismatch
from .gfpoly import Poly, check_prime
from .rng import GAMMA, MASK64
from .scheme import KeyPair, PublicKey, keygen, verify_proof

PublicGrid = tuple[tuple[PublicKey, PublicKey], ...]


def child_seed(seed: int, i: int, b: int) -> int:
    """Seed for sub-key [i][b]: the master generator state advanced by
    2i + b steps."""
    return (int(seed) + (2 * i + b) * GAMMA) & MASK64


def check_message(message: str, bits: int) -> str:
    if not isinstance(message, str) or any(c not in "01" for c in message):
        raise ValueError(f"message must be a bitstring of 0s and 1s, got {message!r}")
    if len(message) != bits:
        raise LengthMismatch(f"message has {len(message)} bits, key has {bits}")
    return message


@dataclass
class LamportKeySet:
    """Private side: bits x 2 sub-keys plus the one-time used marker."""

    p: int
    bits: int
    seed: int
    pairs: tuple[tuple[KeyPair, KeyPair], ...]
    used: bool = False

    def public_grid(self) -> PublicGrid:
        return tuple((a.public, b.public) for a, b in self.pairs)


@dataclass(frozen=True)
class Signature:
    """Revealed factors, one per message bit: revealed[i] is the private P
    committed to message[i] at position i."""

    p: int
    message: str
    revealed: tuple[Poly, ...]

    @property
    def bits(self) -> int:
        return len(self.message)


@dataclass(frozen=True)
class SignatureOutcome:
    """Accept, or the first failing bit position with its proof failure."""

    accepted: bool
    index: int | None = None
    check: str | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.accepted


def lamport_keygen(p: int, bits: int, seed: int) -> tuple[PublicGrid, LamportKeySet]:
    """2*bits independent key pairs from deterministically derived seeds."""
    check_prime(p)
    if bits < 1:
        raise InvalidBitLength(f"bit length must be >= 1, got {bits}")
    pairs = tuple(
        (keygen(p, child_seed(seed, i, 0)), keygen(p, child_seed(seed, i, 1)))
        for i in range(bits)
    )
    keys = LamportKeySet(p=p, bits=bits, seed=int(seed) & MASK64, pairs=pairs)
    return keys.public_grid(), keys


def sign(keys: LamportKeySet, message: str) -> Signature:
    """Reveal the factor committed to each message bit; one-shot per key set."""
    if keys.used:
        raise KeyAlreadyUsed("this key set has already signed a message")
    check_message(message, keys.bits)
    revealed = tuple(keys.pairs[i][int(bit)].P for i, bit in enumerate(message))
    keys.used = True
    return Signature(p=keys.p, message=message, revealed=revealed)


def verify_signature(public: PublicGrid, message: str, sig: Signature) -> SignatureOutcome:
    """Accept iff every revealed factor proves the public key its message
    bit selects."""
    if len(sig.revealed) != len(message):
        raise LengthMismatch(
            f"signature reveals {len(sig.revealed)} factors for {len(message)} bits"
        )
    if len(public) != len(message):
        raise LengthMismatch(f"public grid has {len(public)} slots for {len(message)} bits")
    if any(c not in "01" for c in message):
        raise ValueError(f"message must be a bitstring of 0s and 1s, got {message!r}")
    for i, bit in enumerate(message):
        outcome = verify_proof(public[i][int(bit)], sig.revealed[i])
        if not outcome:
            return SignatureOutcome(False, i, outcome.check, outcome.reason)
    return SignatureOutcome(True)
