"""Exception types shared across the package."""


class RootsplitError(Exception):
    """Base class for all package-specific errors."""


class InvalidPrime(RootsplitError):
    """Modulus is not an odd prime >= 3 (or is too large for 64-bit kernels)."""


class ZeroInverse(RootsplitError):
    """Multiplicative inverse of 0 requested."""


class ModulusMismatch(RootsplitError):
    """Operands live over different prime moduli."""


class DivisionByZeroPolynomial(RootsplitError):
    """Polynomial division by the zero polynomial."""


class BothZero(RootsplitError):
    """gcd of two zero polynomials requested."""


class NotCoprime(RootsplitError):
    """Bezout derivation on inputs with a nontrivial common factor."""


class MalformedKey(RootsplitError):
    """A key object violates its own invariants."""


class SearchSpaceTooLarge(RootsplitError):
    """Enumeration would exceed the candidate ceiling.

    The candidate count grows exponentially in p; this error is where that
    growth becomes tangible.
    """


class InvalidBitLength(RootsplitError):
    """One-time signature bit length k < 1."""


class KeyAlreadyUsed(RootsplitError):
    """A one-time key set was asked to sign a second message."""


class LengthMismatch(RootsplitError):
    """Message / signature / key-array lengths disagree."""


class MalformedFile(RootsplitError):
    """A serialized artifact failed to parse.

    Carries the 1-based line number of the first offending line.
    """

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class UnsupportedVersion(RootsplitError):
    """Artifact file declares a format version this build does not speak."""


class InvariantViolation(RootsplitError):
    """A parsed value is syntactically fine but violates a type invariant."""
