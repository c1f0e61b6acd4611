"""Dense polynomial arithmetic over the prime field GF(p).

Coefficients are stored low-to-high in an immutable int64 array with no
trailing zeros, so equal polynomials always have equal representations.
The zero polynomial has an empty coefficient array and degree -infinity
(exposed as the NEG_INF sentinel).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import (
    BothZero,
    DivisionByZeroPolynomial,
    InvalidPrime,
    ModulusMismatch,
    ZeroInverse,
)

NEG_INF = float("-inf")

_MAX_PRIME = (1 << 31) - 1


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3 * 10**24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool):
        raise InvalidPrime(f"modulus must be an int, got {type(p).__name__}")
    if p < 3:
        raise InvalidPrime(f"modulus must be an odd prime >= 3, got {p}")
    if p > _MAX_PRIME:
        raise InvalidPrime(f"modulus must be < 2**31, got {p}")
    if not is_prime(p):
        raise InvalidPrime(f"modulus must be prime, got {p}")
    return p


def mod_inverse(a: int, p: int) -> int:
    check_prime(p)
    a %= p
    if a == 0:
        raise ZeroInverse(f"0 has no inverse mod {p}")
    return int(kernels.inv_mod(np.int64(a), np.int64(p)))


def _as_coeff_array(coeffs: Iterable[int], p: int) -> np.ndarray:
    arr = np.asarray([int(c) % p for c in coeffs], dtype=np.int64)
    return kernels.trim(arr)


class Poly:
    """Immutable polynomial over GF(p)."""

    __slots__ = ("_coeffs", "_p")

    def __init__(self, coeffs: Iterable[int], p: int):
        check_prime(p)
        arr = _as_coeff_array(coeffs, p)
        arr.setflags(write=False)
        self._coeffs = arr
        self._p = p

    @classmethod
    def _wrap(cls, arr: np.ndarray, p: int) -> "Poly":
        obj = object.__new__(cls)
        arr.setflags(write=False)
        obj._coeffs = arr
        obj._p = p
        return obj

    @classmethod
    def zero(cls, p: int) -> "Poly":
        return cls((), p)

    @classmethod
    def one(cls, p: int) -> "Poly":
        return cls((1,), p)

    @classmethod
    def x_pow_minus_one(cls, n: int, p: int) -> "Poly":
        """x**n - 1."""
        check_prime(p)
        if n < 1:
            raise ValueError(f"exponent must be >= 1, got {n}")
        arr = np.zeros(n + 1, np.int64)
        arr[0] = p - 1
        arr[n] = 1
        return cls._wrap(arr, p)

    @classmethod
    def from_roots(cls, roots: Iterable[int], p: int) -> "Poly":
        """Monic product of (x - r) over the given roots."""
        check_prime(p)
        arr = np.asarray([int(r) for r in roots], dtype=np.int64)
        return cls._wrap(kernels.poly_from_roots(arr, p), p)

    @property
    def p(self) -> int:
        return self._p

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self._coeffs)

    @property
    def coeff_array(self) -> np.ndarray:
        return self._coeffs

    @property
    def degree(self) -> float:
        return self._coeffs.size - 1 if self._coeffs.size else NEG_INF

    def is_zero(self) -> bool:
        return self._coeffs.size == 0

    def is_one(self) -> bool:
        return self._coeffs.size == 1 and self._coeffs[0] == 1

    def is_monic(self) -> bool:
        return self._coeffs.size > 0 and self._coeffs[-1] == 1

    def _check_same_field(self, other: "Poly") -> None:
        if self._p != other._p:
            raise ModulusMismatch(f"mixed moduli {self._p} and {other._p}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self._p == other._p and np.array_equal(self._coeffs, other._coeffs)

    def __hash__(self) -> int:
        return hash((self._p, self.coeffs))

    def __bool__(self) -> bool:
        return self._coeffs.size > 0

    def __add__(self, other: "Poly") -> "Poly":
        self._check_same_field(other)
        return Poly._wrap(kernels.poly_add(self._coeffs, other._coeffs, self._p), self._p)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check_same_field(other)
        return Poly._wrap(kernels.poly_sub(self._coeffs, other._coeffs, self._p), self._p)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check_same_field(other)
        return Poly._wrap(kernels.poly_mul(self._coeffs, other._coeffs, self._p), self._p)

    def __neg__(self) -> "Poly":
        return Poly.zero(self._p) - self

    def scale(self, c: int) -> "Poly":
        return self * Poly((c,), self._p)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check_same_field(other)
        if other.is_zero():
            raise DivisionByZeroPolynomial("division by the zero polynomial")
        q, r = kernels.poly_divmod(self._coeffs, other._coeffs, self._p)
        return Poly._wrap(q, self._p), Poly._wrap(r, self._p)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        self._check_same_field(other)
        if other.is_zero():
            raise DivisionByZeroPolynomial("reduction by the zero polynomial")
        return Poly._wrap(kernels.poly_mod(self._coeffs, other._coeffs, self._p), self._p)

    def __call__(self, x: int) -> int:
        return int(kernels.poly_eval(self._coeffs, np.int64(int(x) % self._p), np.int64(self._p)))

    def monic(self) -> "Poly":
        if self.is_zero():
            raise ZeroInverse("the zero polynomial cannot be made monic")
        if self.is_monic():
            return self
        return self.scale(mod_inverse(int(self._coeffs[-1]), self._p))

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)}, p={self._p})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self._coeffs.size - 1, -1, -1):
            c = int(self._coeffs[i])
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("x" if c == 1 else f"{c}*x")
            else:
                parts.append(f"x^{i}" if c == 1 else f"{c}*x^{i}")
        return " + ".join(parts)


def ext_gcd(f: Poly, g: Poly) -> tuple[Poly, Poly, Poly]:
    """Monic gcd(f, g) = d with u*f + v*g = d.

    When f and g are coprime and both of degree >= 1 the Bezout pair is the
    unique minimal-degree one: deg u < deg g and deg v < deg f.
    """
    f._check_same_field(g)
    if f.is_zero() and g.is_zero():
        raise BothZero("gcd of two zero polynomials is undefined")
    p = f.p
    if f.is_zero():
        gm = g.monic()
        lc_inv = mod_inverse(int(g.coeff_array[-1]), p)
        return gm, Poly.zero(p), Poly((lc_inv,), p)
    if g.is_zero():
        fm = f.monic()
        lc_inv = mod_inverse(int(f.coeff_array[-1]), p)
        return fm, Poly((lc_inv,), p), Poly.zero(p)
    d, u, v = kernels.poly_ext_gcd(f.coeff_array, g.coeff_array, p)
    return Poly._wrap(d, p), Poly._wrap(u, p), Poly._wrap(v, p)


@dataclass(frozen=True)
class RootSet:
    """Sorted set of distinct nonzero residues mod p."""

    p: int
    roots: tuple[int, ...] = field(default=())

    def __post_init__(self):
        check_prime(self.p)
        rs = tuple(sorted(int(r) for r in self.roots))
        for r in rs:
            if not 1 <= r <= self.p - 1:
                raise ValueError(f"root {r} outside [1, {self.p - 1}]")
        if len(set(rs)) != len(rs):
            raise ValueError("duplicate roots")
        object.__setattr__(self, "roots", rs)

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __contains__(self, r: int) -> bool:
        return r in set(self.roots)

    def complement(self) -> "RootSet":
        """The remaining nonzero residues."""
        missing = tuple(sorted(set(range(1, self.p)) - set(self.roots)))
        return RootSet(self.p, missing)

    def polynomial(self) -> Poly:
        return Poly.from_roots(self.roots, self.p)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.roots, dtype=np.int64)

    def is_balanced(self) -> bool:
        return len(self.roots) == (self.p - 1) // 2


def lagrange_interpolate(points: Sequence[tuple[int, int]], p: int) -> Poly:
    """Unique polynomial of degree < len(points) through the given points.

    Nodes must be distinct mod p. Quadratic-time; intended for small inputs
    and cross-checking, not for hot paths.
    """
    check_prime(p)
    xs = [int(x) % p for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    acc = Poly.zero(p)
    for i, (xi, yi) in enumerate(points):
        xi %= p
        num = Poly.one(p)
        den = 1
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            xj %= p
            num = num * Poly((-xj % p, 1), p)
            den = den * (xi - xj) % p
        term = num.scale(int(yi) % p * mod_inverse(den, p) % p)
        acc = acc + term
    return acc


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)
