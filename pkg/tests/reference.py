"""Independent reference implementations used to cross-check the package.

Everything here is deliberately naive and, where possible, algorithmically
different from the package: inverses via Fermat exponentiation, the public
polynomial via Lagrange interpolation (A interpolates 1/P(j) at the roots j
of Q) rather than the extended Euclidean algorithm, and exhaustive search
over all low-degree candidates at tiny p. Polynomials are plain int lists,
low-to-high, trimmed.
"""

from __future__ import annotations

import itertools

MASK64 = (1 << 64) - 1


def inv(a: int, p: int) -> int:
    return pow(a % p, p - 2, p)


def trim(c: list[int]) -> list[int]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def padd(f, g, p):
    n = max(len(f), len(g))
    return trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p for i in range(n)])


def psub(f, g, p):
    n = max(len(f), len(g))
    return trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)])


def pmul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % p
    return trim(out)


def pdivmod(num, den, p):
    num, den = trim(num), trim(den)
    assert den, "division by zero polynomial"
    q = [0] * max(len(num) - len(den) + 1, 0)
    r = list(num)
    ilc = inv(den[-1], p)
    while len(r) >= len(den) and trim(r):
        r = trim(r)
        if len(r) < len(den):
            break
        shift = len(r) - len(den)
        c = r[-1] * ilc % p
        q[shift] = c
        for i, d in enumerate(den):
            r[shift + i] = (r[shift + i] - c * d) % p
        r = trim(r)
    return trim(q), trim(r)


def peval(f, x, p):
    y = 0
    for c in reversed(f):
        y = (y * x + c) % p
    return y


def from_roots(roots, p):
    out = [1]
    for r in roots:
        out = pmul(out, [(-r) % p, 1], p)
    return out


def x_pow_minus_one(n, p):
    out = [0] * (n + 1)
    out[0] = p - 1
    out[n] = 1
    return out


def interpolate(points, p):
    """Lagrange interpolation through (x, y) pairs with distinct x."""
    acc = []
    for i, (xi, yi) in enumerate(points):
        num = [1]
        den = 1
        for j, (xj, _) in enumerate(points):
            if i != j:
                num = pmul(num, [(-xj) % p, 1], p)
                den = den * (xi - xj) % p
        acc = padd(acc, pmul(num, [yi * inv(den, p) % p], p), p)
    return acc


def public_poly(rootsP, p):
    """A via interpolation: on each root j of Q, the Bezout identity forces
    A(j) = 1/P(j); A has degree < deg Q, so those values pin it down."""
    rootsP = sorted(rootsP)
    rootsQ = sorted(set(range(1, p)) - set(rootsP))
    pts = []
    for j in rootsQ:
        pj = 1
        for r in rootsP:
            pj = pj * (j - r) % p
        pts.append((j, inv(pj, p)))
    return interpolate(pts, p)


def witness_poly(rootsP, p):
    """B = (1 - A*P) / Q, exact division."""
    a = public_poly(rootsP, p)
    rootsQ = sorted(set(range(1, p)) - set(rootsP))
    num = psub([1], pmul(a, from_roots(rootsP, p), p), p)
    q, r = pdivmod(num, from_roots(rootsQ, p), p)
    assert r == [], "witness division must be exact"
    return q


def exhaustive_public_poly(rootsP, p):
    """All candidates of degree < deg Q, filtered by the congruence; the
    canonical A must be the unique survivor."""
    P = from_roots(sorted(rootsP), p)
    rootsQ = sorted(set(range(1, p)) - set(rootsP))
    Q = from_roots(rootsQ, p)
    hits = []
    for coeffs in itertools.product(range(p), repeat=len(rootsQ)):
        cand = trim(list(coeffs))
        _, rem = pdivmod(pmul(cand, P, p), Q, p)
        if rem == [1]:
            hits.append(cand)
    return hits


def balanced_subsets(p):
    return itertools.combinations(range(1, p), (p - 1) // 2)


def all_subsets(p):
    for k in range(1, p - 1):
        yield from itertools.combinations(range(1, p), k)


def splitmix64_stream(seed, count):
    """Direct transcription of the generator definition for cross-checks."""
    state = seed & MASK64
    out = []
    for _ in range(count):
        state = (state + 0x9E3779B97F4A7C15) & MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        out.append((z ^ (z >> 31)) & MASK64)
    return out
