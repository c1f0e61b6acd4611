"""Hot numeric kernels over int64 coefficient arrays.

Every function here is nopython-compatible and gets JIT-compiled when the
numba backend is active (see backend.py); under ROOTSPLIT_NO_NUMBA the same
source runs as plain Python over numpy arrays, so both lanes compute
identical bytes.

Conventions: a polynomial over GF(p) is a 1-D int64 array of coefficients in
[0, p), low-to-high, with no trailing zeros; the zero polynomial is the
empty array. All moduli must satisfy 3 <= p < 2**31 so that every
intermediate product stays below 2**63.
"""

import numpy as np

from .backend import jit


@jit
def trim(c):
    n = c.size
    while n > 0 and c[n - 1] == 0:
        n -= 1
    return c[:n].copy()


@jit
def inv_mod(a, p):
    # extended Euclid on integers; a in [1, p), p prime
    t = 0
    t1 = 1
    r = p
    r1 = a
    while r1 != 0:
        q = r // r1
        t, t1 = t1, t - q * t1
        r, r1 = r1, r - q * r1
    if t < 0:
        t += p
    return t


@jit
def poly_add(a, b, p):
    if a.size < b.size:
        a, b = b, a
    out = a.copy()
    for i in range(b.size):
        out[i] = (out[i] + b[i]) % p
    return trim(out)


@jit
def poly_sub(a, b, p):
    n = a.size if a.size > b.size else b.size
    out = np.zeros(n, np.int64)
    for i in range(a.size):
        out[i] = a[i]
    for i in range(b.size):
        out[i] = (out[i] - b[i]) % p
    return trim(out)


@jit
def poly_mul(a, b, p):
    if a.size == 0 or b.size == 0:
        return np.empty(0, np.int64)
    out = np.zeros(a.size + b.size - 1, np.int64)
    for i in range(a.size):
        ai = a[i]
        if ai != 0:
            for j in range(b.size):
                out[i + j] = (out[i + j] + ai * b[j]) % p
    # leading coefficient is lc(a)*lc(b) mod a prime: never zero
    return out


@jit
def poly_divmod(num, den, p):
    # den must be nonzero (guarded by callers)
    if num.size < den.size:
        return np.empty(0, np.int64), num.copy()
    q = np.zeros(num.size - den.size + 1, np.int64)
    r = num.copy()
    inv = inv_mod(den[den.size - 1], p)
    for shift in range(num.size - den.size, -1, -1):
        lead = r[shift + den.size - 1]
        if lead != 0:
            c = (lead * inv) % p
            q[shift] = c
            for i in range(den.size):
                r[shift + i] = (r[shift + i] - c * den[i]) % p
    return q, trim(r)


@jit
def poly_mod(num, den, p):
    if num.size < den.size:
        return num.copy()
    r = num.copy()
    inv = inv_mod(den[den.size - 1], p)
    for shift in range(num.size - den.size, -1, -1):
        lead = r[shift + den.size - 1]
        if lead != 0:
            c = (lead * inv) % p
            for i in range(den.size):
                r[shift + i] = (r[shift + i] - c * den[i]) % p
    return trim(r)


@jit
def poly_eval(c, x, p):
    y = 0
    for i in range(c.size - 1, -1, -1):
        y = (y * x + c[i]) % p
    return y


@jit
def poly_from_roots(roots, p):
    # monic product of (x - r); in-place convolution, O(len(roots)^2)
    out = np.zeros(roots.size + 1, np.int64)
    out[0] = 1
    deg = 0
    for t in range(roots.size):
        r = roots[t] % p
        deg += 1
        out[deg] = out[deg - 1]
        for i in range(deg - 1, 0, -1):
            out[i] = (out[i - 1] - r * out[i]) % p
        out[0] = (-r * out[0]) % p
    return out


@jit
def poly_ext_gcd(f, g, p):
    """Monic gcd d with Bezout pair (u, v): u*f + v*g = d.

    For coprime inputs of degree >= 1 the pair is canonicalized to the
    unique minimal-degree representative (deg u < deg g, deg v < deg f) by
    reducing u mod g and folding the quotient into v. At least one input
    must be nonzero.
    """
    r0 = f.copy()
    r1 = g.copy()
    s0 = np.zeros(1, np.int64)
    s0[0] = 1
    s1 = np.empty(0, np.int64)
    t0 = np.empty(0, np.int64)
    t1 = np.zeros(1, np.int64)
    t1[0] = 1
    while r1.size > 0:
        q, rr = poly_divmod(r0, r1, p)
        r0, r1 = r1, rr
        s_next = poly_sub(s0, poly_mul(q, s1, p), p)
        s0, s1 = s1, s_next
        t_next = poly_sub(t0, poly_mul(q, t1, p), p)
        t0, t1 = t1, t_next
    lc = r0[r0.size - 1]
    if lc != 1:
        inv = inv_mod(lc, p)
        d = np.empty(r0.size, np.int64)
        for i in range(r0.size):
            d[i] = (r0[i] * inv) % p
        u = np.empty(s0.size, np.int64)
        for i in range(s0.size):
            u[i] = (s0[i] * inv) % p
        v = np.empty(t0.size, np.int64)
        for i in range(t0.size):
            v[i] = (t0[i] * inv) % p
    else:
        d, u, v = r0, s0, t0
    if d.size == 1 and d[0] == 1 and f.size >= 2 and g.size >= 2:
        q, u2 = poly_divmod(u, g, p)
        v2 = poly_add(v, poly_mul(q, f, p), p)
        u, v = u2, v2
    return d, u, v


@jit
def bezout_keys(proots, qroots, p):
    """Canonical key pair (a, b) for the factor pair built from two disjoint
    root sets: a*P + b*Q = 1 with deg a < deg Q and deg b < deg P."""
    pc = poly_from_roots(proots, p)
    qc = poly_from_roots(qroots, p)
    d, u, v = poly_ext_gcd(pc, qc, p)
    return u, v


@jit
def merge_sorted_disjoint(a, b, out):
    i = 0
    j = 0
    k = 0
    while i < a.size and j < b.size:
        if a[i] < b[j]:
            out[k] = a[i]
            i += 1
        else:
            out[k] = b[j]
            j += 1
        k += 1
    while i < a.size:
        out[k] = a[i]
        i += 1
        k += 1
    while j < b.size:
        out[k] = b[j]
        j += 1
        k += 1


@jit
def complement_in_range(sub, n, out):
    # out gets the elements of [1, n] missing from sorted sub
    j = 0
    k = 0
    for v in range(1, n + 1):
        if j < sub.size and sub[j] == v:
            j += 1
        else:
            out[k] = v
            k += 1


@jit
def unrank_combination(rank, m, kk, binom, out):
    # lexicographic unranking of a kk-subset of {0,..,m-1}
    r = rank
    x = 0
    for slot in range(kk):
        while binom[m - 1 - x, kk - 1 - slot] <= r:
            r -= binom[m - 1 - x, kk - 1 - slot]
            x += 1
        out[slot] = x
        x += 1


@jit
def next_combination(idx, m, kk):
    i = kk - 1
    while i >= 0 and idx[i] == m - kk + i:
        i -= 1
    if i < 0:
        return False
    idx[i] += 1
    for j in range(i + 1, kk):
        idx[j] = idx[j - 1] + 1
    return True


@jit
def congruence_holds(a, proots, qroots, p):
    # (a * P) mod Q == 1 for P, Q rebuilt from their root sets
    pc = poly_from_roots(proots, p)
    qc = poly_from_roots(qroots, p)
    rem = poly_mod(poly_mul(a, pc, p), qc, p)
    return rem.size == 1 and rem[0] == 1


@jit
def attack_chunk(p, a, universe, kk, prefix, start, end, binom, probe_budget, out_roots):
    """Scan candidate ranks [start, end) of the lexicographic enumeration of
    kk-subsets of `universe`, each merged with the fixed `prefix` roots.

    Returns (tested, pruned, found): candidates failing a cheap probe are
    pruned; survivors get the full congruence check. Accepted root sets are
    written to out_roots (found may exceed its capacity; the caller retries
    with a larger buffer in that case).
    """
    n = p - 1
    ktot = kk + prefix.size
    idx = np.empty(kk, np.int64)
    if end > start and kk > 0:
        unrank_combination(start, universe.size, kk, binom, idx)
    chosen = np.empty(kk, np.int64)
    merged = np.empty(ktot, np.int64)
    comp = np.empty(n - ktot, np.int64)
    tested = 0
    pruned = 0
    found = 0
    for rank in range(start, end):
        if rank > start:
            next_combination(idx, universe.size, kk)
        for i in range(kk):
            chosen[i] = universe[idx[i]]
        merge_sorted_disjoint(prefix, chosen, merged)
        complement_in_range(merged, n, comp)
        # probe: every root j of Q must satisfy P(j)*A(j) == 1, so check a
        # few smallest complement roots before paying for the full division
        ok = True
        probes = comp.size if comp.size < probe_budget else probe_budget
        for t in range(probes):
            j = comp[t]
            pj = 1
            for i in range(ktot):
                pj = (pj * (j - merged[i])) % p
            if (pj * poly_eval(a, j, p)) % p != 1:
                ok = False
                break
        if not ok:
            pruned += 1
            continue
        tested += 1
        if congruence_holds(a, merged, comp, p):
            if found < out_roots.shape[0]:
                for i in range(ktot):
                    out_roots[found, i] = merged[i]
            found += 1
    return tested, pruned, found


@jit
def survey_chunk(p, universe, kk, prefix, start, end, binom, out_roots, out_a, out_alen, out_b, out_blen):
    """Derive the canonical key pair for candidate ranks [start, end).

    Row r of the output arrays describes candidate rank start+r: its sorted
    root set, the public key a (inverse of P mod Q) and the swapped-role key
    b. Lengths are actual coefficient counts; columns beyond them are zero.
    """
    n = p - 1
    ktot = kk + prefix.size
    idx = np.empty(kk, np.int64)
    if end > start and kk > 0:
        unrank_combination(start, universe.size, kk, binom, idx)
    chosen = np.empty(kk, np.int64)
    merged = np.empty(ktot, np.int64)
    comp = np.empty(n - ktot, np.int64)
    row = 0
    for rank in range(start, end):
        if rank > start:
            next_combination(idx, universe.size, kk)
        for i in range(kk):
            chosen[i] = universe[idx[i]]
        merge_sorted_disjoint(prefix, chosen, merged)
        complement_in_range(merged, n, comp)
        u, v = bezout_keys(merged, comp, p)
        for i in range(ktot):
            out_roots[row, i] = merged[i]
        out_alen[row] = u.size
        for i in range(u.size):
            out_a[row, i] = u[i]
        out_blen[row] = v.size
        for i in range(v.size):
            out_b[row, i] = v[i]
        row += 1
    return row


def build_binomial_table(m: int, kk: int) -> np.ndarray:
    """Pascal table C[a, b] for a <= m, b <= kk, saturated at 2**62.

    Saturation keeps the int64 kernel arithmetic overflow-free for large m;
    enumeration drivers reject search spaces anywhere near that size first.
    """
    cap = 1 << 62
    table = [[0] * (kk + 1) for _ in range(m + 1)]
    for a in range(m + 1):
        table[a][0] = 1
        for b in range(1, min(a, kk) + 1):
            val = table[a - 1][b - 1] + table[a - 1][b]
            table[a][b] = val if val < cap else cap
    return np.array(table, dtype=np.int64)
