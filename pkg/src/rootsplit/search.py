"""Brute-force inversion and factorization-census experiments.

Inverting the public map means finding which split of {1, ..., p-1} produced
a given A. This module does so by exhaustive enumeration with sound pruning
(the empirical face of the hardness conjecture), counts the search space,
and surveys all factorizations to hunt for distinct splits sharing one
public polynomial.

Enumeration is lexicographic over sorted root subsets and is partitioned
into contiguous rank chunks, so results are bit-identical for every worker
count. Memory scales with the number of surveyed rows; the `limit` guard is
the intended ceiling for both time and space.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from multiprocessing import get_context

import numpy as np

from . import kernels
from .errors import InvariantViolation, SearchSpaceTooLarge
from .gfpoly import Poly, RootSet, check_prime
from .scheme import PublicKey, verify_proof

DEFAULT_LIMIT = 10_000_000
PROBE_BUDGET = 3
_CHUNK = 32768

MODES = ("balanced", "all")
PAIRINGS = ("ordered", "unordered")


def count_search_space(p: int, mode: str) -> int:
    """Number of ordered nontrivial factorizations: C(p-1, (p-1)/2) balanced
    splits, or 2**(p-1) - 2 splits of any degree."""
    check_prime(p)
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if mode == "balanced":
        return math.comb(p - 1, (p - 1) // 2)
    return 2 ** (p - 1) - 2


@dataclass(frozen=True)
class AttackResult:
    """Outcome of one exhaustive inversion run."""

    target: PublicKey
    preimages: tuple[tuple[RootSet, Poly], ...]
    candidates_tested: int
    pruned: int
    wall_ms: int

    @property
    def p(self) -> int:
        return self.target.p


@dataclass(frozen=True)
class SurveyRow:
    """One factorization: its root set, public polynomial, and the identity
    and size of the group of rows realizing that same polynomial."""

    rootsP: tuple[int, ...]
    degP: int
    A: tuple[int, ...]
    groupId: int
    groupSize: int
    B: tuple[int, ...] | None = None


@dataclass(frozen=True)
class CollisionGroup:
    """A public polynomial realized by at least two distinct factorizations;
    rows holds indices into SurveyReport.rows."""

    key: tuple[int, ...]
    rows: tuple[int, ...]


@dataclass(frozen=True)
class SurveyReport:
    p: int
    mode: str
    pairing: str
    rows: tuple[SurveyRow, ...]
    collision_groups: tuple[CollisionGroup, ...]


@dataclass(frozen=True)
class ReportAudit:
    """Result of re-deriving a report from scratch; row is the first
    offending row index when structure is fine but a row is wrong."""

    accepted: bool
    row: int | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.accepted


def expected_row_count(p: int, mode: str, pairing: str) -> int:
    n = count_search_space(p, mode)
    return n if pairing == "ordered" else n // 2


def _roots_of(a: Poly) -> list[int]:
    return [j for j in range(1, a.p) if a(j) == 0]


def _chunk_bounds(total: int, chunk: int | None = None) -> list[tuple[int, int]]:
    if chunk is None:
        chunk = _CHUNK
    return [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]


def _attack_job(args):
    p, a, universe, kk, prefix, start, end, binom, probe_budget = args
    out_roots = np.zeros((end - start, kk + prefix.size), np.int64)
    tested, pruned, found = kernels.attack_chunk(
        np.int64(p), a, universe, np.int64(kk), prefix,
        np.int64(start), np.int64(end), binom, np.int64(probe_budget), out_roots,
    )
    return int(tested), int(pruned), out_roots[: int(found)]


def _survey_job(args):
    p, universe, kk, prefix, start, end, binom, a_width, b_width = args
    rows = end - start
    ktot = kk + prefix.size
    out_roots = np.zeros((rows, ktot), np.int64)
    out_a = np.zeros((rows, a_width), np.int64)
    out_alen = np.zeros(rows, np.int64)
    out_b = np.zeros((rows, b_width), np.int64)
    out_blen = np.zeros(rows, np.int64)
    kernels.survey_chunk(
        np.int64(p), universe, np.int64(kk), prefix,
        np.int64(start), np.int64(end), binom,
        out_roots, out_a, out_alen, out_b, out_blen,
    )
    return out_roots, out_a, out_alen, out_b, out_blen


def _run_jobs(fn, jobs, workers: int):
    if workers <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers, mp_context=get_context("fork")) as ex:
        return list(ex.map(fn, jobs))


def brute_force_invert(
    pub: PublicKey,
    limit: int = DEFAULT_LIMIT,
    workers: int = 1,
    prune: bool = True,
) -> AttackResult:
    """Enumerate every balanced root split in lexicographic order and return
    all of them whose factor verifies against pub.

    Pruning (on by default) is two-stage and sound: roots of A must lie in
    the candidate root set (A cannot vanish at a root j of Q, since the
    congruence forces A(j)*P(j) = 1 there), and for up to PROBE_BUDGET
    complement roots j the value P(j)*A(j) must equal 1. candidates_tested +
    pruned always equals the full search-space count.
    """
    p = pub.p
    half = (p - 1) // 2
    total = count_search_space(p, "balanced")
    if total > limit:
        raise SearchSpaceTooLarge(
            f"C({p - 1},{half}) = {total} balanced splits exceeds limit {limit}"
        )
    t0 = time.perf_counter()
    a = pub.A.coeff_array
    if prune:
        anchor = _roots_of(pub.A)
        probe_budget = PROBE_BUDGET
    else:
        anchor = []
        probe_budget = 0
    found_sets: list[tuple[int, ...]] = []
    tested = 0
    pruned = 0
    if len(anchor) > half:
        # more forced roots than a balanced factor can hold: nothing to scan
        pruned = total
    else:
        prefix = np.asarray(anchor, dtype=np.int64)
        universe = np.asarray(
            [j for j in range(1, p) if j not in set(anchor)], dtype=np.int64
        )
        kk = half - len(anchor)
        sub_total = math.comb(universe.size, kk)
        pruned += total - sub_total
        binom = kernels.build_binomial_table(universe.size, max(kk, 1))
        jobs = [
            (p, a, universe, kk, prefix, lo, hi, binom, probe_budget)
            for lo, hi in _chunk_bounds(sub_total)
        ]
        for c_tested, c_pruned, c_roots in _run_jobs(_attack_job, jobs, workers):
            tested += c_tested
            pruned += c_pruned
            for row in c_roots:
                found_sets.append(tuple(int(v) for v in row))
    preimages = []
    for roots in found_sets:
        rs = RootSet(p, roots)
        poly = rs.polynomial()
        if not verify_proof(pub, poly):
            raise InvariantViolation(f"accepted candidate {roots} fails verification")
        preimages.append((rs, poly))
    if [r.roots for r, _ in preimages] != sorted(r.roots for r, _ in preimages):
        raise InvariantViolation("preimages out of lexicographic order")
    wall_ms = int(round((time.perf_counter() - t0) * 1000))
    return AttackResult(
        target=pub,
        preimages=tuple(preimages),
        candidates_tested=tested,
        pruned=pruned,
        wall_ms=wall_ms,
    )


def _survey_blocks(p: int, mode: str, pairing: str) -> list[tuple[np.ndarray, int, np.ndarray]]:
    """(universe, kk, prefix) per enumerated block; block rows are the
    prefix merged with every kk-subset of universe."""
    n = p - 1
    # nontrivial splits only: deg P ranges over [1, p-2] in all mode
    sizes = [n // 2] if mode == "balanced" else list(range(1, n))
    blocks = []
    full = np.arange(1, p, dtype=np.int64)
    rest = np.arange(2, p, dtype=np.int64)
    one = np.asarray([1], dtype=np.int64)
    nothing = np.zeros(0, np.int64)
    for k in sizes:
        if pairing == "ordered":
            blocks.append((full, k, nothing))
        else:
            # canonical representative of {P, Q} is the side containing 1
            # (lexicographically smaller); enumerate only those
            blocks.append((rest, k - 1, one))
    return blocks


def uniqueness_survey(
    p: int,
    mode: str = "balanced",
    pairing: str = "ordered",
    limit: int = DEFAULT_LIMIT,
    workers: int = 1,
) -> SurveyReport:
    """Census of factorizations grouped by their public polynomial.

    One row per split (balanced only, or every nontrivial degree). Ordered
    pairing lists (P, Q) and (Q, P) separately; unordered pairing keeps one
    row per pair, keyed by the lexicographically smaller root set, and
    groups collisions over both role assignments' public polynomials.
    """
    check_prime(p)
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if pairing not in PAIRINGS:
        raise ValueError(f"pairing must be one of {PAIRINGS}, got {pairing!r}")
    total = expected_row_count(p, mode, pairing)
    if total > limit:
        raise SearchSpaceTooLarge(f"survey would emit {total} rows, exceeding limit {limit}")
    n = p - 1
    raw: list[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]] = []
    for universe, kk, prefix in _survey_blocks(p, mode, pairing):
        ktot = kk + prefix.size
        if not 1 <= ktot <= n - 1:
            continue
        block_total = math.comb(universe.size, kk)
        binom = kernels.build_binomial_table(universe.size, max(kk, 1))
        a_width = n - ktot
        b_width = ktot
        jobs = [
            (p, universe, kk, prefix, lo, hi, binom, a_width, b_width)
            for lo, hi in _chunk_bounds(block_total)
        ]
        for out_roots, out_a, out_alen, out_b, out_blen in _run_jobs(_survey_job, jobs, workers):
            for r in range(out_roots.shape[0]):
                roots = tuple(int(v) for v in out_roots[r])
                a = tuple(int(v) for v in out_a[r, : int(out_alen[r])])
                b = tuple(int(v) for v in out_b[r, : int(out_blen[r])])
                raw.append((roots, a, b))
    raw.sort(key=lambda t: t[0])
    if len(raw) != total:
        raise InvariantViolation(f"enumerated {len(raw)} rows, expected {total}")
    rows = _assemble_rows(raw, pairing)
    groups = _collision_groups(raw, pairing)
    return SurveyReport(p=p, mode=mode, pairing=pairing, rows=rows, collision_groups=groups)


def _key_incidences(
    raw: list[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]],
    pairing: str,
) -> dict[tuple[int, ...], list[int]]:
    """Row indices realizing each public polynomial; in unordered pairing a
    row realizes both its displayed key and its swapped-role key."""
    incidence: dict[tuple[int, ...], list[int]] = {}
    for i, (_, a, b) in enumerate(raw):
        incidence.setdefault(a, []).append(i)
        if pairing == "unordered":
            incidence.setdefault(b, []).append(i)
    return incidence


def _group_ids(
    raw: list[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]],
    pairing: str,
) -> dict[tuple[int, ...], int]:
    """Dense ids: displayed keys first in row order, then (unordered only)
    keys realized solely through the swapped role."""
    ids: dict[tuple[int, ...], int] = {}
    for _, a, _b in raw:
        if a not in ids:
            ids[a] = len(ids)
    if pairing == "unordered":
        for _, _a, b in raw:
            if b not in ids:
                ids[b] = len(ids)
    return ids


def _assemble_rows(raw, pairing: str) -> tuple[SurveyRow, ...]:
    incidence = _key_incidences(raw, pairing)
    ids = _group_ids(raw, pairing)
    rows = []
    for roots, a, b in raw:
        rows.append(
            SurveyRow(
                rootsP=roots,
                degP=len(roots),
                A=a,
                groupId=ids[a],
                groupSize=len(incidence[a]),
                B=b if pairing == "unordered" else None,
            )
        )
    return tuple(rows)


def _collision_groups(raw, pairing: str) -> tuple[CollisionGroup, ...]:
    incidence = _key_incidences(raw, pairing)
    ids = _group_ids(raw, pairing)
    groups = [
        CollisionGroup(key=key, rows=tuple(rows))
        for key, rows in incidence.items()
        if len(rows) >= 2
    ]
    groups.sort(key=lambda g: ids[g.key])
    return tuple(groups)


def _derive_row_keys(p: int, roots: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    merged = np.asarray(roots, dtype=np.int64)
    comp = np.zeros(p - 1 - merged.size, np.int64)
    kernels.complement_in_range(merged, np.int64(p - 1), comp)
    u, v = kernels.bezout_keys(merged, comp, np.int64(p))
    return tuple(int(x) for x in u), tuple(int(x) for x in v)


def verify_report(report: SurveyReport) -> ReportAudit:
    """Re-derive the census from scratch and compare: every row's public
    polynomial must recompute identically from its root set, groups must
    match, and all collision groups must be genuine."""
    p = report.p
    if report.mode not in MODES or report.pairing not in PAIRINGS:
        return ReportAudit(False, None, "unknown mode or pairing")
    expected = expected_row_count(p, report.mode, report.pairing)
    if len(report.rows) != expected:
        return ReportAudit(False, None, f"row count {len(report.rows)}, expected {expected}")
    half = (p - 1) // 2
    raw = []
    prev: tuple[int, ...] | None = None
    for i, row in enumerate(report.rows):
        roots = row.rootsP
        if prev is not None and not prev < roots:
            return ReportAudit(False, i, "rows not in lexicographic root-set order")
        prev = roots
        if not all(1 <= r <= p - 1 for r in roots) or list(roots) != sorted(set(roots)):
            return ReportAudit(False, i, f"invalid root set {roots}")
        if not 1 <= len(roots) <= p - 2:
            return ReportAudit(False, i, f"root-set size {len(roots)} out of range")
        if report.mode == "balanced" and len(roots) != half:
            return ReportAudit(False, i, f"unbalanced row of degree {len(roots)}")
        if report.pairing == "unordered" and roots[0] != 1:
            return ReportAudit(False, i, "row is not the canonical side containing 1")
        if row.degP != len(roots):
            return ReportAudit(False, i, f"degP = {row.degP}, root set has {len(roots)}")
        a, b = _derive_row_keys(p, roots)
        if row.A != a:
            return ReportAudit(False, i, f"stored A {row.A} differs from derived {a}")
        if row.B is not None and row.B != b:
            return ReportAudit(False, i, f"stored B {row.B} differs from derived {b}")
        raw.append((roots, a, b))
    incidence = _key_incidences(raw, report.pairing)
    ids = _group_ids(raw, report.pairing)
    for i, row in enumerate(report.rows):
        if row.groupId != ids[row.A]:
            return ReportAudit(False, i, f"groupId {row.groupId}, expected {ids[row.A]}")
        if row.groupSize != len(incidence[row.A]):
            return ReportAudit(
                False, i, f"groupSize {row.groupSize}, expected {len(incidence[row.A])}"
            )
    want_groups = _collision_groups(raw, report.pairing)
    if report.collision_groups != want_groups:
        return ReportAudit(False, None, "collision groups differ from re-derived grouping")
    for g in want_groups:
        if len(g.rows) < 2:
            return ReportAudit(False, None, f"degenerate collision group {g.key}")
    return ReportAudit(True)
