"""Acceptance gate: ten numbered criteria, one pass/fail line each.

Run as `pytest -v tests/test_acceptance.py`; the verbose line per test is
the pass/fail record. Each criterion also prints one PASS line with its
measured numbers straight to the terminal, bypassing capture.
"""

import dataclasses
import itertools
import math
import os
import random
import subprocess
import sys
from time import perf_counter

import numpy as np
import pytest

import reference
from rootsplit import formats
from rootsplit.formats import Proof
from rootsplit.gfpoly import Poly, RootSet
from rootsplit.lamport import Signature, lamport_keygen, sign, verify_signature
from rootsplit.scheme import BalancedFactorPair, derive_public_key, keygen, verify_proof
from rootsplit.search import (
    brute_force_invert,
    count_search_space,
    uniqueness_survey,
    verify_report,
)

PRIMES_TO_97 = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
                61, 67, 71, 73, 79, 83, 89, 97]

# first verified balanced unordered runs, frozen as the regression baseline
FROZEN_BALANCED_COLLISION_COUNTS = {5: 0, 7: 0, 11: 0, 13: 0}

_PASS_LINES = []


def _passed(n: int, detail: str) -> None:
    # collected here, printed by the terminal-summary hook in conftest.py
    _PASS_LINES.append(f"criterion {n:02d}: PASS  {detail}")


@pytest.fixture(scope="module", autouse=True)
def _warm_kernels():
    # absorb one-time JIT latency so criterion timings measure the algorithms
    keygen(13, 0)
    brute_force_invert(keygen(5, 0).public)
    uniqueness_survey(5, "balanced", "unordered")


def test_criterion_01_root_product_identity():
    start = perf_counter()
    for p in PRIMES_TO_97:
        assert Poly.from_roots(range(1, p), p) == Poly.x_pow_minus_one(p - 1, p)
    elapsed = perf_counter() - start
    assert elapsed < 1.0
    _passed(1, f"(x-1)...(x-(p-1)) == x**(p-1) - 1 for all {len(PRIMES_TO_97)} "
               f"odd primes <= 97 in {elapsed * 1000:.0f} ms")


def test_criterion_02_bezout_identity_exactness():
    start = perf_counter()
    runs = 0
    for p in (3, 5, 7, 11, 13, 17, 19, 23):
        for seed in range(100):
            kp = keygen(p, seed)
            q = kp.rootsP.complement().polynomial()
            assert (kp.public.A * kp.P + kp.B * q).is_one()
            assert verify_proof(kp.public, kp.P)
            runs += 1
    elapsed = perf_counter() - start
    assert elapsed < 5.0
    _passed(2, f"A*P + B*Q == 1 and proof accepted for {runs} keygens "
               f"in {elapsed:.2f} s")


def test_criterion_03_worked_fixture_p5():
    pair = BalancedFactorPair.from_roots(5, RootSet(5, (1, 2)))
    pub, b = derive_public_key(pair)
    assert pair.P == Poly([2, 2, 1], 5)
    assert pair.Q == Poly([2, 3, 1], 5)
    assert pub.A == Poly([4, 3], 5)
    assert b == Poly([4, 2], 5)
    for j in (3, 4):  # substitution oracle on the roots of Q
        assert pub.A(j) * pair.P(j) % 5 == 1
    _passed(3, "p=5, rootsP={1,2}: P=x^2+2x+2, Q=x^2+3x+2, A=3x+4, B=2x+4")


def test_criterion_04_keygen_scales_polynomially():
    def best_of(p, reps):
        times = []
        for r in range(reps):
            start = perf_counter()
            keygen(p, 1000 + r)
            times.append(perf_counter() - start)
        return min(times)

    keygen(101, 0)
    t101 = best_of(101, 9)
    assert t101 < 1.0
    t211 = best_of(211, 5)
    t401 = best_of(401, 3)
    slope = np.polyfit(np.log([101.0, 211.0, 401.0]),
                       np.log([t101, t211, t401]), 1)[0]
    assert slope <= 3.5
    _passed(4, f"keygen(101) in {t101 * 1000:.2f} ms; log-log slope over "
               f"p in {{101,211,401}} is {slope:.2f} <= 3.5")


def test_criterion_05_attack_recovers_planted_keys():
    sizes = [count_search_space(p, "balanced") for p in (5, 7, 11, 13)]
    assert sizes == [6, 20, 252, 924]

    def recoveries(p):
        total = math.comb(p - 1, (p - 1) // 2)
        for seed in range(20):
            kp = keygen(p, seed)
            result = brute_force_invert(kp.public)
            assert kp.rootsP in [roots for roots, _ in result.preimages]
            assert result.candidates_tested + result.pruned == total

    for p in (5, 7, 11):
        recoveries(p)
    start = perf_counter()
    recoveries(13)
    elapsed = perf_counter() - start
    assert elapsed < 10.0
    _passed(5, f"planted keys recovered for p in {{5,7,11,13}} x 20 seeds, "
               f"tested+pruned == C(p-1,(p-1)/2); p=13 block {elapsed:.2f} s")


def test_criterion_06_pruning_is_lossless():
    checked = 0
    for p in (3, 5, 7, 11, 13):
        half = (p - 1) // 2
        splits = []
        for combo in itertools.combinations(range(1, p), half):
            roots = RootSet(p, combo)
            splits.append((combo, roots.polynomial(), roots.complement().polynomial()))
        for seed in range(20):
            pub = keygen(p, seed).public
            found = {r.roots for r, _ in brute_force_invert(pub).preimages}
            unpruned = {c for c, pp, qq in splits if ((pub.A * pp) % qq).is_one()}
            assert found == unpruned
            checked += 1
    _passed(6, f"pruned and unpruned preimage sets identical over {checked} attacks")


def test_criterion_07_balanced_census_self_audits():
    counts = {}
    for p in (5, 7, 11, 13):
        report = uniqueness_survey(p, "balanced", "unordered")
        audit = verify_report(report)
        assert audit.accepted, (audit.row, audit.reason)
        counts[p] = len(report.collision_groups)
    assert counts == FROZEN_BALANCED_COLLISION_COUNTS

    # non-empty collision groups exist in the all-factors census; every
    # member must satisfy the congruence in one orientation on its own
    audited_members = 0
    for p in (5, 7):
        report = uniqueness_survey(p, "all", "unordered")
        assert verify_report(report).accepted
        assert report.collision_groups
        for group in report.collision_groups:
            key = Poly(list(group.key), p)
            for idx in group.rows:
                roots = RootSet(p, report.rows[idx].rootsP)
                pp = roots.polynomial()
                qq = roots.complement().polynomial()
                assert ((key * pp) % qq).is_one() or ((key * qq) % pp).is_one()
                audited_members += 1

    baseline = formats.serialize_survey(uniqueness_survey(13, "balanced", "unordered"))
    for workers in (2, 3):
        rerun = uniqueness_survey(13, "balanced", "unordered", workers=workers)
        assert formats.serialize_survey(rerun) == baseline
    _passed(7, f"balanced unordered collision counts {counts} match the frozen "
               f"baseline; {audited_members} collision members re-audited; "
               f"worker counts agree byte for byte")


def test_criterion_08_exhaustive_inverse_equivalence():
    candidates = 0
    for p in (3, 5):
        for combo in reference.balanced_subsets(p):
            pair = BalancedFactorPair.from_roots(p, RootSet(p, combo))
            pub, _ = derive_public_key(pair)
            survivors = reference.exhaustive_public_poly(list(combo), p)
            assert survivors == [list(pub.A.coeffs)]
            candidates += p ** len(combo)
    _passed(8, f"canonical A is the unique congruence solution for every "
               f"balanced split at p in {{3,5}} ({candidates} candidates swept)")


def _cli(*args, cwd=None):
    env = dict(os.environ, ROOTSPLIT_NO_NUMBA="1")
    return subprocess.run(
        [sys.executable, "-m", "rootsplit.cli", *map(str, args)],
        capture_output=True, text=True, env=env, cwd=cwd, timeout=300,
    )


def test_criterion_09_lamport_round_trips(tmp_path):
    flips = substitutions = 0
    for n in range(50):
        p = 11 if n % 2 == 0 else 13
        message = format(n * 37 % 256, "08b")
        grid, keys = lamport_keygen(p, 8, 1000 + n)
        sig = sign(keys, message)
        assert verify_signature(grid, message, sig)
        for i in range(8):
            flipped = message[:i] + ("1" if message[i] == "0" else "0") + message[i + 1:]
            outcome = verify_signature(grid, flipped, sig)
            assert not outcome and outcome.index == i
            flips += 1
        for i in range(8):
            sibling = keys.pairs[i][1 - int(message[i])].P
            if sibling == sig.revealed[i]:
                continue  # both sub-keys sampled the same split; nothing substituted
            forged = Signature(
                p=p, message=message,
                revealed=sig.revealed[:i] + (sibling,) + sig.revealed[i + 1:],
            )
            outcome = verify_signature(grid, message, forged)
            assert not outcome and outcome.index == i
            substitutions += 1

    # one-time property must survive a process restart: drive the CLI
    priv = tmp_path / "ots.priv"
    assert _cli("lamport-keygen", "--p", 11, "--bits", 8, "--seed", 77,
                "--pub", tmp_path / "ots.pub", "--priv", priv).returncode == 0
    assert _cli("lamport-sign", "--priv", priv, "--msg", "10100101",
                "--out", tmp_path / "a.sig").returncode == 0
    second = _cli("lamport-sign", "--priv", priv, "--msg", "01011010",
                  "--out", tmp_path / "b.sig")
    assert second.returncode == 1 and "error:" in second.stderr
    _passed(9, f"50 sign/verify fixtures accepted; {flips} bit flips and "
               f"{substitutions} sibling substitutions rejected; second sign "
               f"refused across process restart")


def test_criterion_10_serialization_round_trips():
    rng = random.Random(20260817)
    survey_pool = [(3, "balanced", "ordered"), (3, "all", "unordered"),
                   (5, "balanced", "unordered"), (5, "all", "ordered"),
                   (5, "all", "unordered"), (7, "balanced", "ordered"),
                   (7, "balanced", "unordered"), (7, "all", "unordered")]
    rounds = []
    for _ in range(500):
        kind = rng.randrange(8)
        p = rng.choice((5, 7, 11, 13, 17))
        seed = rng.getrandbits(64)
        if kind == 0:
            value = keygen(p, seed).public
            rounds.append((value, formats.serialize_public_key, formats.parse_public_key))
        elif kind == 1:
            value = keygen(p, seed)
            rounds.append((value, formats.serialize_keypair, formats.parse_keypair))
        elif kind == 2:
            kp = keygen(p, seed)
            rounds.append((Proof(kp.p, kp.P), formats.serialize_proof, formats.parse_proof))
        elif kind == 3:
            grid, _ = lamport_keygen(p, rng.randint(1, 4), seed)
            rounds.append(
                ((p, grid),
                 lambda v: formats.serialize_lamport_public(*v),
                 formats.parse_lamport_public)
            )
        elif kind == 4:
            _, keys = lamport_keygen(p, rng.randint(1, 4), seed)
            keys.used = rng.random() < 0.5
            rounds.append((keys, formats.serialize_lamport_private,
                           formats.parse_lamport_private))
        elif kind == 5:
            bits = rng.randint(1, 4)
            _, keys = lamport_keygen(p, bits, seed)
            message = "".join(rng.choice("01") for _ in range(bits))
            rounds.append((sign(keys, message), formats.serialize_signature,
                           formats.parse_signature))
        elif kind == 6:
            combo = rng.choice(survey_pool)
            rounds.append((uniqueness_survey(*combo), formats.serialize_survey,
                           formats.parse_survey))
        else:
            target = keygen(rng.choice((5, 7, 11)), seed).public
            rounds.append((brute_force_invert(target), formats.serialize_attack,
                           formats.parse_attack))
    for value, serialize, parse in rounds:
        text = serialize(value)
        assert parse(text) == value          # serialize-then-parse
        assert serialize(parse(text)) == text  # parse-then-serialize

    surveys = [formats.serialize_survey(
        uniqueness_survey(11, "balanced", "unordered", workers=w)) for w in (1, 2, 8)]
    assert surveys[0] == surveys[1] == surveys[2]
    target = keygen(13, 5).public
    attacks = [dataclasses.replace(brute_force_invert(target, workers=w), wall_ms=0)
               for w in (1, 2, 8)]
    assert attacks[0] == attacks[1] == attacks[2]
    _passed(10, f"{len(rounds)} randomized artifacts round-trip byte-exact in "
                f"both directions; worker counts 1/2/8 give identical output")
