"""Bit-exact text serialization for every artifact the tool reads or writes.

Key-style files are an ASCII header line followed by key=value lines in a
fixed order per role; reports are plain CSV. Integers are canonical decimal
(no sign, no leading zeros), polynomials are comma-separated coefficients
low-to-high with the zero polynomial spelled `0`, and root sets are
comma-separated increasing integers. Lines end with LF and carry no
trailing whitespace, so parse-then-serialize reproduces input files byte
for byte and serialize-then-parse reproduces values exactly.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass

from .errors import (
    InvariantViolation,
    MalformedFile,
    MalformedKey,
    UnsupportedVersion,
)
from .gfpoly import Poly, RootSet, check_prime
from .lamport import LamportKeySet, PublicGrid, Signature, lamport_keygen
from .scheme import KeyPair, PublicKey, verify_proof
from .search import (
    AttackResult,
    CollisionGroup,
    SurveyReport,
    SurveyRow,
    _collision_groups,
    _derive_row_keys,
    _group_ids,
    _key_incidences,
)

HEADER = "rootsplit-artifact"
VERSION = 1

SURVEY_CSV_HEADER = "p,mode,pairing,degP,rootsP,A,groupId,groupSize"
ATTACK_CSV_HEADER = "p,A,rootsP,candidates_tested,pruned,wall_ms"

ROLES = (
    "public",
    "private",
    "proof",
    "lamport-public",
    "lamport-private",
    "signature",
)


@dataclass(frozen=True)
class Proof:
    """The revealed secret factor: the whole proof message is (p, P)."""

    p: int
    P: Poly

    def __post_init__(self):
        check_prime(self.p)
        if self.P.p != self.p:
            raise MalformedKey(f"P has modulus {self.P.p}, proof says p={self.p}")
        if self.P.is_zero():
            raise MalformedKey("revealed factor must be nonzero")


# ---------------------------------------------------------------------------
# scalar and polynomial cells

def _int_text(n: int) -> str:
    return str(int(n))


def _parse_uint(cell: str, line: int, what: str, bound: int | None = None) -> int:
    if not cell or not cell.isdigit() or (cell != "0" and cell[0] == "0"):
        raise MalformedFile(line, f"{what} must be a canonical decimal integer, got {cell!r}")
    value = int(cell)
    if bound is not None and value >= bound:
        raise MalformedFile(line, f"{what} = {value} out of range (< {bound} required)")
    return value


def poly_text(poly: Poly, sep: str = ",") -> str:
    if poly.is_zero():
        return "0"
    return sep.join(str(c) for c in poly.coeffs)


def poly_from_text(cell: str, p: int, line: int, what: str, sep: str = ",") -> Poly:
    if cell == "0":
        return Poly.zero(p)
    parts = cell.split(sep)
    coeffs = [_parse_uint(c, line, f"{what} coefficient", p) for c in parts]
    if coeffs[-1] == 0:
        raise MalformedFile(line, f"{what} has a trailing zero coefficient")
    return Poly(coeffs, p)


def roots_text(roots, sep: str = ",") -> str:
    return sep.join(str(r) for r in roots)


def roots_from_text(cell: str, p: int, line: int, sep: str = ",") -> RootSet:
    parts = cell.split(sep)
    roots = [_parse_uint(c, line, "root", p) for c in parts]
    if any(r < 1 for r in roots):
        raise MalformedFile(line, "roots must be >= 1")
    if roots != sorted(set(roots)):
        raise MalformedFile(line, "roots must be strictly increasing")
    return RootSet(p, tuple(roots))


# ---------------------------------------------------------------------------
# key=value files

def _render(lines: list[tuple[str, str]]) -> str:
    body = [HEADER]
    body.extend(f"{k}={v}" for k, v in lines)
    return "\n".join(body) + "\n"


def _split_lines(text: str) -> list[str]:
    if not text:
        raise MalformedFile(1, "empty file")
    try:
        text.encode("ascii")
    except UnicodeEncodeError:
        raise MalformedFile(1, "file is not ASCII") from None
    if "\r" in text:
        raise MalformedFile(1, "CR line endings are not allowed")
    if not text.endswith("\n"):
        raise MalformedFile(text.count("\n") + 1, "missing final newline")
    lines = text[:-1].split("\n")
    for i, ln in enumerate(lines, start=1):
        if ln != ln.rstrip():
            raise MalformedFile(i, "trailing whitespace")
    return lines


class _KeyReader:
    """Walks key=value lines in the one fixed order each role allows."""

    def __init__(self, text: str, expected_role: str):
        lines = _split_lines(text)
        if lines[0] != HEADER:
            raise MalformedFile(1, f"expected header {HEADER!r}, got {lines[0]!r}")
        self.lines = lines
        self.pos = 1
        version = self.take("version")
        if version != str(VERSION):
            raise UnsupportedVersion(f"unsupported version {version!r}, expected {VERSION}")
        role = self.take("role")
        if role not in ROLES:
            raise MalformedFile(3, f"unknown role {role!r}")
        if role != expected_role:
            raise MalformedFile(3, f"role is {role!r}, expected {expected_role!r}")

    @property
    def line_no(self) -> int:
        return self.pos  # 0-based index == 1-based number of the line just taken

    def take(self, key: str) -> str:
        line_no = self.pos + 1
        if self.pos >= len(self.lines):
            raise MalformedFile(line_no, f"missing line {key}=...")
        ln = self.lines[self.pos]
        eq = ln.find("=")
        if eq < 0:
            raise MalformedFile(line_no, f"expected {key}=..., got {ln!r}")
        k, v = ln[:eq], ln[eq + 1 :]
        if k != key:
            raise MalformedFile(line_no, f"expected key {key!r}, got {k!r}")
        self.pos += 1
        return v

    def finish(self) -> None:
        if self.pos != len(self.lines):
            raise MalformedFile(self.pos + 1, "unexpected extra line")


def _take_prime(reader: _KeyReader) -> int:
    cell = reader.take("p")
    p = _parse_uint(cell, reader.line_no, "p")
    try:
        check_prime(p)
    except Exception as exc:
        raise InvariantViolation(str(exc)) from None
    return p


def serialize_public_key(pub: PublicKey) -> str:
    return _render(
        [
            ("version", _int_text(VERSION)),
            ("role", "public"),
            ("p", _int_text(pub.p)),
            ("A", poly_text(pub.A)),
        ]
    )


def parse_public_key(text: str) -> PublicKey:
    r = _KeyReader(text, "public")
    p = _take_prime(r)
    a = poly_from_text(r.take("A"), p, r.line_no, "A")
    r.finish()
    try:
        return PublicKey(p, a)
    except MalformedKey as exc:
        raise InvariantViolation(str(exc)) from None


def serialize_keypair(kp: KeyPair) -> str:
    return _render(
        [
            ("version", _int_text(VERSION)),
            ("role", "private"),
            ("p", _int_text(kp.p)),
            ("seed", _int_text(kp.seed)),
            ("rootsP", roots_text(kp.rootsP.roots)),
            ("A", poly_text(kp.public.A)),
            ("B", poly_text(kp.B)),
        ]
    )


def parse_keypair(text: str) -> KeyPair:
    r = _KeyReader(text, "private")
    p = _take_prime(r)
    seed = _parse_uint(r.take("seed"), r.line_no, "seed", 1 << 64)
    roots = roots_from_text(r.take("rootsP"), p, r.line_no)
    a = poly_from_text(r.take("A"), p, r.line_no, "A")
    b = poly_from_text(r.take("B"), p, r.line_no, "B")
    r.finish()
    if len(roots) != (p - 1) // 2:
        raise InvariantViolation(
            f"rootsP has {len(roots)} roots, a balanced split needs {(p - 1) // 2}"
        )
    try:
        pub = PublicKey(p, a)
    except MalformedKey as exc:
        raise InvariantViolation(str(exc)) from None
    poly_p = roots.polynomial()
    poly_q = roots.complement().polynomial()
    identity = pub.A * poly_p + b * poly_q
    if not identity.is_one():
        raise InvariantViolation("A*P + B*Q != 1 for the stored key material")
    if b.degree >= poly_p.degree:
        raise InvariantViolation(f"deg B = {b.degree} not below deg P = {poly_p.degree}")
    return KeyPair(public=pub, P=poly_p, rootsP=roots, B=b, seed=seed)


def serialize_proof(proof: Proof) -> str:
    return _render(
        [
            ("version", _int_text(VERSION)),
            ("role", "proof"),
            ("p", _int_text(proof.p)),
            ("P", poly_text(proof.P)),
        ]
    )


def parse_proof(text: str) -> Proof:
    r = _KeyReader(text, "proof")
    p = _take_prime(r)
    poly = poly_from_text(r.take("P"), p, r.line_no, "P")
    r.finish()
    try:
        return Proof(p, poly)
    except MalformedKey as exc:
        raise InvariantViolation(str(exc)) from None


def _sub_key(i: int, b: int) -> str:
    return f"A{i}_{b}"


def serialize_lamport_public(p: int, grid: PublicGrid) -> str:
    lines = [
        ("version", _int_text(VERSION)),
        ("role", "lamport-public"),
        ("p", _int_text(p)),
        ("bits", _int_text(len(grid))),
    ]
    for i, (k0, k1) in enumerate(grid):
        lines.append((_sub_key(i, 0), poly_text(k0.A)))
        lines.append((_sub_key(i, 1), poly_text(k1.A)))
    return _render(lines)


def parse_lamport_public(text: str) -> tuple[int, PublicGrid]:
    r = _KeyReader(text, "lamport-public")
    p = _take_prime(r)
    bits = _parse_uint(r.take("bits"), r.line_no, "bits")
    if bits < 1:
        raise InvariantViolation(f"bits must be >= 1, got {bits}")
    grid = []
    for i in range(bits):
        pair = []
        for b in (0, 1):
            a = poly_from_text(r.take(_sub_key(i, b)), p, r.line_no, _sub_key(i, b))
            try:
                pair.append(PublicKey(p, a))
            except MalformedKey as exc:
                raise InvariantViolation(f"{_sub_key(i, b)}: {exc}") from None
        grid.append((pair[0], pair[1]))
    r.finish()
    return p, tuple(grid)


def serialize_lamport_private(keys: LamportKeySet) -> str:
    return _render(
        [
            ("version", _int_text(VERSION)),
            ("role", "lamport-private"),
            ("p", _int_text(keys.p)),
            ("bits", _int_text(keys.bits)),
            ("seed", _int_text(keys.seed)),
            ("used", "1" if keys.used else "0"),
        ]
    )


def parse_lamport_private(text: str) -> LamportKeySet:
    """Private key sets are stored as (p, bits, seed, used); the sub-keys
    re-derive deterministically from the seed schedule on every parse."""
    r = _KeyReader(text, "lamport-private")
    p = _take_prime(r)
    bits = _parse_uint(r.take("bits"), r.line_no, "bits")
    seed = _parse_uint(r.take("seed"), r.line_no, "seed", 1 << 64)
    used_cell = r.take("used")
    used_line = r.line_no
    r.finish()
    if used_cell not in ("0", "1"):
        raise MalformedFile(used_line, f"used must be 0 or 1, got {used_cell!r}")
    if bits < 1:
        raise InvariantViolation(f"bits must be >= 1, got {bits}")
    _, keys = lamport_keygen(p, bits, seed)
    keys.used = used_cell == "1"
    return keys


def serialize_signature(sig: Signature) -> str:
    lines = [
        ("version", _int_text(VERSION)),
        ("role", "signature"),
        ("p", _int_text(sig.p)),
        ("bits", _int_text(sig.bits)),
        ("msg", sig.message),
    ]
    for i, poly in enumerate(sig.revealed):
        lines.append((f"P{i}", poly_text(poly)))
    return _render(lines)


def parse_signature(text: str) -> Signature:
    r = _KeyReader(text, "signature")
    p = _take_prime(r)
    bits = _parse_uint(r.take("bits"), r.line_no, "bits")
    msg = r.take("msg")
    msg_line = r.line_no
    if bits < 1:
        raise InvariantViolation(f"bits must be >= 1, got {bits}")
    if len(msg) != bits or any(c not in "01" for c in msg):
        raise MalformedFile(msg_line, f"msg must be a {bits}-character bitstring")
    half = (p - 1) // 2
    revealed = []
    for i in range(bits):
        poly = poly_from_text(r.take(f"P{i}"), p, r.line_no, f"P{i}")
        if poly.degree != half or not poly.is_monic():
            raise InvariantViolation(
                f"P{i} must be monic of degree {half}, got {poly!r}"
            )
        revealed.append(poly)
    r.finish()
    return Signature(p=p, message=msg, revealed=tuple(revealed))


# ---------------------------------------------------------------------------
# CSV reports

def serialize_survey(report: SurveyReport) -> str:
    lines = [SURVEY_CSV_HEADER]
    for row in report.rows:
        lines.append(
            ",".join(
                (
                    str(report.p),
                    report.mode,
                    report.pairing,
                    str(row.degP),
                    roots_text(row.rootsP, sep=";"),
                    ";".join(str(c) for c in row.A),
                    str(row.groupId),
                    str(row.groupSize),
                )
            )
        )
    return "\n".join(lines) + "\n"


def parse_survey(text: str) -> SurveyReport:
    lines = _split_lines(text)
    if lines[0] != SURVEY_CSV_HEADER:
        raise MalformedFile(1, f"expected header {SURVEY_CSV_HEADER!r}")
    if len(lines) < 2:
        raise MalformedFile(1, "survey has no rows")
    p = mode = pairing = None
    raw = []
    for no, ln in enumerate(lines[1:], start=2):
        cells = ln.split(",")
        if len(cells) != 8:
            raise MalformedFile(no, f"expected 8 columns, got {len(cells)}")
        row_p = _parse_uint(cells[0], no, "p")
        if p is None:
            p, mode, pairing = row_p, cells[1], cells[2]
            if mode not in ("balanced", "all"):
                raise MalformedFile(no, f"unknown mode {mode!r}")
            if pairing not in ("ordered", "unordered"):
                raise MalformedFile(no, f"unknown pairing {pairing!r}")
            try:
                check_prime(p)
            except Exception as exc:
                raise InvariantViolation(str(exc)) from None
        elif (row_p, cells[1], cells[2]) != (p, mode, pairing):
            raise MalformedFile(no, "p, mode, and pairing must match across rows")
        deg = _parse_uint(cells[3], no, "degP")
        roots = roots_from_text(cells[4], p, no, sep=";")
        if deg != len(roots):
            raise MalformedFile(no, f"degP = {deg} but rootsP lists {len(roots)} roots")
        a = poly_from_text(cells[5], p, no, "A", sep=";")
        if a.is_zero():
            raise MalformedFile(no, "A cannot be the zero polynomial")
        gid = _parse_uint(cells[6], no, "groupId")
        gsize = _parse_uint(cells[7], no, "groupSize")
        raw.append((roots.roots, a.coeffs, gid, gsize, no))
    prev = None
    for roots, _, _, _, no in raw:
        if prev is not None and not prev < roots:
            raise MalformedFile(no, "rows must be in lexicographic rootsP order")
        prev = roots
    triples = []
    for roots, a, _, _, _ in raw:
        b = _derive_row_keys(p, roots)[1] if pairing == "unordered" else None
        triples.append((roots, a, b))
    incidence = _key_incidences(triples, pairing)
    ids = _group_ids(triples, pairing)
    rows = []
    for (roots, a, gid, gsize, no), (_, _, b) in zip(raw, triples):
        if gid != ids[a] or gsize != len(incidence[a]):
            raise InvariantViolation(
                f"line {no}: stored group {gid}/{gsize} does not match "
                f"re-derived {ids[a]}/{len(incidence[a])}"
            )
        rows.append(
            SurveyRow(rootsP=roots, degP=len(roots), A=a, groupId=gid, groupSize=gsize, B=b)
        )
    return SurveyReport(
        p=p,
        mode=mode,
        pairing=pairing,
        rows=tuple(rows),
        collision_groups=_collision_groups(triples, pairing),
    )


def serialize_attack(result: AttackResult) -> str:
    lines = [ATTACK_CSV_HEADER]
    a_cell = ";".join(str(c) for c in result.target.A.coeffs)
    tail = f"{result.candidates_tested},{result.pruned},{result.wall_ms}"
    if result.preimages:
        for roots, _ in result.preimages:
            lines.append(
                f"{result.p},{a_cell},{roots_text(roots.roots, sep=';')},{tail}"
            )
    else:
        # single marker row so the counters survive even with no preimages
        lines.append(f"{result.p},{a_cell},,{tail}")
    return "\n".join(lines) + "\n"


def parse_attack(text: str) -> AttackResult:
    lines = _split_lines(text)
    if lines[0] != ATTACK_CSV_HEADER:
        raise MalformedFile(1, f"expected header {ATTACK_CSV_HEADER!r}")
    if len(lines) < 2:
        raise MalformedFile(1, "attack report has no rows")
    target = None
    tail = None
    preimages = []
    prev = None
    for no, ln in enumerate(lines[1:], start=2):
        cells = ln.split(",")
        if len(cells) != 6:
            raise MalformedFile(no, f"expected 6 columns, got {len(cells)}")
        p = _parse_uint(cells[0], no, "p")
        if target is None:
            a = poly_from_text(cells[1], p, no, "A", sep=";")
            try:
                check_prime(p)
                target = PublicKey(p, a)
            except Exception as exc:
                raise InvariantViolation(str(exc)) from None
            tested = _parse_uint(cells[3], no, "candidates_tested")
            pruned = _parse_uint(cells[4], no, "pruned")
            wall = _parse_uint(cells[5], no, "wall_ms")
            tail = (cells[0], cells[1], cells[3], cells[4], cells[5])
        elif (cells[0], cells[1], cells[3], cells[4], cells[5]) != tail:
            raise MalformedFile(no, "target and counters must match across rows")
        if cells[2] == "":
            if len(lines) != 2:
                raise MalformedFile(no, "empty rootsP marker row must be the only row")
            continue
        roots = roots_from_text(cells[2], target.p, no, sep=";")
        if len(roots) != (target.p - 1) // 2:
            raise InvariantViolation(f"line {no}: preimage is not a balanced split")
        if prev is not None and not prev < roots.roots:
            raise MalformedFile(no, "preimages must be in lexicographic order")
        prev = roots.roots
        poly = roots.polynomial()
        if not verify_proof(target, poly):
            raise InvariantViolation(f"line {no}: stored preimage fails verification")
        preimages.append((roots, poly))
    return AttackResult(
        target=target,
        preimages=tuple(preimages),
        candidates_tested=tested,
        pruned=pruned,
        wall_ms=wall,
    )


# ---------------------------------------------------------------------------
# files on disk

def atomic_write(path: str, text: str) -> None:
    """Write via a temporary file and rename, so a crash never leaves a
    partial or stale-but-half-updated artifact behind."""
    data = text.encode("ascii")
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".rootsplit-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def read_text(path: str) -> str:
    with open(path, "rb") as fh:
        data = fh.read()
    try:
        return data.decode("ascii")
    except UnicodeDecodeError:
        raise MalformedFile(1, "file is not ASCII") from None
