"""Command-line interface.

Exit codes: 0 success/accept, 1 reject (or an already-used signing key),
2 malformed or unreadable input, 3 attack found no preimage, 4 search space
over the limit, 64 usage error. All output files are written atomically and
are byte-identical for identical arguments and seeds, whatever the worker
count; wall_ms in attack reports is the one measured quantity.
"""

from __future__ import annotations

import argparse
import sys

from . import formats
from .errors import (
    InvalidBitLength,
    InvalidPrime,
    InvariantViolation,
    KeyAlreadyUsed,
    LengthMismatch,
    MalformedFile,
    MalformedKey,
    SearchSpaceTooLarge,
    UnsupportedVersion,
)
from .lamport import lamport_keygen, sign, verify_signature
from .scheme import keygen, verify_proof
from .search import DEFAULT_LIMIT, brute_force_invert, count_search_space, uniqueness_survey

EX_OK = 0
EX_REJECT = 1
EX_MALFORMED = 2
EX_NO_PREIMAGE = 3
EX_TOO_LARGE = 4
EX_USAGE = 64


class _Parser(argparse.ArgumentParser):
    """argparse, but usage problems exit 64 instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _u64(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be in [0, 2**64)")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> _Parser:
    parser = _Parser(prog="rootsplit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    kg = sub.add_parser("keygen", help="sample a key pair for a prime p")
    kg.add_argument("--p", type=int, required=True)
    kg.add_argument("--seed", type=_u64, required=True)
    kg.add_argument("--pub", required=True, metavar="FILE")
    kg.add_argument("--priv", required=True, metavar="FILE")
    kg.set_defaults(func=_cmd_keygen)

    pv = sub.add_parser("prove", help="reveal the secret factor P as a proof file")
    pv.add_argument("--priv", required=True, metavar="FILE")
    pv.add_argument("--out", required=True, metavar="FILE")
    pv.set_defaults(func=_cmd_prove)

    vf = sub.add_parser("verify", help="check a proof against a public key")
    vf.add_argument("--pub", required=True, metavar="FILE")
    vf.add_argument("--proof", required=True, metavar="FILE")
    vf.set_defaults(func=_cmd_verify)

    at = sub.add_parser("attack", help="exhaustively invert a public key")
    at.add_argument("--pub", required=True, metavar="FILE")
    at.add_argument("--limit", type=_positive, default=DEFAULT_LIMIT)
    at.add_argument("--workers", type=_positive, default=1)
    at.add_argument("--out", required=True, metavar="FILE")
    at.set_defaults(func=_cmd_attack)

    sv = sub.add_parser("survey", help="census of factorizations grouped by public key")
    sv.add_argument("--p", type=int, required=True)
    sv.add_argument("--mode", choices=("balanced", "all"), required=True)
    sv.add_argument("--pairing", choices=("ordered", "unordered"), required=True)
    sv.add_argument("--limit", type=_positive, default=DEFAULT_LIMIT)
    sv.add_argument("--workers", type=_positive, default=1)
    sv.add_argument("--out", required=True, metavar="FILE")
    sv.set_defaults(func=_cmd_survey)

    lkg = sub.add_parser("lamport-keygen", help="one-time signature key set")
    lkg.add_argument("--p", type=int, required=True)
    lkg.add_argument("--bits", type=int, required=True)
    lkg.add_argument("--seed", type=_u64, required=True)
    lkg.add_argument("--pub", required=True, metavar="FILE")
    lkg.add_argument("--priv", required=True, metavar="FILE")
    lkg.set_defaults(func=_cmd_lamport_keygen)

    ls = sub.add_parser("lamport-sign", help="sign a bitstring, consuming the key")
    ls.add_argument("--priv", required=True, metavar="FILE")
    ls.add_argument("--msg", required=True, metavar="BITSTRING")
    ls.add_argument("--out", required=True, metavar="FILE")
    ls.set_defaults(func=_cmd_lamport_sign)

    lv = sub.add_parser("lamport-verify", help="check a one-time signature")
    lv.add_argument("--pub", required=True, metavar="FILE")
    lv.add_argument("--msg", required=True, metavar="BITSTRING")
    lv.add_argument("--sig", required=True, metavar="FILE")
    lv.set_defaults(func=_cmd_lamport_verify)

    ct = sub.add_parser("count", help="size of the factorization search space")
    ct.add_argument("--p", type=int, required=True)
    ct.add_argument("--mode", choices=("balanced", "all"), required=True)
    ct.set_defaults(func=_cmd_count)

    return parser


def _cmd_keygen(args) -> int:
    kp = keygen(args.p, args.seed)
    formats.atomic_write(args.pub, formats.serialize_public_key(kp.public))
    formats.atomic_write(args.priv, formats.serialize_keypair(kp))
    return EX_OK


def _cmd_prove(args) -> int:
    kp = formats.parse_keypair(formats.read_text(args.priv))
    proof = formats.Proof(kp.p, kp.P)
    formats.atomic_write(args.out, formats.serialize_proof(proof))
    print(
        "warning: the proof reveals the secret factor P; "
        "anyone who sees it can impersonate this key from now on",
        file=sys.stderr,
    )
    return EX_OK


def _cmd_verify(args) -> int:
    pub = formats.parse_public_key(formats.read_text(args.pub))
    proof = formats.parse_proof(formats.read_text(args.proof))
    if proof.p != pub.p:
        print(f"error: proof is for p={proof.p}, key is for p={pub.p}", file=sys.stderr)
        return EX_MALFORMED
    outcome = verify_proof(pub, proof.P)
    if outcome:
        print("accept")
        return EX_OK
    print(f"reject: check ({outcome.check}): {outcome.reason}", file=sys.stderr)
    return EX_REJECT


def _cmd_attack(args) -> int:
    pub = formats.parse_public_key(formats.read_text(args.pub))
    result = brute_force_invert(pub, limit=args.limit, workers=args.workers)
    formats.atomic_write(args.out, formats.serialize_attack(result))
    if not result.preimages:
        print("no preimage found", file=sys.stderr)
        return EX_NO_PREIMAGE
    print(f"found {len(result.preimages)} preimage(s)")
    return EX_OK


def _cmd_survey(args) -> int:
    report = uniqueness_survey(
        args.p, args.mode, args.pairing, limit=args.limit, workers=args.workers
    )
    formats.atomic_write(args.out, formats.serialize_survey(report))
    collisions = len(report.collision_groups)
    print(f"{len(report.rows)} rows, {collisions} collision group(s)")
    return EX_OK


def _cmd_lamport_keygen(args) -> int:
    grid, keys = lamport_keygen(args.p, args.bits, args.seed)
    formats.atomic_write(args.pub, formats.serialize_lamport_public(keys.p, grid))
    formats.atomic_write(args.priv, formats.serialize_lamport_private(keys))
    return EX_OK


def _cmd_lamport_sign(args) -> int:
    keys = formats.parse_lamport_private(formats.read_text(args.priv))
    signature = sign(keys, args.msg)
    # consume the key on disk before the signature exists anywhere: a crash
    # in between loses one signature, never the one-time property
    formats.atomic_write(args.priv, formats.serialize_lamport_private(keys))
    formats.atomic_write(args.out, formats.serialize_signature(signature))
    print("warning: key set is now used and cannot sign again", file=sys.stderr)
    return EX_OK


def _cmd_lamport_verify(args) -> int:
    p, grid = formats.parse_lamport_public(formats.read_text(args.pub))
    signature = formats.parse_signature(formats.read_text(args.sig))
    if signature.p != p:
        print(f"error: signature is for p={signature.p}, keys are for p={p}", file=sys.stderr)
        return EX_MALFORMED
    outcome = verify_signature(grid, args.msg, signature)
    if outcome:
        print("accept")
        return EX_OK
    print(
        f"reject: bit {outcome.index}: check ({outcome.check}): {outcome.reason}",
        file=sys.stderr,
    )
    return EX_REJECT


def _cmd_count(args) -> int:
    print(count_search_space(args.p, args.mode))
    return EX_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MalformedFile as exc:
        print(f"error: line {exc.line}: {exc.reason}", file=sys.stderr)
        return EX_MALFORMED
    except KeyAlreadyUsed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_REJECT
    except SearchSpaceTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_TOO_LARGE
    except (
        UnsupportedVersion,
        InvariantViolation,
        MalformedKey,
        InvalidPrime,
        InvalidBitLength,
        LengthMismatch,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
