"""Command line front end.

Every subcommand builds one JSON-serialisable report; ``--output table``
prints the same data flattened to ``key: value`` lines.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .errors import WittKError
from .homology import expected_homology, homology, iota_check
from .rational import kgroups_rational
from .trunc import build_poset
from .abgroup import cokernel
from .witt import CoefficientRing, PrimeField, WittVector, ghost, is_prime
from .wittfp import kgroups_fp, verschiebung_matrix
from .words import aperiodic_necklaces, necklace_count

SCHEMA = "witt-k/1"


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def _at_least_two(text: str) -> int:
    v = _positive(text)
    if v < 2:
        raise argparse.ArgumentTypeError(f"must be at least 2, got {v}")
    return v


def _prime(text: str) -> int:
    v = _positive(text)
    if not is_prime(v):
        raise argparse.ArgumentTypeError(f"{v} is not prime")
    return v


def _coords(text: str) -> list[str]:
    parts = [t.strip() for t in text.split(",") if t.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("expected comma separated coordinates")
    return parts


def _ring(text: str) -> CoefficientRing:
    try:
        return CoefficientRing.parse(text)
    except (ValueError, WittKError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wittk",
        description="Relative K-groups of truncated non-commutative polynomial rings.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "table"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kgroup", parents=[common], help="K-groups over F_p")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--a", type=_at_least_two, required=True)
    p.add_argument("--q", type=_positive, required=True)
    p.add_argument("--p", type=_prime, required=True)

    p = sub.add_parser("kgroup-rational", parents=[common], help="rational K-groups over Z")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--a", type=_at_least_two, required=True)
    p.add_argument("--q", type=_positive, required=True)

    p = sub.add_parser("homology", parents=[common], help="reduced homology of X_{s,a}")
    p.add_argument("--s", type=_positive, required=True)
    p.add_argument("--a", type=_at_least_two, required=True)

    p = sub.add_parser("witt", parents=[common], help="big Witt vector arithmetic")
    p.add_argument("--op", choices=("add", "sub", "mul", "neg", "ghost"), required=True)
    ring = p.add_mutually_exclusive_group()
    ring.add_argument("--ring", type=_ring, help="Z, Q, Z/m or Fp (default Z)")
    ring.add_argument("--p", type=_prime, help="shorthand for --ring Fp")
    p.add_argument("--x", type=_coords, required=True, help="coordinates at 1..len, comma separated")
    p.add_argument("--y", type=_coords)

    p = sub.add_parser("necklaces", parents=[common], help="aperiodic necklace counts")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--lmax", type=_positive, required=True)
    p.add_argument("--list", action="store_true", help="also list the necklaces")

    p = sub.add_parser("poset", parents=[common], help="components of S_n(a, N)")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--a", type=_positive, required=True)
    p.add_argument("--N", type=_positive, required=True)
    return parser


def _kgroup(args) -> tuple[dict, int]:
    report = kgroups_fp(args.n, args.a, args.q, args.p)
    data = report.to_json()
    if args.n == 1:
        data["classical_cokernel"] = cokernel(
            verschiebung_matrix(args.a, args.q, args.a * args.q, args.p)
        ).to_json()
    return data, 0 if report.crosscheck else 1


def _homology(args) -> dict:
    groups = homology(args.s, args.a)
    expected = expected_homology(args.s, args.a)
    return {
        "params": {"s": args.s, "a": args.a},
        "homology": [{"degree": e, **g.to_json()} for e, g in enumerate(groups)],
        "matches_expected": all(
            g == expected.get(e, g.__class__()) for e, g in enumerate(groups)
        ),
        "iota": iota_check(args.s, args.a).to_json(),
    }


def _witt(args, parser) -> dict:
    ring = PrimeField(args.p) if args.p else (args.ring or CoefficientRing.parse("Z"))
    try:
        x = WittVector.of([ring(_number(c)) for c in args.x], ring)
        if args.op == "ghost":
            g = ghost(x)
            return {"ring": str(ring), "x": [str(c) for c in x.coords],
                    "ghost": [str(g[m]) for m in x.trunc.elements]}
        if args.op == "neg":
            result = -x
        else:
            if args.y is None:
                parser.error(f"argument --y: required for --op {args.op}")
            y = WittVector.of([ring(_number(c)) for c in args.y], ring)
            if len(y.coords) != len(x.coords):
                parser.error("argument --y: must have as many coordinates as --x")
            result = {"add": x + y, "sub": x - y, "mul": x * y}[args.op]
    except (ValueError, ZeroDivisionError) as exc:
        parser.error(f"argument --x/--y: {exc}")
    return {"ring": str(ring), "op": args.op, "result": [str(c) for c in result.coords]}


def _number(text: str) -> Fraction:
    return Fraction(text)


def _necklaces(args) -> dict:
    counts = [len(aperiodic_necklaces(args.n, l)) for l in range(1, args.lmax + 1)]
    data = {
        "params": {"n": args.n, "lmax": args.lmax},
        "counts": counts,
        "mobius_agrees": counts == [necklace_count(args.n, l) for l in range(1, args.lmax + 1)],
    }
    if args.list:
        data["necklaces"] = {
            str(l): [str(w) for w in aperiodic_necklaces(args.n, l)]
            for l in range(1, args.lmax + 1)
        }
    return data


def _flatten(data, prefix: str = "") -> list[tuple[str, str]]:
    rows = []
    if isinstance(data, dict):
        for k, v in data.items():
            rows.extend(_flatten(v, f"{prefix}.{k}" if prefix else str(k)))
    elif isinstance(data, list) and any(isinstance(v, (dict, list)) for v in data):
        for i, v in enumerate(data):
            rows.extend(_flatten(v, f"{prefix}[{i}]"))
    else:
        rows.append((prefix, json.dumps(data)))
    return rows


def render(data: dict, output: str) -> str:
    if output == "json":
        return json.dumps(data)
    rows = _flatten(data)
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    code = 0
    if args.command == "kgroup":
        data, code = _kgroup(args)
    elif args.command == "kgroup-rational":
        data = kgroups_rational(args.n, args.a, args.q).to_json()
    elif args.command == "homology":
        data = _homology(args)
    elif args.command == "witt":
        data = _witt(args, parser)
    elif args.command == "necklaces":
        data = _necklaces(args)
    else:
        data = build_poset(args.n, args.a, args.N).to_json()
    data = {"schema": SCHEMA, "command": args.command, **data}
    sys.stdout.write(render(data, args.output) + "\n")
    if code:
        print("internal error: the matrix and per-necklace computations disagree", file=sys.stderr)
    return code


def main() -> None:
    threads = os.environ.get("WITTK_THREADS", "").strip()
    if threads and not threads.isdigit():
        print(f"WITTK_THREADS must be a non-negative integer, got {threads!r}", file=sys.stderr)
        sys.exit(2)
    sys.exit(run())


if __name__ == "__main__":
    main()
