"""Batch front end: ``python -m cornerblowup <command> ...`` emits one JSON report.

Exit status is 0 on success, 1 when a verification finds a counterexample,
and 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import georgescu as G
from .compactify import PolyCurve
from .jsonio import SCHEMA, dumps
from .linalg import Subspace
from .nbody import NBodySpec, generators, nbody_semilattice
from .semilattice import AdmissibleOrdering, Semilattice, admissible_orderings, close, reduce


class InputError(Exception):
    pass


def _load_json(path: str):
    p = Path(path)
    if not p.exists():
        raise InputError(f"{path}: no such file")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None


def _lattice_from(obj) -> Semilattice:
    """Accept {"nbody": {...}}, {"ambient", "generators"} or {"ambient", "members"}."""
    try:
        if "nbody" in obj:
            return nbody_semilattice(NBodySpec(int(obj["nbody"]["N"]), int(obj["nbody"]["d"])))
        n = int(obj["ambient"])
        subs = [Subspace.span(m.get("basis", []), n) for m in obj.get("generators", obj.get("members", []))]
        return close([s for s in subs if not s.is_zero], n)
    except InputError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"bad semilattice description: {e}") from None


def _lattice(args) -> Semilattice:
    if getattr(args, "nbody", None):
        try:
            return nbody_semilattice(NBodySpec.parse(args.nbody))
        except (KeyError, ValueError) as e:
            raise InputError(f"bad --nbody value {args.nbody!r}: {e}") from None
    path = getattr(args, "lattice", None) or getattr(args, "input", None)
    if not path:
        raise InputError("give a semilattice with --in/--lattice or --nbody")
    return _lattice_from(_load_json(path))


def _curves(path: str) -> list[PolyCurve]:
    obj = _load_json(path)
    items = obj if isinstance(obj, list) else obj.get("curves", [obj])
    try:
        return [PolyCurve.from_json(c) for c in items]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"{path}: bad curve: {e}") from None


def _config(args) -> dict:
    cfg = {"command": args.command, "seed": args.seed, "tol": args.tol}
    for key in ("samples", "orderings", "limit", "centre"):
        if getattr(args, key, None) is not None:
            cfg[key] = getattr(args, key)
    for key in ("input", "lattice", "curve", "nbody"):
        if getattr(args, key, None):
            cfg[key] = getattr(args, key)
    return cfg


def _sampled_curves(args, f: Semilattice, rng) -> list[PolyCurve]:
    if getattr(args, "curve", None):
        return _curves(args.curve)
    return [G.random_curve(f, rng) for _ in range(args.samples)]


def cmd_close(args, rng):
    f = _lattice(args)
    return {"semilattice": f.to_json(), "size": len(f)}, 0


def cmd_nbody(args, rng):
    spec = NBodySpec.parse(args.nbody) if args.nbody else None
    if spec is None:
        raise InputError("nbody needs --nbody N=?,d=?")
    f = nbody_semilattice(spec)
    return {
        "generators": [g.to_json() for g in generators(spec)],
        "semilattice": f.to_json(),
        "size": len(f),
    }, 0


def cmd_orderings(args, rng):
    f = _lattice(args)
    os_ = admissible_orderings(f, args.limit)
    return {"semilattice": f.to_json(), "orderings": [o.to_json(f) for o in os_]}, 0


def cmd_reduce(args, rng):
    f = _lattice(args)
    if args.centre is None:
        raise InputError("reduce needs --centre INDEX")
    if not 0 < args.centre < len(f):
        raise InputError(f"centre index {args.centre} out of range")
    p = f.members[args.centre]
    try:
        fam = reduce(f, p)
    except ValueError as e:
        raise InputError(str(e)) from None
    return {
        "semilattice": f.to_json(),
        "centre": args.centre,
        "size_before": len(f),
        "size_after": len(fam),
        "tags": [{"member": f.index(q), "tag": t.value} for q, _, t in fam.tags],
    }, 0


def cmd_limit(args, rng):
    f = _lattice(args)
    if not args.curve:
        raise InputError("limit needs --curve FILE")
    out = []
    for c in _curves(args.curve):
        if c.ambient != f.ambient:
            raise InputError("curve and semilattice have different ambient dimensions")
        pt = G.curve_limit_tuple(c, f)
        out.append({
            "curve": c.to_json(),
            "point": pt.to_json(),
            "signature": G.signature(pt).to_json(f),
            "violations": pt.violations(args.tol),
        })
    status = 1 if any(o["violations"] for o in out) else 0
    return {"semilattice": f.to_json(), "limits": out}, status


def cmd_verify_order(args, rng):
    f = _lattice(args)
    curves = _sampled_curves(args, f, rng)
    orderings = G.sample_orderings(f, rng, args.orderings)
    rep = G.verify_order_independence(f, curves, orderings=orderings, tol=args.tol)
    return {"report": rep.to_json(), "curves_checked": len(curves)}, 0 if rep.ok else 1


def cmd_verify_injective(args, rng):
    f = _lattice(args)
    curves = _sampled_curves(args, f, rng)
    rep = G.verify_injectivity(f, curves, tol=args.tol)
    return {"report": rep.to_json(), "curves_checked": len(curves)}, 0 if rep.ok else 1


COMMANDS = {
    "close": cmd_close,
    "orderings": cmd_orderings,
    "reduce": cmd_reduce,
    "limit": cmd_limit,
    "signature": cmd_limit,
    "verify-order": cmd_verify_order,
    "verify-injective": cmd_verify_injective,
    "nbody": cmd_nbody,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="input", help="semilattice JSON file")
    common.add_argument("--lattice", help="semilattice JSON file (alias of --in)")
    common.add_argument("--nbody", help="use the N-body semilattice, e.g. N=3,d=1")
    common.add_argument("--curve", help="curve JSON file (one curve, a list, or {'curves': [...]})")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", "--curves", dest="samples", type=int, default=100)
    common.add_argument("--orderings", type=int, default=24, help="max admissible orderings to compare")
    common.add_argument("--limit", type=int, default=24, help="max orderings to list")
    common.add_argument("--centre", type=int, help="member index to blow up")
    common.add_argument("--tol", type=float, default=G.TUPLE_TOL)
    parser = argparse.ArgumentParser(prog="cornerblowup", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if not -(2**63) <= args.seed < 2**64:
        print("error: seed must fit in 64 bits", file=sys.stderr)
        return 2
    if not args.tol >= 0:
        print("error: tolerance must be non-negative", file=sys.stderr)
        return 2
    if args.samples < 0 or args.orderings < 1 or args.limit < 1:
        print("error: counts must be positive", file=sys.stderr)
        return 2
    rng = np.random.default_rng(args.seed % 2**64)
    try:
        body, status = COMMANDS[args.command](args, rng)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    report = {"schema": SCHEMA, "config": _config(args), **body}
    text = dumps(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return status


def main() -> None:
    sys.exit(run())
