"""JSON-in, JSON-out command line frontend.

Commands: jordan, cycle, vertices, verify, global, hilbert.  The request
document is read from a file argument or standard input; output is a single
deterministic JSON document on standard output.  Exit codes: 0 success,
1 schema violation, 2 domain error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .cycles import cycle_invariants, cycle_report
from .errors import DomainError, ResourceError, SchemaError
from .global_cycles import QuadFieldElement, global_report
from .lattice import HermGram, HermLattice, jordan_split
from .padic import REAL_PLACE, hilbert_symbol, parse_rational
from .ramified import OHElement, RamifiedContext
from .vertices import (
    EnumerationBounds,
    enumerate_vertices,
    poset_dot,
    verify_structure_theorems,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise SchemaError(message)


def _load_document(args) -> dict:
    if args.input and args.input != "-":
        try:
            with open(args.input, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise SchemaError(f"cannot read input: {exc}") from exc
    else:
        text = sys.stdin.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("request document must be a JSON object")
    return doc


def _require_keys(doc: dict, required: set[str], optional: set[str] = frozenset()):
    missing = required - doc.keys()
    if missing:
        raise SchemaError(f"missing fields: {sorted(missing)}")
    unknown = doc.keys() - required - optional
    if unknown:
        raise SchemaError(f"unknown fields: {sorted(unknown)}")


def _parse_oh_entry(obj, ctx: RamifiedContext, where: str) -> OHElement:
    if isinstance(obj, dict):
        unknown = obj.keys() - {"a", "b"}
        if unknown:
            raise SchemaError(f"unknown fields {sorted(unknown)}", location=where)
        a = parse_rational(obj.get("a", 0))
        b = parse_rational(obj.get("b", 0))
        return OHElement(a, b, ctx)
    if isinstance(obj, (int, str)) and not isinstance(obj, bool):
        return OHElement(parse_rational(obj), Fraction(0), ctx)
    raise SchemaError(f"not a ring element: {obj!r}", location=where)


def _parse_oh_matrix(obj, ctx: RamifiedContext, where: str):
    if not isinstance(obj, list) or not obj:
        raise SchemaError("matrix must be a nonempty array of rows", location=where)
    rows = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != len(obj):
            raise SchemaError("matrix must be square", location=f"{where}[{i}]")
        rows.append(
            [_parse_oh_entry(e, ctx, f"{where}[{i}][{j}]") for j, e in enumerate(row)]
        )
    return rows


def _parse_qfe_entry(obj, delta: int, where: str) -> QuadFieldElement:
    if isinstance(obj, dict):
        unknown = obj.keys() - {"x", "y"}
        if unknown:
            raise SchemaError(f"unknown fields {sorted(unknown)}", location=where)
        return QuadFieldElement(
            parse_rational(obj.get("x", 0)), parse_rational(obj.get("y", 0)), delta
        )
    if isinstance(obj, (int, str)) and not isinstance(obj, bool):
        return QuadFieldElement(parse_rational(obj), Fraction(0), delta)
    raise SchemaError(f"not a field element: {obj!r}", location=where)


def _parse_qfe_matrix(obj, delta: int, where: str):
    if not isinstance(obj, list) or not obj:
        raise SchemaError("matrix must be a nonempty array of rows", location=where)
    rows = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != len(obj):
            raise SchemaError("matrix must be square", location=f"{where}[{i}]")
        rows.append(
            [_parse_qfe_entry(e, delta, f"{where}[{i}][{j}]") for j, e in enumerate(row)]
        )
    return rows


def _context(args) -> RamifiedContext:
    if args.p is None:
        raise SchemaError("--p is required")
    delta_sq = parse_rational(args.delta_sq) if args.delta_sq is not None else None
    return RamifiedContext(args.p, parse_rational(args.epsilon), delta_sq)


def _bounds(args) -> EnumerationBounds:
    return EnumerationBounds(
        max_rank=args.max_rank,
        max_scale=args.max_scale,
        max_candidates=args.max_candidates,
    )


def _cmd_jordan(args):
    ctx = _context(args)
    doc = _load_document(args)
    _require_keys(doc, {"gram"})
    G = HermGram(_parse_oh_matrix(doc["gram"], ctx, "gram"), ctx).check_nonsingular()
    return {"blocks": jordan_split(G).to_json()}


def _cmd_cycle(args):
    ctx = _context(args)
    doc = _load_document(args)
    _require_keys(doc, {"matrix"})
    T = HermGram(_parse_oh_matrix(doc["matrix"], ctx, "matrix"), ctx).check_nonsingular()
    if args.raw:
        return cycle_invariants(T).to_json()
    return cycle_report(T, ctx).to_json()


def _cmd_vertices(args):
    ctx = _context(args)
    doc = _load_document(args)
    _require_keys(doc, {"gram"})
    G = HermGram(_parse_oh_matrix(doc["gram"], ctx, "gram"), ctx).check_nonsingular()
    vs = enumerate_vertices(HermLattice.from_gram(G), _bounds(args))
    if args.dot:
        return poset_dot(vs)
    return vs.to_json()


def _cmd_verify(args):
    ctx = _context(args)
    doc = _load_document(args)
    _require_keys(doc, {"gram"})
    G = HermGram(_parse_oh_matrix(doc["gram"], ctx, "gram"), ctx).check_nonsingular()
    return verify_structure_theorems(HermLattice.from_gram(G), _bounds(args)).to_json()


def _cmd_global(args):
    doc = _load_document(args)
    _require_keys(doc, {"delta", "matrix"})
    delta = doc["delta"]
    if not isinstance(delta, int) or isinstance(delta, bool):
        raise SchemaError("delta must be an integer")
    T = _parse_qfe_matrix(doc["matrix"], delta, "matrix")
    return global_report(T, delta, bound=args.factor_bound).to_json()


def _cmd_hilbert(args):
    doc = _load_document(args)
    _require_keys(doc, {"a", "b", "place"})
    place = doc["place"]
    if place != REAL_PLACE and (not isinstance(place, int) or isinstance(place, bool)):
        raise SchemaError('place must be a prime integer or "real"')
    a = parse_rational(doc["a"])
    b = parse_rational(doc["b"])
    return {"symbol": hilbert_symbol(a, b, place)}


def build_parser() -> _Parser:
    parser = _Parser(prog="hermcycles", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, context=False, bounds=False, extra=None):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", nargs="?", help="request file (default: stdin)")
        if context:
            p.add_argument("--p", type=int, default=None, help="odd prime")
            p.add_argument("--epsilon", default="1", help="unit with pi^2 = eps*p")
            p.add_argument(
                "--delta-sq",
                dest="delta_sq",
                default=None,
                help="non-square unit class (default: smallest non-residue)",
            )
        if bounds:
            p.add_argument("--max-rank", type=int, default=3)
            p.add_argument("--max-scale", type=int, default=3)
            p.add_argument("--max-candidates", type=int, default=10_000_000)
        for flag, kwargs in (extra or {}).items():
            p.add_argument(flag, **kwargs)
        p.set_defaults(func=func)
        return p

    add("jordan", _cmd_jordan, "Jordan block data of a Hermitian Gram matrix", context=True)
    add(
        "cycle",
        _cmd_cycle,
        "cycle invariants of a Hermitian matrix",
        context=True,
        extra={"--raw": {"action": "store_true", "help": "input is the pre-scaled Gram"}},
    )
    add(
        "vertices",
        _cmd_vertices,
        "enumerate supporting vertex lattices",
        context=True,
        bounds=True,
        extra={"--dot": {"action": "store_true", "help": "emit the poset as DOT"}},
    )
    add("verify", _cmd_verify, "check structure results against the enumeration", context=True, bounds=True)
    add(
        "global",
        _cmd_global,
        "support analysis over an imaginary quadratic field",
        extra={"--factor-bound": {"type": int, "default": 10**6, "dest": "factor_bound"}},
    )
    add("hilbert", _cmd_hilbert, "quadratic Hilbert symbol at a place")
    return parser


def _emit(payload) -> None:
    if isinstance(payload, str):
        sys.stdout.write(payload + "\n")
    else:
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _emit_error(exc) -> None:
    record = {"error": {"code": exc.code, "message": str(exc)}}
    if getattr(exc, "location", None):
        record["error"]["location"] = exc.location
    sys.stdout.write(json.dumps(record, indent=2, sort_keys=True) + "\n")


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        payload = args.func(args)
    except SchemaError as exc:
        _emit_error(exc)
        return 1
    except DomainError as exc:
        _emit_error(exc)
        return 2
    except ResourceError as exc:
        _emit_error(exc)
        return 3
    _emit(payload)
    return 0


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
