"""``latt``: command line front end.

Exit codes: 0 success, 1 verification failure, 2 usage, 3 I/O or file
format, 4 validation.  Errors are reported on stderr as one line starting
with ``E<code>:``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import catalog, congruence, constructions, fca, lattice, shapes, wdl
from .errors import CapExceeded, FormatError, LatticeError, ParseError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO, EXIT_INVALID = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --- helpers -----------------------------------------------------------------------


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _load_algebra(path: str):
    text = _read(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: bad JSON: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise FormatError(f"{path}: expected a JSON object")
    return wdl.algebra_from_json_data(data)


def _element(lat: lattice.FiniteLattice, token: str) -> int:
    token = token.strip()
    if token in lat.labels:
        return lat.labels.index(token)
    try:
        x = int(token)
    except ValueError:
        raise LatticeError(f"unknown element {token!r}") from None
    if not 0 <= x < lat.n:
        raise LatticeError(f"element {x} out of range 0..{lat.n - 1}")
    return x


def _blocks_text(lat: lattice.FiniteLattice, theta: congruence.Congruence) -> str:
    names, order = lat.labels, lat.elements_by_label()
    pos = {x: i for i, x in enumerate(order)}
    blocks = sorted((sorted(b, key=pos.get) for b in theta.blocks()), key=lambda b: pos[b[0]])
    return "".join("{" + ",".join(names[x] for x in b) + "}" for b in blocks)


def _table_text(lat: lattice.FiniteLattice, table: Sequence[int]) -> str:
    names = lat.labels
    return " ".join(f"{names[x]}->{names[table[x]]}" for x in lat.elements_by_label())


def _names(lat: lattice.FiniteLattice, elems) -> str:
    pos = {x: i for i, x in enumerate(lat.elements_by_label())}
    return ",".join(lat.labels[x] for x in sorted(elems, key=pos.get))


def _pick(options: list, idx: int | None, what: str):
    if idx is None:
        return None
    if not 0 <= idx < len(options):
        raise LatticeError(f"{what} index {idx} out of range 0..{len(options) - 1}")
    return options[idx]


# --- subcommands ---------------------------------------------------------------------


def cmd_gen(args) -> int:
    lat = constructions.build(args.expr)
    text = lattice.to_json(lat) + "\n"
    if args.out:
        _write(args.out, text)
    if args.dot:
        _write(args.dot, lattice.to_dot(lat))
    if args.out or args.dot:
        print(f"n={lat.n} covers={len(lat.covers())}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_con(args) -> int:
    lat, delta, nabla = _load_algebra(args.file)
    ops: list = []
    if args.wcl:
        delta = _pick(wdl.enumerate_weak_complementations(lat), args.delta, "delta") or delta or wdl.trivial_delta(lat)
        ops = [delta]
    elif args.wdcl:
        nabla = _pick(wdl.enumerate_dual_weak_complementations(lat), args.delta, "nabla") or nabla or wdl.trivial_nabla(lat)
        ops = [nabla]
    elif args.wdl:
        pair = _pick(wdl.enumerate_dicomplementations(lat), args.delta, "pair")
        if pair is not None:
            delta, nabla = pair.delta, pair.nabla
        delta = delta or wdl.trivial_delta(lat)
        nabla = nabla or wdl.trivial_nabla(lat)
        wdl.DicompLattice(lat, delta, nabla)
        ops = [delta, nabla]
    elif args.delta is not None:
        raise UsageError("--delta needs one of --wcl, --wdcl, --wdl")
    for op in ops:
        print(f"{type(op).__name__}: {_table_text(lat, op.table)}")
    con = wdl.con_preserving(lat, *ops)
    if args.fix0 or args.fix1:
        con = congruence.con_filtered(lat, args.fix0, args.fix1, con=con)
    print(f"count: {len(con)}")
    for theta in con:
        print(f"  {_blocks_text(lat, theta)}")
    if args.shape:
        expr = shapes.name_shape(con.order)
        print(f"shape: {shapes.pretty(expr) if expr is not None else 'unnamed'}")
    return EXIT_OK


def cmd_wdc(args) -> int:
    lat, _, _ = _load_algebra(args.file)
    deltas = wdl.enumerate_weak_complementations(lat)
    nablas = wdl.enumerate_dual_weak_complementations(lat)
    pairs = wdl.enumerate_dicomplementations(lat)
    if args.list:
        for kind, ops in (("delta", deltas), ("nabla", nablas)):
            for i, op in enumerate(ops):
                line = f"{kind}[{i}]: {_table_text(lat, op.table)}"
                if args.representable:
                    witness = wdl.is_representable(op)
                    names = "none" if witness is None else _names(lat, witness)
                    line += f"  representable-by: {names}"
                print(line)
        return EXIT_OK
    line = f"delta={len(deltas)} nabla={len(nablas)} pairs={len(pairs)}"
    if args.representable:
        rd = sum(wdl.is_representable(op) is not None for op in deltas)
        rn = sum(wdl.is_representable(op) is not None for op in nablas)
        line += f" representable_delta={rd} representable_nabla={rn}"
    print(line)
    return EXIT_OK


def cmd_fca(args) -> int:
    text = _read(args.file)
    ctx = fca.read_csv(text) if args.file.lower().endswith(".csv") else fca.read_cxt(text)
    if args.algebra:
        alg, concepts = fca.concept_algebra(ctx)
        lat = alg.lattice
    else:
        lat, concepts = fca.concept_lattice(ctx)
        alg = None
    print(f"concepts: {len(concepts)}")
    for i, c in enumerate(concepts):
        objs, attrs = c.labelled(ctx)
        print(f"  {i}: ({{{', '.join(objs)}}}, {{{', '.join(attrs)}}})")
    if alg is not None:
        print(f"delta: {' '.join(map(str, alg.delta.table))}")
        print(f"nabla: {' '.join(map(str, alg.nabla.table))}")
    if args.out:
        out = wdl.algebra_json(lat, alg.delta, alg.nabla) if alg else lattice.to_json(lat)
        _write(args.out, out + "\n")
    return EXIT_OK


def cmd_enum(args) -> int:
    if not 1 <= args.n <= catalog.MAX_N:
        raise CapExceeded(f"--n must lie in 1..{catalog.MAX_N}")
    if args.dump:
        cat = catalog.enumerate_lattices(args.n)
        catalog.save_catalog(cat, args.dump)
        print(f"n={args.n} lattices={cat.count} -> {args.dump}")
    else:
        print(sum(1 for _ in catalog.generate_lattices(args.n)))
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import MAX_N, run_suite

    if not 1 <= args.max_n <= MAX_N[args.suite]:
        raise CapExceeded(f"suite {args.suite} supports --max-n up to {MAX_N[args.suite]}")
    report = run_suite(args.suite, args.max_n)
    for line in report.lines():
        print(line)
    if args.json:
        _write(args.json, report.to_json(indent=2) + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_quot(args) -> int:
    lat, delta, _ = _load_algebra(args.file)
    parts = args.collapse.split(",")
    if len(parts) != 2:
        raise UsageError("--collapse takes two elements separated by a comma")
    a, b = (_element(lat, p) for p in parts)
    if args.wcl:
        delta = _pick(wdl.enumerate_weak_complementations(lat), args.delta, "delta") or delta or wdl.trivial_delta(lat)
        theta = wdl.principal_wcl_congruence(lat, delta, a, b)
    else:
        theta = congruence.principal_congruence(lat, a, b)
    quo, _ = congruence.quotient(lat, theta)
    print(f"classes: {_blocks_text(lat, theta)}")
    print(f"size: {lat.n} -> {quo.n}")
    if args.wcl:
        _, qd = wdl.quotient_wcl(lat, delta, theta)
        print(wdl.algebra_json(quo, qd))
    else:
        print(lattice.to_json(quo))
    return EXIT_OK


# --- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="latt", description="Finite lattices with weak (di)complementations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="build a lattice from an expression such as 'chain:3|chain:4'")
    g.add_argument("expr")
    g.add_argument("--out")
    g.add_argument("--dot")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("con", help="list congruences")
    c.add_argument("file")
    c.add_argument("--fix0", action="store_true", help="0-class must be a singleton")
    c.add_argument("--fix1", action="store_true", help="1-class must be a singleton")
    kind = c.add_mutually_exclusive_group()
    kind.add_argument("--wcl", action="store_true")
    kind.add_argument("--wdcl", action="store_true")
    kind.add_argument("--wdl", action="store_true")
    c.add_argument("--delta", type=int, metavar="IDX", help="index into the enumeration of operations")
    c.add_argument("--shape", action="store_true")
    c.set_defaults(func=cmd_con)

    w = sub.add_parser("wdc", help="weak (dual) complementations of a lattice")
    w.add_argument("file")
    mode = w.add_mutually_exclusive_group()
    mode.add_argument("--list", action="store_true")
    mode.add_argument("--count", action="store_true")
    w.add_argument("--representable", action="store_true")
    w.set_defaults(func=cmd_wdc)

    f = sub.add_parser("fca", help="concept lattice of a .cxt or .csv context")
    f.add_argument("file")
    f.add_argument("--algebra", action="store_true")
    f.add_argument("--out")
    f.set_defaults(func=cmd_fca)

    e = sub.add_parser("enum", help="enumerate lattices up to isomorphism")
    e.add_argument("--n", type=int, required=True)
    emode = e.add_mutually_exclusive_group()
    emode.add_argument("--count", action="store_true")
    emode.add_argument("--dump", metavar="FILE")
    e.set_defaults(func=cmd_enum)

    v = sub.add_parser("verify", help="run an exhaustive verification suite")
    v.add_argument("--suite", required=True, choices=["lat", "wcl", "wdcl", "wdl", "sums", "quotients"])
    v.add_argument("--max-n", type=int, required=True)
    v.add_argument("--json")
    v.add_argument("--deterministic", action=argparse.BooleanOptionalAction, default=True,
                   help="results are ordered identically for any LATT_THREADS (always on)")
    v.set_defaults(func=cmd_verify)

    q = sub.add_parser("quot", help="quotient by a principal congruence")
    q.add_argument("file")
    q.add_argument("--collapse", required=True, metavar="A,B")
    q.add_argument("--wcl", action="store_true")
    q.add_argument("--delta", type=int, metavar="IDX")
    q.set_defaults(func=cmd_quot)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        code, msg = EXIT_USAGE, str(exc)
    except ParseError as exc:
        code, msg = EXIT_USAGE, str(exc)
    except (OSError, FormatError) as exc:
        code, msg = EXIT_IO, str(exc)
    except (LatticeError, KeyError, ValueError, TypeError) as exc:
        code, msg = EXIT_INVALID, str(exc)
    print(f"E{code}: {msg}", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
