"""Command line front end: ``python3 -m tropical_paving <command> ...``.

Exit status: 0 success, 1 usage error, 2 validation failure, 3 result
differs from the expected one, 4 resource limit exceeded.

Ideals are given by a file (``-`` for stdin) or an inline literal:
``lattice2:2Z``, ``lattice2:rows=2,0;0,2``, ``mpower:2:0..5`` (or
``mpower:2:0,1,3``), ``uniform:<n>:<d>``, ``remark:<d>``, ``nonpappus``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import config, textio
from .errors import ResourceLimitError, ValidationError
from .ideals import (
    TropicalIdeal,
    binomial_lattice,
    circuits_in_window,
    contains,
    degree2_from_lattice,
    extend_matroid,
    m_s_ideal,
    remark_example,
    restrict_matroid,
    restrict_vars,
    uniform_ideal,
    verify_degree_on_window,
)
from .lattices import IntegerLattice, hnf, member, parse_lattice_spec, snf_quotient
from .matroids import FiniteMatroid, non_pappus
from .partitions import Window, difference_counts, is_d_sparse
from .realizability import prop46_experiment, search_degree2_realization
from .fields import parse_field
from .verification import verify_window_suite

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_MISMATCH, EXIT_RESOURCE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# input helpers


def _read_source(src: str | None) -> str:
    if src is None or src == "-":
        return sys.stdin.read()
    with open(src, encoding="utf-8") as fh:
        return fh.read()


def parse_range(text: str) -> list[int]:
    """``0..5`` (inclusive) or ``0,1,3``."""
    if ".." in text:
        a, b = text.split("..", 1)
        return list(range(int(a), int(b) + 1))
    return [int(x) for x in text.split(",") if x.strip()]


def nonpappus_points() -> dict:
    return {str(i): (2 ** (i - 1),) for i in range(1, 10)}


def nonpappus_on_powers() -> FiniteMatroid:
    M = non_pappus()
    lab = nonpappus_points()
    return FiniteMatroid(lab.values(), [[lab[x] for x in C] for C in M.circuits])


def parse_ideal(spec: str | None) -> TropicalIdeal:
    if spec is not None and not os.path.exists(spec) and spec != "-":
        head, _, rest = spec.partition(":")
        try:
            if head == "lattice2":
                return degree2_from_lattice(parse_lattice_spec(rest))
            if head == "mpower":
                m, s = rest.split(":", 1)
                return m_s_ideal(int(m), parse_range(s))
            if head == "uniform":
                n, d = rest.split(":", 1)
                return uniform_ideal(int(n), int(d))
            if head == "remark":
                return remark_example(int(rest) if rest else 3)
            if head == "nonpappus":
                return extend_matroid(nonpappus_on_powers(), {p: p for p in nonpappus_points().values()})
        except ValueError as exc:
            if isinstance(exc, ValidationError):
                raise
            raise UsageError(f"bad ideal literal {spec!r}: {exc}") from None
        raise UsageError(f"{spec!r} is neither a file nor an ideal literal")
    return textio.loads(_read_source(spec), expect="ideal")


def parse_lattice(spec: str | None, rows: str | None = None) -> IntegerLattice:
    if rows is not None:
        return parse_lattice_spec("rows=" + rows)
    if spec is not None and not os.path.exists(spec) and spec != "-":
        try:
            return parse_lattice_spec(spec)
        except ValidationError:
            raise UsageError(f"{spec!r} is neither a file nor a lattice literal") from None
    return textio.loads(_read_source(spec), expect="lattice")


def parse_vector(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.replace(",", " ").split())


def parse_window(box: Sequence[str] | None, points: str | None, n: int):
    if points is not None:
        return textio.parse_points(points, n)
    if box is None:
        raise UsageError("give --box LO HI or --points")
    lo, hi = parse_vector(box[0]), parse_vector(box[1])
    if len(lo) == 1 and n > 1:
        lo, hi = lo * n, hi * n
    if len(lo) != n or len(hi) != n:
        raise UsageError(f"window corners must have {n} coordinates")
    return Window(lo, hi)


def fmt_point(p) -> str:
    return ",".join(str(x) for x in p)


def fmt_support(S) -> str:
    return "; ".join(fmt_point(p) for p in S)


# ---------------------------------------------------------------------------
# output


class Output:
    def __init__(self, args):
        self.json = args.json
        self.path = args.output
        self.chunks: list[str] = []

    def text(self, s: str) -> None:
        self.chunks.append(s if s.endswith("\n") else s + "\n")

    def data(self, obj) -> None:
        self.chunks.append(json.dumps(obj, sort_keys=True) + "\n")

    def emit(self, text_lines, obj) -> None:
        if self.json:
            self.data(obj)
        else:
            for line in text_lines:
                self.text(line)

    def flush(self) -> None:
        out = "".join(self.chunks)
        if self.path:
            with open(self.path, "w", encoding="utf-8") as fh:
                fh.write(out)
        else:
            sys.stdout.write(out)


# ---------------------------------------------------------------------------
# commands


def cmd_hnf(args, out: Output) -> int:
    L = parse_lattice(args.input, args.rows)
    out.emit([textio.write_lattice(L)], {"n": L.ambient_dim, "rank": L.rank, "basis": [list(r) for r in L.basis]})
    return EXIT_OK


def cmd_snf(args, out: Output) -> int:
    L = parse_lattice(args.input, args.rows)
    Q = snf_quotient(L)
    order = Q.order()
    out.emit(
        [
            f"group: {Q}",
            "invariant factors: " + (" ".join(map(str, Q.invariant_factors)) or "none"),
            f"free rank: {Q.free_rank}",
            f"order: {order if order is not None else 'infinite'}",
        ],
        {"invariant_factors": list(Q.invariant_factors), "free_rank": Q.free_rank, "order": order},
    )
    return EXIT_OK


def cmd_check_gens(args, out: Output) -> int:
    P = textio.loads(_read_source(args.input), expect="dpartition")
    out.emit(
        [f"valid: Z^{P.ambient_dim}/{P.group.lattice}, d = {P.d}, {len(P.blocks)} generating block(s)"],
        {"valid": True, "n": P.ambient_dim, "d": P.d, "blocks": len(P.blocks)},
    )
    return EXIT_OK


def cmd_sparse(args, out: Output) -> int:
    pts = textio.parse_points(args.points)
    ok = is_d_sparse(pts, args.d)
    witness = None
    if not ok:
        counts = difference_counts(pts)
        u = min(v for v, c in counts.items() if c >= args.d)
        witness = {"shift": list(u), "overlap": counts[u]}
    lines = [str(ok).lower()]
    if witness:
        lines.append(f"shift {fmt_point(witness['shift'])} overlaps in {witness['overlap']} points")
    out.emit(lines, {"sparse": ok, "witness": witness})
    return EXIT_OK


def cmd_member(args, out: Output) -> int:
    if args.lattice is not None:
        if args.vector is None:
            raise UsageError("--lattice needs --vector")
        ok = member(parse_lattice(args.lattice), parse_vector(args.vector))
    else:
        if args.support is None:
            raise UsageError("give --support (with --ideal) or --vector (with --lattice)")
        I = parse_ideal(args.ideal)
        ok = contains(I, textio.parse_points(args.support, I.n))
    out.emit([str(ok).lower()], {"member": ok})
    return EXIT_OK


def cmd_circuits(args, out: Output) -> int:
    I = parse_ideal(args.ideal)
    W = parse_window(args.box, args.points, I.n)
    C = circuits_in_window(I, W, max_size=args.max_size)
    out.emit([f"circuits {len(C)}"] + [fmt_support(c) for c in C], {"circuits": [[list(p) for p in c] for c in C]})
    return EXIT_OK


def cmd_degree(args, out: Output) -> int:
    I = parse_ideal(args.ideal)
    deg = I.degree()
    result = {"degree": deg}
    lines = [str(deg)]
    status = EXIT_OK
    if args.box is not None or args.points is not None:
        W = parse_window(args.box, args.points, I.n)
        ok = verify_degree_on_window(I, W)
        result["verified"] = ok
        lines.append("verified on window" if ok else "window rank differs from degree")
        status = EXIT_OK if ok else EXIT_MISMATCH
    out.emit(lines, result)
    return status


def cmd_restrict_window(args, out: Output) -> int:
    I = parse_ideal(args.ideal)
    expected = None
    if args.expect is not None:
        expected = textio.loads(_read_source(args.expect), expect="matroid")
    if args.points is not None:
        ground = textio.parse_points(args.points, I.n)
    elif expected is not None:
        ground = list(expected.ground)
        if any(not isinstance(x, tuple) or len(x) != I.n for x in ground):
            raise ValidationError("expected matroid must be labeled by points of Z^n")
        if args.box is not None:
            W = parse_window(args.box, None, I.n)
            outside = [x for x in ground if x not in W]
            if outside:
                raise ValidationError("expected ground set leaves the window", witness=outside)
    else:
        ground = parse_window(args.box, None, I.n)
    M = restrict_matroid(I, ground)
    if expected is None:
        out.emit([textio.write_matroid(M)], {"ground": [list(x) for x in M.ground], "rank": M.rank,
                                             "circuits": [[list(x) for x in sorted(C)] for C in M.circuits]})
        return EXIT_OK
    equal = M == expected
    out.emit(
        [textio.write_matroid(M), "equal" if equal else "differ"],
        {"equal": equal, "rank": M.rank, "circuits": len(M.circuits), "expected_circuits": len(expected.circuits)},
    )
    return EXIT_OK if equal else EXIT_MISMATCH


def cmd_restrict_vars(args, out: Output) -> int:
    I = parse_ideal(args.ideal)
    J = restrict_vars(I, parse_range(args.axes))
    out.emit([textio.write_ideal(J)], {"kind": J.kind, "n": J.n, "degree": J.degree(),
                                       "binomial_lattice": [list(r) for r in binomial_lattice(J).basis]})
    return EXIT_OK


def cmd_extend_matroid(args, out: Output) -> int:
    M = textio.loads(_read_source(args.input), expect="matroid")
    if args.embed is not None:
        pts = textio.parse_points(args.embed)
        if len(pts) != len(M.ground):
            raise ValidationError(f"--embed lists {len(pts)} points for {len(M.ground)} labels")
        emb = dict(zip(M.ground, pts))
    elif all(isinstance(x, tuple) for x in M.ground):
        emb = {x: x for x in M.ground}
    else:
        raise UsageError("token-labeled matroid needs --embed")
    I = extend_matroid(M, emb)
    out.emit([textio.write_ideal(I)], {"kind": I.kind, "n": I.n, "degree": I.degree(), "blocks": len(I.partition.blocks)})
    return EXIT_OK


def cmd_verify_window(args, out: Output) -> int:
    I = parse_ideal(args.ideal)
    W = parse_window(args.box, args.points, I.n)
    res = verify_window_suite(I, W, seed=args.seed)
    out.emit([I.describe()] + res.lines(), res.to_json())
    return EXIT_OK if res.passed else EXIT_INVALID


def cmd_realize_search(args, out: Output) -> int:
    target = parse_lattice(args.target)
    F = parse_field(args.field)
    rep = search_degree2_realization(target, F)
    lines = rep.lines()
    if args.show is not None:
        lines = lines[: 1 + args.show]
    out.emit(lines, rep.to_json(args.show))
    if args.expect is not None:
        want = args.expect == "some"
        return EXIT_OK if (rep.count > 0) == want else EXIT_MISMATCH
    return EXIT_OK


def cmd_prop46(args, out: Output) -> int:
    fields = [int(x) for x in args.fields.split(",")] if args.fields else None
    rep = prop46_experiment(fields) if fields else prop46_experiment()
    lines = [f"lattice {rep['lattice']}"]
    for name, r in rep["restrictions"].items():
        lines.append(f"restriction to axes {r['axes']}: {r['lattice']} ({'as expected' if r['ok'] else 'UNEXPECTED'})")
    for r in rep["searches"]:
        exp = r["expected_witnesses"]
        exp_s = "n/a" if exp is None else ("some" if exp else "none")
        lines.append(
            f"{r['target']:<10} {r['field']:<6} witnesses {r['witness_count']:<5} expected {exp_s:<4} "
            f"{'ok' if r['match'] else 'MISMATCH'}"
        )
    lines.append("fields covered: " + ", ".join(rep["fields_covered"]))
    lines.append(rep["conclusion"])
    out.emit(lines, rep)
    return EXIT_OK if rep["all_match"] else EXIT_MISMATCH


def cmd_example(args, out: Output) -> int:
    name = args.name
    if name == "non-pappus":
        M = non_pappus() if args.tokens else nonpappus_on_powers()
        out.emit([textio.write_matroid(M)], {"ground": [x if isinstance(x, str) else list(x) for x in M.ground],
                                             "rank": M.rank, "circuits": len(M.circuits)})
        return EXIT_OK
    if name == "m-power":
        I = m_s_ideal(args.m, parse_range(args.s))
    elif name == "remark-d3":
        I = remark_example(args.d if args.d is not None else 3)
    elif name == "lattice-deg2":
        I = degree2_from_lattice(parse_lattice_spec(args.lattice))
    elif name == "uniform":
        I = uniform_ideal(args.n, args.d if args.d is not None else 2)
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown example {name!r}")
    out.emit([textio.write_ideal(I)], {"kind": I.kind, "n": I.n, "degree": I.degree(), "text": textio.write_ideal(I)})
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks (default 0)")
    common.add_argument("--max-points", type=int, help="largest window to materialize")
    common.add_argument("--max-scan", type=int, help="largest circuit subset scan")
    common.add_argument("-o", "--output", help="write output to this file")

    p = _Parser(prog="tropical-paving", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=func)
        return sp

    def window_args(sp):
        sp.add_argument("--box", nargs=2, metavar=("LO", "HI"), help="window corners, e.g. -10 10 or 0,0 3,3")
        sp.add_argument("--points", help="explicit point set instead of a box")

    for name, func, help_ in (("hnf", cmd_hnf, "Hermite normal form of a lattice"), ("snf", cmd_snf, "structure of Z^n/L")):
        sp = add(name, func, help_)
        sp.add_argument("input", nargs="?", help="lattice file or literal (4Z, rows=...)")
        sp.add_argument("--rows", help="generators, e.g. '4,0,0;0,2,0;0,0,2'")

    sp = add("check-gens", cmd_check_gens, "check (A1)-(A3) for a generating set")
    sp.add_argument("input", nargs="?", help="partition file (default stdin)")

    sp = add("sparse", cmd_sparse, "is a finite set d-sparse")
    sp.add_argument("--points", required=True)
    sp.add_argument("--d", type=int, required=True)

    sp = add("member", cmd_member, "ideal membership of a support, or lattice membership of a vector")
    sp.add_argument("--ideal")
    sp.add_argument("--support")
    sp.add_argument("--lattice")
    sp.add_argument("--vector")

    sp = add("circuits", cmd_circuits, "circuits inside a window")
    sp.add_argument("--ideal")
    sp.add_argument("--max-size", type=int)
    window_args(sp)

    sp = add("degree", cmd_degree, "degree, optionally verified on a window")
    sp.add_argument("--ideal")
    window_args(sp)

    sp = add("restrict-window", cmd_restrict_window, "matroid of the ideal on a window")
    sp.add_argument("--ideal", help="ideal (default stdin)")
    sp.add_argument("--expect", help="matroid file to compare with; its labels become the ground set")
    window_args(sp)

    sp = add("restrict-vars", cmd_restrict_vars, "restriction to a subset of the variables")
    sp.add_argument("--ideal")
    sp.add_argument("--axes", required=True, help="1-based, e.g. 1 or 2,3")

    sp = add("extend-matroid", cmd_extend_matroid, "paving ideal extending a paving matroid")
    sp.add_argument("input", nargs="?", help="matroid file (default stdin)")
    sp.add_argument("--embed", help="points for the ground labels, in ground order")

    sp = add("verify-window", cmd_verify_window, "run every axiom suite on a window")
    sp.add_argument("--ideal")
    window_args(sp)

    sp = add("realize-search", cmd_realize_search, "search realizations over a finite field")
    sp.add_argument("--target", required=True, help="full-rank lattice literal or file")
    sp.add_argument("--field", required=True, help="GF2, GF3, GF4, GF5, GF7, GF9, GF25, GF49")
    sp.add_argument("--show", type=int, help="print at most this many witnesses")
    sp.add_argument("--expect", choices=("none", "some"))

    sp = add("prop46", cmd_prop46, "the three-variable non-realizability experiment")
    sp.add_argument("--fields", help="field orders, default 2,3,4,5")

    sp = add("example", cmd_example, "print a shipped example")
    sp.add_argument("name", choices=("m-power", "non-pappus", "remark-d3", "lattice-deg2", "uniform"))
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--s", default="0..5")
    sp.add_argument("--d", type=int)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--lattice", default="2Z")
    sp.add_argument("--tokens", action="store_true", help="non-pappus with labels 1..9")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.max_points is not None:
        config.MAX_WINDOW_POINTS = args.max_points
    if args.max_scan is not None:
        config.MAX_SUBSET_SCAN = args.max_scan
    out = Output(args)
    try:
        status = args.func(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValidationError, ValueError, KeyError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        witness = getattr(exc, "witness", None)
        if witness is not None:
            print(f"witness: {witness}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.flush()
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
