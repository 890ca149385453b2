"""Line-oriented text formats for lattices, partitions, matroids, ideals and supports.

Blank lines and ``#`` comments are ignored when reading.  Writers always
emit canonical forms (HNF bases, normalized blocks, sorted labels), so
``loads(dumps(x)) == x`` and equal values print identically.

::

    lattice <n> <k>            k rows of n integers (any generating set)
    dpartition <n> <d> <b>     then b blocks, each one of
        finite <k>             k point lines
        affine                 an offset line and a lattice record
    matroid <size> <rank>      size label lines: ``point <coords>`` or ``token <s>``
        circuits <k>           k lines of 0-based ground indices
        hyperplanes <k>        (alternative to circuits)
    ideal <kind> <n>           kind paving: a dpartition record
                               kind lattice2: a lattice record
                               kind degree3: a lattice record L, then a dpartition of Z^n/L
    support <k>                k point lines
"""

from __future__ import annotations

from typing import Iterable

from .errors import ValidationError
from .ideals import KINDS, TropicalIdeal, degree2_from_lattice, degree3_from_pair, make_support, paving_ideal
from .lattices import IntegerLattice, hnf, snf_quotient, trivial_group, vec
from .matroids import FiniteMatroid, label_key, matroid_from_hyperplanes
from .partitions import AffineBlock, FiniteBlock, InvariantPartition


class _Lines:
    def __init__(self, text: str):
        self.lines = []
        for no, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if line:
                self.lines.append((no, line))
        self.pos = 0

    def next(self, what: str) -> tuple[int, list[str]]:
        if self.pos >= len(self.lines):
            raise ValidationError(f"unexpected end of input, expected {what}")
        no, line = self.lines[self.pos]
        self.pos += 1
        return no, line.split()

    def peek(self) -> list[str] | None:
        if self.pos >= len(self.lines):
            return None
        return self.lines[self.pos][1].split()

    def header(self, keyword: str, nargs: int) -> list[int]:
        no, toks = self.next(f"'{keyword}' header")
        if toks[0] != keyword or len(toks) != nargs + 1:
            raise ValidationError(f"line {no}: expected '{keyword}' with {nargs} argument(s), got {' '.join(toks)!r}")
        return [_int(t, no) for t in toks[1:]]

    def ints(self, count: int | None, what: str) -> tuple[int, ...]:
        no, toks = self.next(what)
        if count is not None and len(toks) != count:
            raise ValidationError(f"line {no}: expected {count} integers for {what}, got {len(toks)}")
        return tuple(_int(t, no) for t in toks)

    def done(self) -> None:
        if self.pos != len(self.lines):
            no, line = self.lines[self.pos]
            raise ValidationError(f"line {no}: trailing content {line!r}")


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ValidationError(f"line {no}: {tok!r} is not an integer") from None


def _pt(p) -> str:
    return " ".join(str(x) for x in p)


# ---------------------------------------------------------------------------
# lattices


def _read_lattice(r: _Lines) -> IntegerLattice:
    n, k = r.header("lattice", 2)
    if n < 1 or k < 0:
        raise ValidationError("lattice header needs n >= 1 and k >= 0")
    return hnf([r.ints(n, "lattice row") for _ in range(k)], n)


def write_lattice(L: IntegerLattice) -> str:
    lines = [f"lattice {L.ambient_dim} {L.rank}"]
    lines.extend(_pt(row) for row in L.basis)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# partitions


def _read_partition(r: _Lines, group=None) -> InvariantPartition:
    n, d, nb = r.header("dpartition", 3)
    if group is None:
        group = trivial_group(n)
    elif group.ambient_dim != n:
        raise ValidationError("partition dimension differs from its quotient lattice")
    blocks = []
    for _ in range(nb):
        no, toks = r.next("block header")
        if toks[0] == "finite" and len(toks) == 2:
            k = _int(toks[1], no)
            blocks.append(FiniteBlock(tuple(r.ints(n, "block point") for _ in range(k))))
        elif toks == ["affine"]:
            r.ints(n, "affine offset")  # the orbit representative does not depend on it
            blocks.append(AffineBlock(_read_lattice(r)))
        else:
            raise ValidationError(f"line {no}: expected 'finite <k>' or 'affine', got {' '.join(toks)!r}")
    return InvariantPartition.build(blocks, d, group)


def write_partition(P: InvariantPartition) -> str:
    n = P.ambient_dim
    lines = [f"dpartition {n} {P.d} {len(P.blocks)}"]
    for b in P.blocks:
        if isinstance(b, FiniteBlock):
            lines.append(f"finite {len(b.points)}")
            lines.extend(_pt(p) for p in b.points)
        else:
            lines.append("affine")
            lines.append(_pt((0,) * n))
            lines.append(write_lattice(b.lattice).rstrip("\n"))
    body = "\n".join(lines) + "\n"
    if not P.group.is_trivial_lattice:
        body = write_lattice(P.group.lattice) + body
    return body


def _read_any_partition(r: _Lines) -> InvariantPartition:
    head = r.peek()
    if head and head[0] == "lattice":
        L = _read_lattice(r)
        return _read_partition(r, snf_quotient(L))
    return _read_partition(r)


# ---------------------------------------------------------------------------
# matroids


def _read_matroid(r: _Lines) -> FiniteMatroid:
    size, rank = r.header("matroid", 2)
    labels = []
    for _ in range(size):
        no, toks = r.next("ground label")
        if toks[0] == "point" and len(toks) >= 2:
            labels.append(tuple(_int(t, no) for t in toks[1:]))
        elif toks[0] == "token" and len(toks) == 2:
            labels.append(toks[1])
        else:
            raise ValidationError(f"line {no}: expected 'point <coords>' or 'token <s>'")
    if len(set(labels)) != len(labels):
        raise ValidationError("repeated ground label")
    no, toks = r.next("'circuits' or 'hyperplanes'")
    if toks[0] not in ("circuits", "hyperplanes") or len(toks) != 2:
        raise ValidationError(f"line {no}: expected 'circuits <k>' or 'hyperplanes <k>'")
    sets = []
    for _ in range(_int(toks[1], no)):
        idx = r.ints(None, "index set")
        if any(not 0 <= i < size for i in idx):
            raise ValidationError(f"index out of range in {idx}")
        sets.append([labels[i] for i in idx])
    if toks[0] == "circuits":
        M = FiniteMatroid(labels, sets, validate=True)
    else:
        d = rank - 1
        try:
            M = matroid_from_hyperplanes(sets, labels, d=d)
        except ValidationError:
            M = matroid_from_hyperplanes(sets, labels)
    if M.rank != rank:
        raise ValidationError(f"header says rank {rank} but the circuits give rank {M.rank}")
    return M


def write_matroid(M: FiniteMatroid, hyperplanes: bool = False) -> str:
    lines = [f"matroid {len(M.ground)} {M.rank}"]
    for x in M.ground:
        lines.append(f"point {_pt(x)}" if isinstance(x, tuple) else f"token {x}")
    index = {x: i for i, x in enumerate(M.ground)}
    family = M.hyperplanes() if hyperplanes else M.circuits
    rows = sorted(sorted(index[x] for x in S) for S in family)
    rows.sort(key=lambda r: (len(r), r))
    lines.append(f"{'hyperplanes' if hyperplanes else 'circuits'} {len(rows)}")
    lines.extend(" ".join(str(i) for i in r) for r in rows)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# ideals and supports


def _read_ideal(r: _Lines) -> TropicalIdeal:
    no, toks = r.next("'ideal' header")
    if toks[0] != "ideal" or len(toks) != 3 or toks[1] not in KINDS:
        raise ValidationError(f"line {no}: expected 'ideal <{'|'.join(KINDS)}> <n>'")
    kind, n = toks[1], _int(toks[2], no)
    if kind == "paving":
        I = paving_ideal(_read_partition(r))
    elif kind == "lattice2":
        I = degree2_from_lattice(_read_lattice(r))
    else:
        L = _read_lattice(r)
        I = degree3_from_pair(L, _read_partition(r, snf_quotient(L)))
    if I.n != n:
        raise ValidationError(f"ideal header says n = {n}, body has n = {I.n}")
    return I


def write_ideal(I: TropicalIdeal) -> str:
    head = f"ideal {I.kind} {I.n}\n"
    if I.kind == "paving":
        return head + write_partition(I.partition)
    if I.kind == "lattice2":
        from .ideals import binomial_lattice

        return head + write_lattice(binomial_lattice(I))
    return head + write_partition(I.partition)  # carries its lattice record first


def _read_support(r: _Lines) -> tuple:
    (k,) = r.header("support", 1)
    pts = [r.ints(None, "support point") for _ in range(k)]
    return make_support(pts)


def write_support(S: Iterable) -> str:
    S = make_support(S)
    return "\n".join([f"support {len(S)}"] + [_pt(p) for p in S]) + "\n"


# ---------------------------------------------------------------------------
# dispatch

_READERS = {
    "lattice": None,  # resolved below: a lattice record may also start a quotient partition
    "dpartition": _read_partition,
    "matroid": _read_matroid,
    "ideal": _read_ideal,
    "support": _read_support,
}


def loads(text: str, expect: str | None = None):
    """Parse one record; ``expect`` names the required kind."""
    r = _Lines(text)
    head = r.peek()
    if head is None:
        raise ValidationError("empty input")
    kw = head[0]
    if kw not in _READERS:
        raise ValidationError(f"unknown record type {kw!r}")
    if kw == "lattice":
        L = _read_lattice(r)
        if r.peek() is not None and r.peek()[0] == "dpartition":
            value, kind = _read_partition(r, snf_quotient(L)), "dpartition"
        else:
            value, kind = L, "lattice"
    else:
        value, kind = _READERS[kw](r), kw
    r.done()
    if expect is not None and kind != expect:
        raise ValidationError(f"expected a {expect} record, got {kind}")
    return value


def dumps(value) -> str:
    if isinstance(value, IntegerLattice):
        return write_lattice(value)
    if isinstance(value, InvariantPartition):
        return write_partition(value)
    if isinstance(value, FiniteMatroid):
        return write_matroid(value)
    if isinstance(value, TropicalIdeal):
        return write_ideal(value)
    if isinstance(value, (tuple, list)):
        return write_support(value)
    raise TypeError(f"no text format for {type(value).__name__}")


def parse_points(text: str, n: int | None = None) -> list[tuple[int, ...]]:
    """Points from ``"0 2"`` (1-D), ``"0,1;2,3"`` or ``"(0,1) (2,3)"``."""
    t = text.replace("(", " ").replace(")", ";")
    if ";" in t:
        chunks = [c for c in t.split(";") if c.strip()]
        pts = [vec(int(x) for x in c.replace(",", " ").split()) for c in chunks]
    elif "," in t:
        pts = [vec(int(x) for x in c.split(",")) for c in t.split()]
    else:
        pts = [(int(x),) for x in t.split()]
    if n is not None and any(len(p) != n for p in pts):
        raise ValidationError(f"points must have dimension {n}: {text!r}")
    return pts


__all__ = [
    "dumps",
    "label_key",
    "loads",
    "parse_points",
    "write_ideal",
    "write_lattice",
    "write_matroid",
    "write_partition",
    "write_support",
]
