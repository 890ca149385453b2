"""Exact integer lattices: Hermite/Smith normal forms and quotient groups.

Vectors are plain tuples of Python ints, so there is no overflow to worry
about.  Lattices are stored by their row-style Hermite normal form (HNF):
rows in echelon form, positive pivots, and every entry above a pivot
reduced into ``[0, pivot)``.  The HNF is unique, which makes structural
equality of :class:`IntegerLattice` values coincide with equality of the
lattices as sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError, ValidationError

IntVector = tuple  # tuple[int, ...]


def vec(v: Iterable[int]) -> IntVector:
    return tuple(int(x) for x in v)


def vadd(u: IntVector, v: IntVector) -> IntVector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: IntVector, v: IntVector) -> IntVector:
    return tuple(a - b for a, b in zip(u, v))


def vneg(u: IntVector) -> IntVector:
    return tuple(-a for a in u)


def vscale(c: int, u: IntVector) -> IntVector:
    return tuple(c * a for a in u)


def zero(n: int) -> IntVector:
    return (0,) * n


def unit(n: int, i: int) -> IntVector:
    return tuple(1 if j == i else 0 for j in range(n))


def _check_dims(rows: Sequence[Sequence[int]], n: int | None = None) -> int:
    dims = {len(r) for r in rows}
    if n is not None:
        dims.add(n)
    if len(dims) > 1:
        raise DimensionError(f"rows of mismatched dimension: {sorted(dims)}")
    if not dims:
        raise DimensionError("cannot infer ambient dimension from no rows")
    return dims.pop()


# ---------------------------------------------------------------------------
# echelon machinery


def _echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[list[int]]]:
    """Integer row reduction on the first ``ncols`` columns.

    Rows may be longer than ``ncols``; the tail is carried along by the same
    unimodular row operations.  Returns ``(pivot_rows, null_rows)`` where the
    null rows are those whose first ``ncols`` entries vanished; their tails
    span the image of the left kernel.
    """
    rest = [r[:] for r in rows]
    pivots: list[list[int]] = []
    for c in range(ncols):
        live = [r for r in rest if r[c] != 0]
        idle = [r for r in rest if r[c] == 0]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[c]))
            head = live[0]
            nxt = [head]
            for r in live[1:]:
                q = r[c] // head[c]
                r2 = [a - q * b for a, b in zip(r, head)]
                if r2[c] != 0:
                    nxt.append(r2)
                else:
                    idle.append(r2)
            live = nxt
        if live:
            p = live[0]
            if p[c] < 0:
                p = [-a for a in p]
            pivots.append(p)
        rest = idle
    return pivots, rest


def _pivot_col(row: Sequence[int]) -> int:
    for i, a in enumerate(row):
        if a != 0:
            return i
    raise ValueError("zero row has no pivot")


def _reduce_above(pivots: list[list[int]], ncols: int) -> list[list[int]]:
    rows = [r[:] for r in pivots]
    for i, r in enumerate(rows):
        c = _pivot_col(r[:ncols])
        p = r[c]
        for j in range(i):
            q = rows[j][c] // p
            if q:
                rows[j] = [a - q * b for a, b in zip(rows[j], r)]
    return rows


def int_det(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    A = [list(r) for r in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


# ---------------------------------------------------------------------------
# lattices


@dataclass(frozen=True)
class IntegerLattice:
    """A sublattice of Z^n, stored as its row-style HNF basis."""

    ambient_dim: int
    basis: tuple[IntVector, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[tuple[int, int], ...]:
        """``(column, pivot value)`` of each basis row."""
        out = []
        for r in self.basis:
            c = _pivot_col(r)
            out.append((c, r[c]))
        return tuple(out)

    def is_full_rank(self) -> bool:
        return self.rank == self.ambient_dim

    def is_whole_space(self) -> bool:
        return self.is_full_rank() and all(p == 1 for _, p in self.pivots)

    def is_zero(self) -> bool:
        return self.rank == 0

    def determinant(self) -> int:
        """Index [Z^n : L] for full-rank L (product of pivots)."""
        if not self.is_full_rank():
            raise ValueError("determinant is only defined for full-rank lattices")
        out = 1
        for _, p in self.pivots:
            out *= p
        return out

    def reduce(self, v: IntVector) -> IntVector:
        """Canonical representative of the coset ``v + L``.

        Pivot coordinates are pushed into ``[0, pivot)`` top-down; the
        remaining coordinates are left alone.
        """
        if len(v) != self.ambient_dim:
            raise DimensionError(f"vector of dim {len(v)} vs lattice dim {self.ambient_dim}")
        w = list(v)
        for r in self.basis:
            c = _pivot_col(r)
            q = w[c] // r[c]
            if q:
                w = [a - q * b for a, b in zip(w, r)]
        return tuple(w)

    def __contains__(self, v) -> bool:
        return member(self, tuple(v))

    def __str__(self) -> str:
        rows = "; ".join(" ".join(map(str, r)) for r in self.basis)
        return f"<{rows}> in Z^{self.ambient_dim}"


def hnf(rows: Iterable[Sequence[int]], n: int | None = None) -> IntegerLattice:
    """The lattice generated by ``rows`` in canonical HNF."""
    rows = [vec(r) for r in rows]
    n = _check_dims(rows, n)
    pivots, _ = _echelon([list(r) for r in rows], n)
    basis = _reduce_above(pivots, n)
    return IntegerLattice(n, tuple(tuple(r) for r in basis))


def zero_lattice(n: int) -> IntegerLattice:
    return IntegerLattice(n, ())


def full_lattice(n: int) -> IntegerLattice:
    return IntegerLattice(n, tuple(unit(n, i) for i in range(n)))


def member(L: IntegerLattice, v: IntVector) -> bool:
    """Whether ``v`` is an integer combination of the basis of ``L``."""
    if len(v) != L.ambient_dim:
        raise DimensionError(f"vector of dim {len(v)} vs lattice dim {L.ambient_dim}")
    w = list(v)
    for r in L.basis:
        c = _pivot_col(r)
        if any(w[:c]):
            return False
        q, rem = divmod(w[c], r[c])
        if rem:
            return False
        if q:
            w = [a - q * b for a, b in zip(w, r)]
    return not any(w)


def lattice_sum(L1: IntegerLattice, L2: IntegerLattice) -> IntegerLattice:
    if L1.ambient_dim != L2.ambient_dim:
        raise DimensionError("lattices live in different ambient spaces")
    return hnf(L1.basis + L2.basis, L1.ambient_dim)


def intersect(L1: IntegerLattice, L2: IntegerLattice) -> IntegerLattice:
    """L1 ∩ L2 via the left kernel of the stacked bases.

    Rows ``[b | b]`` for b in L1 and ``[b | 0]`` for b in L2: a combination
    killing the first half is ``a·B1 + c·B2 = 0`` and its tail is
    ``a·B1 ∈ L1 ∩ L2``.
    """
    n = L1.ambient_dim
    if n != L2.ambient_dim:
        raise DimensionError("lattices live in different ambient spaces")
    if L1.is_zero() or L2.is_zero():
        return zero_lattice(n)
    rows = [list(b) + list(b) for b in L1.basis] + [list(b) + [0] * n for b in L2.basis]
    _, null = _echelon(rows, n)
    return hnf([r[n:] for r in null], n)


def is_sublattice(L1: IntegerLattice, L2: IntegerLattice) -> bool:
    """Whether L1 ⊆ L2."""
    return all(member(L2, b) for b in L1.basis)


def coordinate_section(L: IntegerLattice, axes: Iterable[int]) -> IntegerLattice:
    """L ∩ (Z^axes × {0}), written in the |axes|-dimensional space.

    ``axes`` are 1-based coordinate indices.  Works by moving the other
    coordinates to the front: in echelon form the rows without a pivot
    there generate exactly the vectors of L vanishing on them.
    """
    n = L.ambient_dim
    axes = sorted(set(int(a) for a in axes))
    if not axes:
        raise ValueError("coordinate_section needs at least one axis")
    if axes[0] < 1 or axes[-1] > n:
        raise DimensionError(f"axes {axes} out of range for Z^{n}")
    keep = [a - 1 for a in axes]
    drop = [i for i in range(n) if i not in keep]
    order = drop + keep
    rows = [[b[i] for i in order] for b in L.basis]
    if not rows:
        return zero_lattice(len(keep))
    pivots, _ = _echelon(rows, n)
    k = len(drop)
    section = [r[k:] for r in pivots if not any(r[:k])]
    return hnf(section, len(keep)) if section else zero_lattice(len(keep))


def embed(v: IntVector, axes: Sequence[int], n: int) -> IntVector:
    """Place an |axes|-vector into Z^n at the given 1-based axes."""
    out = [0] * n
    for a, x in zip(sorted(axes), v):
        out[a - 1] = x
    return tuple(out)


def coset_representatives(L: IntegerLattice) -> Iterator[IntVector]:
    """All reduced representatives of Z^n / L, for full-rank L."""
    if not L.is_full_rank():
        raise ValueError("Z^n/L is infinite unless L has full rank")
    ranges = [range(p) for _, p in L.pivots]
    yield from product(*ranges)


# ---------------------------------------------------------------------------
# affine lattices


@dataclass(frozen=True)
class AffineLattice:
    """The coset ``offset + lattice``; the offset is kept reduced."""

    offset: IntVector
    lattice: IntegerLattice

    def __post_init__(self):
        object.__setattr__(self, "offset", self.lattice.reduce(tuple(self.offset)))

    def __contains__(self, v) -> bool:
        return member(self.lattice, vsub(tuple(v), self.offset))

    def translate(self, u: IntVector) -> "AffineLattice":
        return AffineLattice(vadd(self.offset, u), self.lattice)


# ---------------------------------------------------------------------------
# Smith normal form and quotient groups


def _smith(rows: list[list[int]], n: int):
    """Smith normal form ``U A V = D`` of an r×n integer matrix.

    Returns ``(diag, U, V)`` with diag the nonzero diagonal entries in
    divisibility order.
    """
    A = [r[:] for r in rows]
    r_count = len(A)
    U = [[int(i == j) for j in range(r_count)] for i in range(r_count)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst -= q * col src
        for row in A:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    diag = []
    for t in range(min(r_count, n)):
        entries = [(abs(A[i][j]), i, j) for i in range(t, r_count) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        while True:
            entries = [(abs(A[i][j]), i, j) for i in range(t, r_count) for j in range(t, n) if A[i][j]]
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            p = A[t][t]
            dirty = False
            for i in range(t + 1, r_count):
                q = A[i][t] // p
                if q:
                    add_row(i, t, q)
                dirty |= A[i][t] != 0
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    add_col(j, t, q)
                dirty |= A[t][j] != 0
            if dirty:
                continue
            bad = [(i, j) for i in range(t + 1, r_count) for j in range(t + 1, n) if A[i][j] % p]
            if bad:
                i, _ = bad[0]
                A[t] = [a + b for a, b in zip(A[t], A[i])]
                U[t] = [a + b for a, b in zip(U[t], U[i])]
                continue
            break
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        diag.append(A[t][t])
    return diag, U, V


@dataclass(frozen=True)
class QuotientGroup:
    """Z^n / L with canonical coset representatives.

    ``canonical_rep`` is HNF reduction against L, so representatives are
    honest vectors of Z^n.  ``coordinates`` gives the abstract
    ``Z/d_1 × … × Z/d_r × Z^f`` coordinates from the Smith form.
    """

    lattice: IntegerLattice
    invariant_factors: tuple[int, ...]
    free_rank: int
    transform_u: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    transform_v: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    _unit_count: int = field(repr=False, compare=False, default=0)

    @property
    def ambient_dim(self) -> int:
        return self.lattice.ambient_dim

    @property
    def is_trivial_lattice(self) -> bool:
        return self.lattice.is_zero()

    def order(self) -> int | None:
        """Number of elements, or None when the group is infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def canonical_rep(self, v: IntVector) -> IntVector:
        if self.lattice.is_zero():
            if len(v) != self.ambient_dim:
                raise DimensionError(f"vector of dim {len(v)} vs group of dim {self.ambient_dim}")
            return tuple(v)
        return self.lattice.reduce(tuple(v))

    def add(self, u: IntVector, v: IntVector) -> IntVector:
        return self.canonical_rep(vadd(u, v))

    def neg(self, u: IntVector) -> IntVector:
        return self.canonical_rep(vneg(u))

    def sub(self, u: IntVector, v: IntVector) -> IntVector:
        return self.canonical_rep(vsub(u, v))

    def identity(self) -> IntVector:
        return zero(self.ambient_dim)

    def coordinates(self, v: IntVector) -> tuple[int, ...]:
        """Torsion coordinates (mod each invariant factor) then free ones."""
        if len(v) != self.ambient_dim:
            raise DimensionError(f"vector of dim {len(v)} vs group of dim {self.ambient_dim}")
        n = self.ambient_dim
        w = [sum(v[i] * self.transform_v[i][j] for i in range(n)) for j in range(n)]
        r = self.lattice.rank
        diag_all = self._diag()
        torsion = [w[i] % diag_all[i] for i in range(r) if diag_all[i] != 1]
        return tuple(torsion) + tuple(w[r:])

    def _diag(self) -> tuple[int, ...]:
        return (1,) * self._unit_count + self.invariant_factors

    def elements(self) -> Iterator[IntVector]:
        """Canonical representatives of a finite group, in sorted order."""
        if self.free_rank:
            raise ValueError("group is infinite")
        yield from coset_representatives(self.lattice)

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "0"


def snf_quotient(L: IntegerLattice) -> QuotientGroup:
    n = L.ambient_dim
    if n < 1:
        raise DimensionError("ambient dimension must be at least 1")
    if L.is_zero():
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return QuotientGroup(L, (), n, (), ident, 0)
    diag, U, V = _smith([list(b) for b in L.basis], n)
    units = sum(1 for d in diag if d == 1)
    factors = tuple(d for d in diag if d != 1)
    return QuotientGroup(
        L,
        factors,
        n - len(diag),
        tuple(tuple(r) for r in U),
        tuple(tuple(r) for r in V),
        units,
    )


def trivial_group(n: int) -> QuotientGroup:
    return snf_quotient(zero_lattice(n))


def canonical_rep(Q: QuotientGroup, v: IntVector) -> IntVector:
    return Q.canonical_rep(v)


def q_add(Q: QuotientGroup, u: IntVector, v: IntVector) -> IntVector:
    return Q.add(u, v)


def q_neg(Q: QuotientGroup, u: IntVector) -> IntVector:
    return Q.neg(u)


def parse_lattice_spec(text: str) -> IntegerLattice:
    """Inline lattice literals: ``4Z``, ``2Z``, or ``rows=2,0;0,2``."""
    t = text.strip()
    if t.endswith("Z") and t[:-1].lstrip("-").isdigit():
        return hnf([(int(t[:-1]),)], 1)
    if t.startswith("rows="):
        rows = [tuple(int(x) for x in r.replace(",", " ").split()) for r in t[5:].split(";") if r.strip()]
        return hnf(rows)
    raise ValidationError(f"cannot parse lattice literal {text!r}")
