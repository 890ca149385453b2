"""Zero-dimensional tropical ideals with Boolean coefficients.

Every ideal handled here is stored the same way: a binomial lattice L and
a translation-invariant d-partition of ``Z^n / L``.  The underlying
matroid on Z^n has the cosets of L as parallel classes, and its
simplification is the rank-(d+1) paving matroid whose hyperplanes are the
blocks.  The three kinds only differ in how they were built:

``paving``
    L = 0, any d (degree d + 1).
``lattice2``
    degree 2 ideals, kept as the d = 1 partition of Z^n into the cosets of
    a proper sublattice.  Their binomial lattice is that sublattice; the
    partition group is still Z^n.
``degree3``
    a pair (L, P) with P an invariant d-partition of ``Z^n / L``.  d = 2
    gives degree 3; larger d is allowed (the same construction works for
    degree d + 1 as long as the minimal supports have size 2, d+1 or d+2).

A polynomial is identified with its support, a sorted tuple of integer
vectors.  Membership is the cycle test: S is in the ideal iff the
restriction of the matroid to S has no coloop.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Iterable, Mapping, Sequence

from . import config
from .errors import DimensionError, ResourceLimitError, ValidationError
from .lattices import (
    IntegerLattice,
    IntVector,
    coordinate_section,
    full_lattice,
    hnf,
    lattice_sum,
    snf_quotient,
    trivial_group,
    zero_lattice,
)
from .matroids import FiniteMatroid, is_paving
from .partitions import (
    AffineBlock,
    FiniteBlock,
    InvariantPartition,
    Window,
    as_points,
    class_traces,
    contains_in_block,
    is_d_sparse,
)

Support = tuple  # sorted tuple of IntVectors

KINDS = ("paving", "lattice2", "degree3")


def make_support(points: Iterable[Sequence[int]], n: int | None = None) -> Support:
    pts = [tuple(int(x) for x in p) for p in points]
    if n is not None and any(len(p) != n for p in pts):
        raise DimensionError(f"support points must have dimension {n}")
    if len({len(p) for p in pts}) > 1:
        raise DimensionError("support points of mixed dimension")
    if len(set(pts)) != len(pts):
        raise ValidationError("support has repeated points", witness=pts)
    return tuple(sorted(pts))


@dataclass(frozen=True)
class TropicalIdeal:
    kind: str
    n: int
    partition: InvariantPartition

    @property
    def d(self) -> int:
        return self.partition.d

    @property
    def group(self):
        return self.partition.group

    @property
    def quotient_lattice(self) -> IntegerLattice:
        """L with points taken modulo L (zero except for the pair kind)."""
        return self.group.lattice

    def degree(self) -> int:
        return self.d + 1

    def describe(self) -> str:
        P = self.partition
        if self.kind == "lattice2":
            return f"lattice2 ideal in Z^{self.n}, L = {binomial_lattice(self)}"
        extra = f" over Z^{self.n}/{self.quotient_lattice}" if self.kind == "degree3" else f" in Z^{self.n}"
        return f"{self.kind} ideal{extra}, d = {P.d}, {len(P.blocks)} generating block(s), degree {self.degree()}"

    def _classes(self, pts: Sequence[IntVector]) -> list[IntVector]:
        return self.partition.classes(pts)

    def _check(self, pts) -> list[IntVector]:
        out = [tuple(int(x) for x in p) for p in pts]
        for p in out:
            if len(p) != self.n:
                raise DimensionError(f"point {p} is not in Z^{self.n}")
        return out


# ---------------------------------------------------------------------------
# constructors


def paving_ideal(P: InvariantPartition) -> TropicalIdeal:
    if not P.group.is_trivial_lattice:
        raise ValidationError("a paving ideal needs a partition of Z^n itself; use degree3_from_pair")
    return TropicalIdeal("paving", P.ambient_dim, P)


def paving_from_blocks(blocks: Iterable, d: int, n: int) -> TropicalIdeal:
    return paving_ideal(InvariantPartition.build(blocks, d, n))


def uniform_ideal(n: int, d: int) -> TropicalIdeal:
    """The degree-(d+1) ideal whose matroid is uniform (no listed blocks)."""
    if n < 1:
        raise ValidationError("need n >= 1")
    if d < 0:
        raise ValidationError("need d >= 0")
    return paving_from_blocks([], d, n)


def degree2_from_lattice(L: IntegerLattice) -> TropicalIdeal:
    """The degree-2 ideal generated by the binomials x^u + x^v with u - v in L."""
    if L.is_whole_space():
        raise ValidationError("the lattice must be a proper sublattice", witness=L)
    blocks = [] if L.is_zero() else [AffineBlock(L)]
    return TropicalIdeal("lattice2", L.ambient_dim, InvariantPartition.build(blocks, 1, L.ambient_dim))


def degree3_from_pair(L: IntegerLattice, P: InvariantPartition) -> TropicalIdeal:
    """The ideal of a pair (L, P), P an invariant d-partition of Z^n / L."""
    if P.group.lattice != L:
        raise ValidationError("partition lives on a different quotient group", witness=P.group.lattice)
    if P.d < 1:
        raise ValidationError("pair ideals need d >= 1")
    return TropicalIdeal("degree3", L.ambient_dim, P)


def m_s_ideal(m: int, S: Iterable[int]) -> TropicalIdeal:
    """Degree-3 ideal in one variable generated by the block {m^s : s in S}."""
    S = sorted(set(int(s) for s in S))
    if m < 2:
        raise ValidationError("need m >= 2")
    if len(S) < 2 or S[0] < 0:
        raise ValidationError("need at least two nonnegative exponents", witness=S)
    pts = [(m**s,) for s in S]
    if not is_d_sparse(pts, 2):
        raise ValidationError("block is not 2-sparse", witness=pts)
    return paving_from_blocks([FiniteBlock(tuple(pts))], 2, 1)


def remark_block(d: int = 3) -> tuple[IntegerLattice, FiniteBlock]:
    """L = <(2d-2, 0)> and S = {0, 2, .., 2d-4} x {0, 1} in Z^2 / L."""
    L = hnf([(2 * d - 2, 0)])
    pts = tuple((x, y) for x in range(0, 2 * d - 3, 2) for y in (0, 1))
    return L, FiniteBlock(pts)


def remark_example(d: int = 3) -> TropicalIdeal:
    """Pair ideal whose block is stable under [(2, 0)] but is not a subgroup coset."""
    if d < 3:
        raise ValidationError("the example needs d >= 3")
    L, S = remark_block(d)
    G = snf_quotient(L)
    P = InvariantPartition.build([S], d, G)
    block = P.blocks[0]
    shifted = frozenset(G.add((2, 0), p) for p in block.points)
    assert shifted == frozenset(block.points)
    assert not is_subgroup_coset(G, block.points)
    return degree3_from_pair(L, P)


def is_subgroup_coset(G, pts: Sequence[IntVector]) -> bool:
    """Whether a finite set of group elements is a coset v + K of a subgroup K."""
    pts = [G.canonical_rep(p) for p in pts]
    base = pts[0]
    K = {G.sub(p, base) for p in pts}
    return all(G.add(a, b) in K for a in K for b in K)


# ---------------------------------------------------------------------------
# rank and membership


def rank_oracle(I: TropicalIdeal, X: Iterable[Sequence[int]]) -> int:
    """Rank of X in the underlying matroid."""
    classes = I._classes(I._check(X))
    k, d = len(classes), I.d
    if k <= d:
        return k
    if contains_in_block(I.partition, classes) is not None:
        return d
    return d + 1


def contains(I: TropicalIdeal, S: Iterable[Sequence[int]]) -> bool:
    """Whether the polynomial with support S lies in I (S is a cycle)."""
    pts = I._check(S)
    if not pts:
        return True
    pts = list(dict.fromkeys(pts))
    r = rank_oracle(I, pts)
    return all(rank_oracle(I, pts[:i] + pts[i + 1 :]) == r for i in range(len(pts)))


def is_circuit(I: TropicalIdeal, S: Iterable[Sequence[int]]) -> bool:
    pts = list(dict.fromkeys(I._check(S)))
    if not pts or rank_oracle(I, pts) == len(pts):
        return False
    return all(rank_oracle(I, pts[:i] + pts[i + 1 :]) == len(pts) - 1 for i in range(len(pts)))


def degree(I: TropicalIdeal) -> int:
    return I.degree()


def binomial_lattice(I: TropicalIdeal) -> IntegerLattice:
    """Differences u - v over all binomials x^u + x^v in I."""
    L = I.quotient_lattice
    P = I.partition
    if P.d == 0:
        return full_lattice(I.n)
    if P.d == 1:
        for b in P.blocks:
            extra = b.lattice if isinstance(b, AffineBlock) else hnf(b.points, I.n)
            L = lattice_sum(L, extra)
    return L


# ---------------------------------------------------------------------------
# circuits on finite windows


def _window_classes(I: TropicalIdeal, ground, limit: int | None) -> tuple[list[IntVector], dict]:
    pts = I._check(as_points(ground, config.MAX_WINDOW_POINTS if limit is None else limit))
    by_class: dict[IntVector, list[IntVector]] = {}
    for p in pts:
        by_class.setdefault(I.group.canonical_rep(p), []).append(p)
    return sorted(by_class), by_class


def _dependent_class_sets(I: TropicalIdeal, classes: Sequence[IntVector]) -> set[frozenset]:
    d = I.d
    out: set[frozenset] = set()
    for t in class_traces(I.partition, classes, d + 1):
        out.update(frozenset(c) for c in combinations(t.points, d + 1))
    return out


def _lift(class_sets, by_class) -> list[Support]:
    out = []
    for cs in class_sets:
        for choice in product(*(by_class[c] for c in sorted(cs))):
            out.append(tuple(sorted(choice)))
    return out


def circuits_in_window(
    I: TropicalIdeal,
    ground: "Window | Iterable[Sequence[int]]",
    max_size: int | None = None,
    limit: int | None = None,
    scan_limit: int | None = None,
) -> list[Support]:
    """All circuits of the underlying matroid contained in a finite point set.

    Parallel pairs, then (d+1)-subsets of a block trace, then (d+2)-sets of
    classes with no dependent (d+1)-subset, each lifted to window points.
    ``max_size`` drops circuits above that size (skipping the costly scan).
    """
    classes, by_class = _window_classes(I, ground, limit)
    d = I.d
    out: list[Support] = []
    for c in classes:
        out.extend(tuple(sorted(pair)) for pair in combinations(by_class[c], 2))
    dependent = _dependent_class_sets(I, classes)
    if d >= 1:
        out.extend(_lift(dependent, by_class))
    if max_size is None or max_size >= d + 2:
        scan_limit = config.MAX_SUBSET_SCAN if scan_limit is None else scan_limit
        total = comb(len(classes), d + 2)
        if total > scan_limit:
            raise ResourceLimitError(
                f"circuit scan would visit {total} subsets of size {d + 2} (limit {scan_limit})"
            )
        big = []
        for T in combinations(classes, d + 2):
            if dependent and any(frozenset(T[:i] + T[i + 1 :]) in dependent for i in range(d + 2)):
                continue
            big.append(frozenset(T))
        out.extend(_lift(big, by_class))
    if max_size is not None:
        out = [c for c in out if len(c) <= max_size]
    out = sorted(set(out), key=lambda c: (len(c), c))
    return out


def circuit_signature(I: TropicalIdeal, ground, limit: int | None = None) -> tuple:
    """(degree, circuits of size <= d+1) on a window.

    Given the window and d, the (d+2)-circuits are exactly the (d+2)-sets
    of pairwise non-parallel points without a dependent (d+1)-subset, so
    this pair determines the full circuit list.
    """
    return (I.degree(), tuple(circuits_in_window(I, ground, max_size=I.d + 1, limit=limit)))


def restrict_matroid(I: TropicalIdeal, ground, limit: int | None = None, scan_limit: int | None = None) -> FiniteMatroid:
    """The matroid uMat(I|_E) on a finite point set E (a Window or explicit points)."""
    pts = I._check(as_points(ground, config.MAX_WINDOW_POINTS if limit is None else limit))
    return FiniteMatroid(pts, circuits_in_window(I, pts, limit=limit, scan_limit=scan_limit))


def verify_degree_on_window(I: TropicalIdeal, ground, limit: int | None = None) -> bool:
    """Largest independent subset of the window, from its circuits, equals degree(I)."""
    return restrict_matroid(I, ground, limit=limit).rank == I.degree()


def semantically_equal(I: TropicalIdeal, J: TropicalIdeal, ground=None) -> bool:
    """Same circuits on a probe window (default: the box [-3, 3]^n)."""
    if I.n != J.n:
        return False
    if ground is None:
        ground = Window((-3,) * I.n, (3,) * I.n)
    if I.degree() != J.degree():
        return False
    return circuit_signature(I, ground) == circuit_signature(J, ground)


# ---------------------------------------------------------------------------
# extension and restriction


def extend_matroid(M: FiniteMatroid, embedding: Mapping | Sequence) -> TropicalIdeal:
    """Paving ideal whose matroid restricted to the embedded ground set is M.

    ``embedding`` maps each ground label to a point of Z^n (a mapping, or
    a sequence aligned with ``M.ground``).
    """
    if not isinstance(embedding, Mapping):
        embedding = dict(zip(M.ground, embedding, strict=True))
    if set(embedding) != set(M.ground):
        raise ValidationError("embedding must cover exactly the ground set")
    image = {x: tuple(int(c) for c in embedding[x]) for x in M.ground}
    if len(set(image.values())) != len(image):
        raise ValidationError("embedding is not injective", witness=image)
    dims = {len(p) for p in image.values()}
    if len(dims) != 1:
        raise DimensionError("embedded points of mixed dimension")
    n = dims.pop()
    if not is_paving(M):
        raise ValidationError("matroid is not paving", witness=M)
    d = M.rank - 1
    if d < 1:
        raise ValidationError("need rank >= 2")
    if not is_d_sparse(image.values(), d):
        raise ValidationError(f"embedded ground set is not {d}-sparse", witness=sorted(image.values()))
    blocks = [FiniteBlock(tuple(image[x] for x in H)) for H in M.hyperplanes() if len(H) >= d + 1]
    return paving_from_blocks(blocks, d, n)


def restrict_vars(I: TropicalIdeal, axes: Iterable[int]) -> TropicalIdeal:
    """I ∩ B[x_i^{±1} : i in axes], a tropical ideal in |axes| variables.

    Axes are 1-based.  If some block translate contains the whole
    coordinate sublattice, the result is uniform of one degree lower.
    """
    if I.kind == "degree3":
        raise ValidationError("restriction to fewer variables is implemented for paving and lattice2 ideals")
    axes = sorted(set(int(a) for a in axes))
    if not axes or len(axes) >= I.n:
        raise ValidationError("axes must be a nonempty proper subset of the variables", witness=axes)
    if axes[0] < 1 or axes[-1] > I.n:
        raise ValidationError(f"axes must lie in 1..{I.n}", witness=axes)
    k, d = len(axes), I.d
    ax0 = [a - 1 for a in axes]
    off = [i for i in range(I.n) if i not in ax0]
    blocks = []
    for b in I.partition.blocks:
        if isinstance(b, AffineBlock):
            S = coordinate_section(b.lattice, axes)
            if S.is_whole_space():
                return uniform_ideal(k, d - 1)
            if S.rank >= 1:
                blocks.append(AffineBlock(S))
            # a rank-0 section meets every translate in at most one point
            continue
        patterns: dict[tuple, list] = {}
        for p in b.points:
            patterns.setdefault(tuple(p[i] for i in off), []).append(tuple(p[i] for i in ax0))
        for pts in patterns.values():
            if len(pts) >= d:
                blocks.append(FiniteBlock(tuple(pts)))
    if I.kind == "lattice2":
        sections = [b.lattice for b in blocks]
        return degree2_from_lattice(sections[0] if sections else zero_lattice(k))
    return paving_from_blocks(blocks, d, k)


# ---------------------------------------------------------------------------
# brute-force references used by tests and the verification suite


def brute_force_contains(I: TropicalIdeal, S: Iterable[Sequence[int]]) -> bool:
    """Cycle test by covering S with the circuits found inside it."""
    pts = make_support(S, I.n)
    if not pts:
        return True
    covered: set = set()
    for C in circuits_in_window(I, pts):
        covered.update(C)
    return covered == set(pts)


def random_support(rng: random.Random, n: int, size: int, radius: int) -> Support:
    pts: set = set()
    while len(pts) < size:
        pts.add(tuple(rng.randint(-radius, radius) for _ in range(n)))
    return tuple(sorted(pts))


def probe_window(n: int, radius: int = 3) -> Window:
    return Window((-radius,) * n, (radius,) * n)


__all__ = [
    "KINDS",
    "Support",
    "TropicalIdeal",
    "binomial_lattice",
    "brute_force_contains",
    "circuit_signature",
    "circuits_in_window",
    "contains",
    "degree",
    "degree2_from_lattice",
    "degree3_from_pair",
    "extend_matroid",
    "is_circuit",
    "is_subgroup_coset",
    "m_s_ideal",
    "make_support",
    "paving_from_blocks",
    "paving_ideal",
    "probe_window",
    "random_support",
    "rank_oracle",
    "remark_block",
    "remark_example",
    "restrict_matroid",
    "restrict_vars",
    "semantically_equal",
    "uniform_ideal",
    "verify_degree_on_window",
]
