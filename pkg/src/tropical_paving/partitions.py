"""Translation-invariant d-partitions given by finitely many generating blocks.

A :class:`GeneratorSet` lists orbit representatives of blocks; the
partition it stands for contains every translate of every listed block,
plus each d-subset not inside any such translate (the *default* blocks,
never materialized).

Everything lives in a group ``G = Z^n / L`` described by a
:class:`~tropical_paving.lattices.QuotientGroup`.  The plain Z^n case is
``L = {0}``; there the quotient machinery reduces to the identity, so the
"quotient variants" below are the same functions.

Block kinds:

* :class:`FiniteBlock` - finitely many group elements, normalized so the
  representative is canonical under translation (for ``L = {0}``: the
  lexicographically smallest point is the origin).
* :class:`AffineBlock` - a coset of a subgroup ``M / L`` with
  ``L ⊊ M ⊊ Z^n`` and ``M / L`` infinite.  Finite subgroups are turned
  into :class:`FiniteBlock` on construction.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from . import config
from .errors import DimensionError, ResourceLimitError, ValidationError
from .lattices import (
    IntegerLattice,
    IntVector,
    QuotientGroup,
    int_det,
    intersect,
    is_sublattice,
    member,
    trivial_group,
    vadd,
    vsub,
)


@dataclass(frozen=True)
class FiniteBlock:
    points: tuple[IntVector, ...]

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class AffineBlock:
    """The subgroup ``lattice / L`` (offset normalized to zero)."""

    lattice: IntegerLattice


Block = FiniteBlock | AffineBlock


@dataclass(frozen=True)
class BlockRef:
    """A block translate ``shift + blocks[index]``; ``index`` None = default block."""

    index: int | None
    shift: IntVector | None = None

    @property
    def is_default(self) -> bool:
        return self.index is None


DEFAULT = BlockRef(None, None)


@dataclass(frozen=True)
class Violation:
    axiom: str
    blocks: tuple[int, ...]
    shift: IntVector | None = None
    overlap: tuple[IntVector, ...] | None = None
    detail: str = ""

    def __str__(self) -> str:
        parts = [f"({self.axiom}) violated by block(s) {list(self.blocks)}"]
        if self.shift is not None:
            parts.append(f"shift {list(self.shift)}")
        if self.overlap is not None:
            parts.append("overlap " + " ".join(str(list(p)) for p in self.overlap))
        if self.detail:
            parts.append(self.detail)
        return "; ".join(parts)


class AxiomViolationError(ValidationError):
    pass


# ---------------------------------------------------------------------------
# windows


@dataclass(frozen=True)
class Window:
    """The box of integer points ``lo <= x <= hi`` (coordinatewise)."""

    lo: IntVector
    hi: IntVector

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise DimensionError("window corners have different dimensions")
        if any(a > b for a, b in zip(self.lo, self.hi)):
            raise ValueError(f"empty window {self.lo}..{self.hi}")

    @classmethod
    def interval(cls, lo: int, hi: int) -> "Window":
        return cls((lo,), (hi,))

    @property
    def dim(self) -> int:
        return len(self.lo)

    @property
    def size(self) -> int:
        return math.prod(b - a + 1 for a, b in zip(self.lo, self.hi))

    def points(self, limit: int | None = None) -> list[IntVector]:
        limit = config.MAX_WINDOW_POINTS if limit is None else limit
        if self.size > limit:
            raise ResourceLimitError(f"window has {self.size} points, limit is {limit}")
        return list(product(*(range(a, b + 1) for a, b in zip(self.lo, self.hi))))

    def __contains__(self, v) -> bool:
        return all(a <= x <= b for a, x, b in zip(self.lo, v, self.hi))


def as_points(ground: "Window | Iterable[Sequence[int]]", limit: int | None = None) -> list[IntVector]:
    if isinstance(ground, Window):
        return ground.points(limit)
    pts = sorted({tuple(int(x) for x in p) for p in ground})
    limit = config.MAX_WINDOW_POINTS if limit is None else limit
    if len(pts) > limit:
        raise ResourceLimitError(f"ground set has {len(pts)} points, limit is {limit}")
    return pts


# ---------------------------------------------------------------------------
# sparseness


def difference_counts(S: Iterable[IntVector]) -> Counter:
    S = list(S)
    return Counter(vsub(a, b) for a in S for b in S if a != b)


def is_d_sparse(S: Iterable[Sequence[int]], d: int) -> bool:
    """No nonzero translate of S meets S in d or more points."""
    if d < 1:
        raise ValueError("d must be positive")
    pts = {tuple(p) for p in S}
    counts = difference_counts(pts)
    return all(c < d for c in counts.values())


def power_truncation_index(m: int, diameter: int) -> int:
    """Smallest k with ``m**k * (m - 1) > diameter``.

    For blocks ``m^S``, indices at or beyond this k cannot produce a
    difference that fits in a window of the given diameter, so truncating
    S there leaves every lookup inside the window unchanged.
    """
    k = 0
    while m**k * (m - 1) <= diameter:
        k += 1
    return k


# ---------------------------------------------------------------------------
# normalization


def _normalize_finite(group: QuotientGroup, pts: Iterable[Sequence[int]]) -> FiniteBlock:
    raw = [tuple(int(x) for x in p) for p in pts]
    if not raw:
        raise ValidationError("finite block must be nonempty")
    dims = {len(p) for p in raw}
    if dims != {group.ambient_dim}:
        raise DimensionError(f"block points of dim {sorted(dims)} in Z^{group.ambient_dim}")
    canon = [group.canonical_rep(p) for p in raw]
    if len(set(canon)) != len(canon):
        raise ValidationError("finite block has repeated points", witness=raw)
    if group.is_trivial_lattice:
        lo = min(canon)
        return FiniteBlock(tuple(sorted(vsub(p, lo) for p in canon)))
    # translation-invariant choice: among translates containing the origin,
    # the lexicographically largest sorted tuple (min-at-origin when L = 0)
    best = max(tuple(sorted(group.sub(p, q) for p in canon)) for q in canon)
    return FiniteBlock(best)


def _subgroup_elements(group: QuotientGroup, M: IntegerLattice) -> list[IntVector]:
    """Elements of the finite subgroup M / L as canonical representatives."""
    seen = {group.identity()}
    frontier = [group.identity()]
    while frontier:
        nxt = []
        for x in frontier:
            for b in M.basis:
                for y in (group.add(x, b), group.sub(x, b)):
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
        frontier = nxt
    return sorted(seen)


def normalize_block(group: QuotientGroup, block) -> Block:
    if isinstance(block, FiniteBlock):
        return _normalize_finite(group, block.points)
    if isinstance(block, AffineBlock):
        M = block.lattice
        if M.ambient_dim != group.ambient_dim:
            raise DimensionError("block lattice lives in the wrong ambient space")
        if not is_sublattice(group.lattice, M):
            raise ValidationError("affine block lattice must contain the quotient lattice", witness=M)
        if M.rank == group.lattice.rank:
            if group.is_trivial_lattice or M == group.lattice:
                raise ValidationError("affine block must be infinite (lattice rank >= 1)", witness=M)
            return _normalize_finite(group, _subgroup_elements(group, M))
        return AffineBlock(M)
    # bare point collections are finite blocks
    return _normalize_finite(group, block)


def _block_key(b: Block):
    if isinstance(b, FiniteBlock):
        return (0, len(b.points), b.points)
    return (1, b.lattice.rank, b.lattice.basis)


# ---------------------------------------------------------------------------
# generator sets


@dataclass(frozen=True)
class GeneratorSet:
    """Orbit representatives of the listed blocks of a d-partition of G."""

    group: QuotientGroup
    d: int
    blocks: tuple[Block, ...]

    @classmethod
    def build(cls, blocks: Iterable, d: int, group: QuotientGroup | int) -> "GeneratorSet":
        if isinstance(group, int):
            group = trivial_group(group)
        if d < 0:
            raise ValidationError("d must be nonnegative")
        normed = {normalize_block(group, b) for b in blocks}
        if d == 0 and normed:
            raise ValidationError("d = 0 only admits the uniform partition (no blocks)")
        return cls(group, d, tuple(sorted(normed, key=_block_key)))

    @property
    def ambient_dim(self) -> int:
        return self.group.ambient_dim


def _index_ratio(big: IntegerLattice, small: IntegerLattice) -> int:
    """[big : small] for small ⊆ big of equal rank."""
    if small.rank == 0:
        return 1

    def gram_det(B):
        return int_det([[sum(x * y for x, y in zip(r, s)) for s in B] for r in B])

    ratio = gram_det(small.basis) // gram_det(big.basis)
    root = math.isqrt(ratio)
    assert root * root == ratio
    return root


def check_generator_axioms(A: GeneratorSet) -> Violation | None:
    """None when (A1)-(A3) hold, else the first violation found."""
    G, d, blocks = A.group, A.d, A.blocks
    order = G.order()
    for i, b in enumerate(blocks):
        if isinstance(b, AffineBlock) and b.lattice.is_whole_space():
            return Violation("A1", (i,), detail="block is the whole group")
        if isinstance(b, FiniteBlock) and order is not None and len(b) >= order:
            return Violation("A1", (i,), detail="block is the whole group")
        if isinstance(b, FiniteBlock) and len(b) < d:
            return Violation("A2", (i,), detail=f"block has {len(b)} < d = {d} points")
    for i in range(len(blocks)):
        for j in range(i, len(blocks)):
            v = _pair_violation(G, d, i, j, blocks[i], blocks[j])
            if v is not None:
                return v
    return None


def _pair_violation(G: QuotientGroup, d: int, i: int, j: int, B1: Block, B2: Block) -> Violation | None:
    if isinstance(B1, FiniteBlock) and isinstance(B2, FiniteBlock):
        set2 = set(B2.points)
        counts = Counter(G.sub(a, b) for a in B1.points for b in B2.points)
        for u in sorted(counts):
            c = counts[u]
            if c < d:
                continue
            if c == len(B1) == len(B2):
                continue  # B1 == u + B2
            overlap = tuple(a for a in B1.points if G.sub(a, u) in set2)
            return Violation("A3", (i, j), u, overlap)
        return None
    if isinstance(B1, AffineBlock) and isinstance(B2, AffineBlock):
        if i == j or B1.lattice == B2.lattice:
            return None
        meet = intersect(B1.lattice, B2.lattice)
        if meet.rank > G.lattice.rank:
            return Violation("A3", (i, j), G.identity(), None, "translates share infinitely many points")
        size = _index_ratio(meet, G.lattice)
        if size >= d:
            return Violation("A3", (i, j), G.identity(), None, f"translates share {size} points")
        return None
    # finite against affine: some coset of M holding >= d points of the finite block
    F, Aff, fi, ai = (B1, B2, i, j) if isinstance(B1, FiniteBlock) else (B2, B1, j, i)
    groups: dict[IntVector, list[IntVector]] = defaultdict(list)
    for p in F.points:
        groups[Aff.lattice.reduce(p)].append(p)
    for key in sorted(groups):
        if len(groups[key]) >= d:
            return Violation("A3", (fi, ai), key, tuple(groups[key]))
    return None


# ---------------------------------------------------------------------------
# validated partitions


@dataclass(frozen=True)
class InvariantPartition:
    """The translation-invariant d-partition generated by a valid GeneratorSet."""

    generators: GeneratorSet
    _sets: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        v = check_generator_axioms(self.generators)
        if v is not None:
            raise AxiomViolationError(str(v), witness=v)
        order = self.group.order()
        if order is not None and order < self.d + 1:
            raise ValidationError(f"group of order {order} is too small for a {self.d}-partition")
        sets = tuple(frozenset(b.points) if isinstance(b, FiniteBlock) else None for b in self.blocks)
        object.__setattr__(self, "_sets", sets)

    @classmethod
    def build(cls, blocks: Iterable, d: int, group: QuotientGroup | int) -> "InvariantPartition":
        return cls(GeneratorSet.build(blocks, d, group))

    @property
    def group(self) -> QuotientGroup:
        return self.generators.group

    @property
    def d(self) -> int:
        return self.generators.d

    @property
    def blocks(self) -> tuple[Block, ...]:
        return self.generators.blocks

    @property
    def ambient_dim(self) -> int:
        return self.group.ambient_dim

    def in_translate(self, ref: BlockRef, x: IntVector) -> bool:
        """Whether the group element of ``x`` lies in ``ref.shift + blocks[ref.index]``."""
        b = self.blocks[ref.index]
        if isinstance(b, FiniteBlock):
            return self.group.sub(x, ref.shift) in self._sets[ref.index]
        return member(b.lattice, vsub(x, ref.shift))

    def translate_points(self, ref: BlockRef) -> frozenset[IntVector] | None:
        """Elements of a finite block translate (None for affine blocks)."""
        b = self.blocks[ref.index]
        if isinstance(b, AffineBlock):
            return None
        return frozenset(self.group.add(ref.shift, p) for p in b.points)

    def classes(self, pts: Iterable[Sequence[int]]) -> list[IntVector]:
        """Distinct canonical representatives of the given points, sorted."""
        return sorted({self.group.canonical_rep(tuple(p)) for p in pts})


# ---------------------------------------------------------------------------
# lookup


def find_block(P: InvariantPartition, D: Sequence[Sequence[int]]) -> BlockRef:
    """The unique block translate holding the d-set D (listed or default)."""
    G = P.group
    pts = [tuple(int(x) for x in p) for p in D]
    if len(pts) != P.d:
        raise ValueError(f"expected {P.d} points, got {len(pts)}")
    canon = sorted(G.canonical_rep(p) for p in pts)
    if len(set(canon)) != len(canon):
        raise ValueError("repeated points in d-set")
    return _find_canon(P, canon)


def _find_canon(P: InvariantPartition, canon: Sequence[IntVector]) -> BlockRef:
    if not canon:
        return DEFAULT
    G = P.group
    d0 = canon[0]
    for idx, b in enumerate(P.blocks):
        if isinstance(b, FiniteBlock):
            fset = P._sets[idx]
            hits = []
            for p in b.points:
                u = G.sub(d0, p)
                if all(G.sub(x, u) in fset for x in canon[1:]):
                    hits.append(u)
            if hits:
                return BlockRef(idx, min(hits))
        else:
            if all(member(b.lattice, vsub(x, d0)) for x in canon[1:]):
                return BlockRef(idx, b.lattice.reduce(d0))
    return DEFAULT


def contains_in_block(P: InvariantPartition, X: Iterable[Sequence[int]]) -> BlockRef | None:
    """The block translate containing the set X, if any.

    X is read as a set of group elements.  A default block only contains
    X when X has exactly d elements.
    """
    canon = P.classes(X)
    if len(canon) < P.d:
        raise ValueError(f"need at least d = {P.d} distinct elements, got {len(canon)}")
    ref = _find_canon(P, canon[: P.d])
    if ref.is_default:
        return DEFAULT if len(canon) == P.d else None
    if all(P.in_translate(ref, x) for x in canon[P.d :]):
        return ref
    return None


@dataclass(frozen=True)
class Trace:
    index: int
    shift: IntVector
    points: tuple[IntVector, ...]


def class_traces(P: InvariantPartition, classes: Sequence[IntVector], min_points: int) -> list[Trace]:
    """Listed block translates meeting a finite set of group elements.

    ``classes`` must be canonical representatives.  Each translate meeting
    the set in at least ``min_points`` elements is reported once, with the
    smallest valid shift.
    """
    G = P.group
    classes = list(classes)
    out: list[Trace] = []
    for idx, b in enumerate(P.blocks):
        if isinstance(b, FiniteBlock):
            fset = P._sets[idx]
            counts = Counter(G.sub(c, p) for c in classes for p in b.points)
            seen: dict[frozenset, IntVector] = {}
            for u in sorted(counts):
                if counts[u] < min_points:
                    continue
                key = frozenset(G.add(u, p) for p in b.points) if not G.is_trivial_lattice else u
                if key in seen:
                    continue
                seen[key] = u
                trace = tuple(c for c in classes if G.sub(c, u) in fset)
                out.append(Trace(idx, u, trace))
        else:
            groups: dict[IntVector, list[IntVector]] = defaultdict(list)
            for c in classes:
                groups[b.lattice.reduce(c)].append(c)
            for key in sorted(groups):
                if len(groups[key]) >= min_points:
                    out.append(Trace(idx, key, tuple(groups[key])))
    out.sort(key=lambda t: (t.index, t.shift))
    return out


def blocks_meeting_window(
    P: InvariantPartition, W: "Window | Iterable[Sequence[int]]", min_points: int, limit: int | None = None
) -> list[Trace]:
    """Listed block translates meeting the window in at least ``min_points`` points.

    Traces are reported as window points (several per class when L ≠ 0).
    """
    pts = as_points(W, limit)
    by_class: dict[IntVector, list[IntVector]] = defaultdict(list)
    for p in pts:
        by_class[P.group.canonical_rep(p)].append(p)
    out = []
    for t in class_traces(P, sorted(by_class), 1):
        window_pts = tuple(sorted(p for c in t.points for p in by_class[c]))
        if len(window_pts) >= min_points:
            out.append(Trace(t.index, t.shift, window_pts))
    return out


# quotient variants: the engine above already works over Z^n / L
check_generator_axioms_q = check_generator_axioms
find_block_q = find_block
contains_in_block_q = contains_in_block


def shift_block(P: InvariantPartition, index: int, u: Sequence[int]) -> Block:
    """The orbit representative of ``u + blocks[index]`` (always the block itself)."""
    b = P.blocks[index]
    if isinstance(b, AffineBlock):
        return b
    return _normalize_finite(P.group, [vadd(tuple(u), p) for p in b.points])


def d_subsets(points: Sequence[IntVector], d: int) -> Iterator[tuple[IntVector, ...]]:
    return combinations(points, d)
