"""Finite matroids on labeled ground sets, with brute-force axiom checkers.

Circuits are the stored representation.  Labels are either integer
vectors (tuples) or string tokens; internally every subset is an int
bitmask over the sorted ground list.  The verifiers use the 2^n-table
kernels from :mod:`._kernels` when the ground set is small enough and a
plain pairwise scan otherwise, so they stay usable as independent
oracles for anything the ideal layer produces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Sequence

import numpy as np

from . import _kernels, config
from .errors import ResourceLimitError, ValidationError

Label = Hashable


def label_key(x):
    """Sort key putting integer vectors before tokens."""
    if isinstance(x, tuple):
        return (0, x)
    if isinstance(x, int):
        return (0, (x,))
    return (1, str(x))


def _sorted_labels(labels: Iterable) -> tuple:
    return tuple(sorted(set(labels), key=label_key))


@dataclass
class AxiomReport:
    passed: bool = True
    failures: list = field(default_factory=list)

    def fail(self, axiom: str, witness) -> None:
        self.passed = False
        self.failures.append((axiom, witness))

    def merge(self, other: "AxiomReport", prefix: str = "") -> "AxiomReport":
        for axiom, w in other.failures:
            self.fail(prefix + axiom, w)
        return self

    def __bool__(self) -> bool:
        return self.passed


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class FiniteMatroid:
    """A matroid on a finite set of labels, given by its circuits."""

    __slots__ = ("ground", "circuits", "rank", "_index", "_masks", "_by_elem", "_hyperplanes")

    def __init__(self, ground: Iterable[Label], circuits: Iterable[Iterable[Label]], validate: bool = False):
        self.ground = _sorted_labels(ground)
        self._index = {x: i for i, x in enumerate(self.ground)}
        masks = set()
        for C in circuits:
            m = self.mask(C)
            if m == 0:
                raise ValidationError("the empty set is not a circuit")
            masks.add(m)
        self._masks = tuple(sorted(masks, key=lambda m: (m.bit_count(), _bits(m))))
        if validate:
            rep = verify_circuit_axioms(self._masks_as_sets(), self.ground)
            if not rep.passed:
                raise ValidationError(f"not a circuit family: {rep.failures[0]}", witness=rep)
        self.circuits = tuple(frozenset(self.ground[i] for i in _bits(m)) for m in self._masks)
        by_elem: list[list[int]] = [[] for _ in self.ground]
        for m in self._masks:
            for i in _bits(m):
                by_elem[i].append(m)
        self._by_elem = tuple(tuple(x) for x in by_elem)
        self._hyperplanes = None
        self.rank = self._rank_mask((1 << len(self.ground)) - 1)

    def _masks_as_sets(self):
        return [frozenset(self.ground[i] for i in _bits(m)) for m in self._masks]

    # -- subsets as masks -------------------------------------------------

    def mask(self, X: Iterable[Label]) -> int:
        m = 0
        for x in X:
            try:
                m |= 1 << self._index[x]
            except KeyError:
                raise KeyError(f"label {x!r} is not in the ground set") from None
        return m

    def labels(self, mask: int) -> tuple:
        return tuple(self.ground[i] for i in _bits(mask))

    @property
    def circuit_masks(self) -> tuple[int, ...]:
        return self._masks

    def _rank_mask(self, X: int) -> int:
        indep = 0
        r = 0
        for i in _bits(X):
            trial = indep | (1 << i)
            if any(c & ~trial == 0 for c in self._by_elem[i]):
                continue
            indep = trial
            r += 1
        return r

    # -- queries ------------------------------------------------------------

    def rank_of(self, X: Iterable[Label]) -> int:
        return self._rank_mask(self.mask(X))

    def is_independent(self, X: Iterable[Label]) -> bool:
        m = self.mask(X)
        return not any(c & ~m == 0 for c in self._masks)

    def closure(self, X: Iterable[Label]) -> frozenset:
        m = self.mask(X)
        r = self._rank_mask(m)
        cl = m
        for i in range(len(self.ground)):
            if not (m >> i) & 1 and self._rank_mask(m | (1 << i)) == r:
                cl |= 1 << i
        return frozenset(self.labels(cl))

    def restriction(self, X: Iterable[Label]) -> "FiniteMatroid":
        m = self.mask(X)
        return FiniteMatroid(self.labels(m), [self.labels(c) for c in self._masks if c & ~m == 0])

    def hyperplanes(self) -> tuple[frozenset, ...]:
        if self._hyperplanes is None:
            self._hyperplanes = hyperplanes_of(self)
        return self._hyperplanes

    def __len__(self) -> int:
        return len(self.ground)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteMatroid):
            return NotImplemented
        return self.ground == other.ground and set(self.circuits) == set(other.circuits)

    def __hash__(self) -> int:
        return hash((self.ground, frozenset(self.circuits)))

    def __repr__(self) -> str:
        return f"FiniteMatroid(|E|={len(self.ground)}, rank={self.rank}, circuits={len(self.circuits)})"


def rank_of(M: FiniteMatroid, X: Iterable[Label]) -> int:
    return M.rank_of(X)


def is_paving(M: FiniteMatroid) -> bool:
    return all(len(C) >= M.rank for C in M.circuits)


def rank_table(M: FiniteMatroid, limit: int | None = None) -> np.ndarray:
    """Rank of every subset (indexed by bitmask), via the dependence closure."""
    limit = config.MAX_BITMASK_GROUND if limit is None else limit
    n = len(M.ground)
    if n > limit:
        raise ResourceLimitError(f"rank table over {n} elements exceeds the bitmask limit {limit}")
    dep = _kernels.dependent_table(np.array(M.circuit_masks, dtype=np.int64), n)
    return _kernels.rank_table(dep, n)


# ---------------------------------------------------------------------------
# axiom verifiers


def _index_sets(family: Iterable[Iterable[Label]], ground: Sequence[Label], rep: AxiomReport, axiom: str):
    index = {x: i for i, x in enumerate(ground)}
    masks = []
    for S in family:
        S = list(S)
        unknown = [x for x in S if x not in index]
        if unknown:
            rep.fail(axiom, ("not in ground", tuple(unknown)))
            continue
        m = 0
        for x in S:
            m |= 1 << index[x]
        masks.append(m)
    return masks


def verify_circuit_axioms(circuits: Iterable[Iterable[Label]], ground: Iterable[Label], limit: int | None = None) -> AxiomReport:
    """Check (C1) nonempty, (C2) incomparable, (C3) circuit elimination."""
    ground = _sorted_labels(ground)
    rep = AxiomReport()
    masks = sorted(set(_index_sets(circuits, ground, rep, "C0")))
    lab = lambda m: tuple(ground[i] for i in _bits(m))  # noqa: E731
    if 0 in masks:
        rep.fail("C1", ())
        masks.remove(0)
    for a, b in combinations(masks, 2):
        if a & b in (a, b):
            rep.fail("C2", (lab(a), lab(b)))
            if len(rep.failures) >= 10:
                return rep
    if not rep.passed:
        return rep
    limit = config.MAX_BITMASK_GROUND if limit is None else limit
    if not masks:
        return rep
    if len(ground) <= limit:
        arr = np.array(masks, dtype=np.int64)
        dep = _kernels.dependent_table(arr, len(ground))
        i, j, e = (int(x) for x in _kernels.elimination_failure(arr, dep))
        if i >= 0:
            rep.fail("C3", (lab(masks[i]), lab(masks[j]), ground[e]))
        return rep
    for a, b in combinations(masks, 2):
        common = a & b
        if not common:
            continue
        union = a | b
        for e in _bits(common):
            target = union & ~(1 << e)
            if not any(c & ~target == 0 for c in masks):
                rep.fail("C3", (lab(a), lab(b), ground[e]))
                return rep
    return rep


def verify_hyperplane_axioms(H: Iterable[Iterable[Label]], ground: Iterable[Label], limit: int | None = None) -> AxiomReport:
    """Check (H1)-(H3); (HF) is vacuous on a finite ground set."""
    ground = _sorted_labels(ground)
    rep = AxiomReport()
    masks = sorted(set(_index_sets(H, ground, rep, "H0")))
    lab = lambda m: tuple(ground[i] for i in _bits(m))  # noqa: E731
    full = (1 << len(ground)) - 1
    if full in masks:
        rep.fail("H1", lab(full))
    for a, b in combinations(masks, 2):
        if a & b in (a, b):
            rep.fail("H2", (lab(a), lab(b)))
    if not rep.passed or len(masks) < 2:
        return rep
    # the kernel packs subsets into int64 masks; its cost is polynomial, so no bitmask-table limit
    limit = 62 if limit is None else min(limit, 62)
    if len(ground) <= limit:
        i, j, x = (int(v) for v in _kernels.h3_failure(np.array(masks, dtype=np.int64), len(ground)))
        if i >= 0:
            rep.fail("H3", (lab(masks[i]), lab(masks[j]), ground[x]))
        return rep
    for a, b in combinations(masks, 2):
        for x in range(len(ground)):
            need = (a & b) | (1 << x)
            if not any(need & ~h == 0 for h in masks):
                rep.fail("H3", (lab(a), lab(b), ground[x]))
                return rep
    return rep


def verify_d_partition(P: Iterable[Iterable[Label]], ground: Iterable[Label], d: int) -> AxiomReport:
    """Check (P1) at least two blocks, (P2) blocks of size >= d, (P3) unique cover of d-sets."""
    ground = _sorted_labels(ground)
    rep = AxiomReport()
    if len(ground) < d + 1:
        rep.fail("P0", f"ground has {len(ground)} < d+1 = {d + 1} elements")
        return rep
    index = {x: i for i, x in enumerate(ground)}
    blocks = []
    for S in P:
        S = frozenset(S)
        if not S <= index.keys():
            rep.fail("P0", ("not in ground", tuple(sorted(S - index.keys(), key=label_key))))
            continue
        blocks.append(S)
    if len(blocks) < 2:
        rep.fail("P1", len(blocks))
    for S in blocks:
        if len(S) < d:
            rep.fail("P2", tuple(sorted(S, key=label_key)))
    count: dict[frozenset, int] = {}
    for S in blocks:
        for D in combinations(sorted(S, key=label_key), d):
            key = frozenset(D)
            count[key] = count.get(key, 0) + 1
    for D in combinations(ground, d):
        c = count.get(frozenset(D), 0)
        if c != 1:
            rep.fail("P3", (D, c))
            if len(rep.failures) >= 10:
                break
    return rep


# ---------------------------------------------------------------------------
# hyperplanes


def hyperplanes_of(M: FiniteMatroid) -> tuple[frozenset, ...]:
    """Closures of the independent sets of size rank - 1."""
    r = M.rank
    if r == 0:
        return ()
    n = len(M.ground)
    found: set[int] = set()
    for combo in combinations(range(n), r - 1):
        m = 0
        for i in combo:
            m |= 1 << i
        if any(c & ~m == 0 for c in M.circuit_masks):
            continue
        if any(m & ~h == 0 for h in found):
            continue
        cl = m
        for i in range(n):
            if not (m >> i) & 1 and M._rank_mask(m | (1 << i)) == r - 1:
                cl |= 1 << i
        found.add(cl)
    hs = sorted(found, key=lambda h: (-h.bit_count(), _bits(h)))
    return tuple(frozenset(M.labels(h)) for h in hs)


def paving_circuits(blocks: Iterable[Iterable[Label]], ground: Sequence[Label], d: int) -> list[frozenset]:
    """Circuits of the rank-(d+1) paving matroid whose hyperplanes are ``blocks``.

    (d+1)-subsets of a block, plus (d+2)-subsets none of whose
    (d+1)-subsets lies in a block.
    """
    ground = _sorted_labels(ground)
    dependent: set[frozenset] = set()
    for S in blocks:
        S = sorted(S, key=label_key)
        if len(S) > d:
            dependent.update(frozenset(c) for c in combinations(S, d + 1))
    out = sorted(dependent, key=lambda c: sorted(c, key=label_key))
    for T in combinations(ground, d + 2):
        if not any(frozenset(c) in dependent for c in combinations(T, d + 1)):
            out.append(frozenset(T))
    return out


def _circuits_from_cocircuits(cocircuits: list[int], n: int, limit: int) -> list[int]:
    """Minimal nonempty sets meeting no cocircuit in exactly one element."""
    if n > limit:
        raise ResourceLimitError(f"brute-force circuit search over {n} elements exceeds limit {limit}")
    found: list[int] = []
    for size in range(1, n + 1):
        for combo in combinations(range(n), size):
            m = 0
            for i in combo:
                m |= 1 << i
            if any(c & ~m == 0 for c in found):
                continue
            if all((m & D).bit_count() != 1 for D in cocircuits):
                found.append(m)
    return found


def matroid_from_hyperplanes(H: Iterable[Iterable[Label]], ground: Iterable[Label], d: int | None = None) -> FiniteMatroid:
    """The matroid with hyperplanes H.

    With ``d`` given, H must be a d-partition and the paving description
    of the circuits is used.  Without it the circuits are found by brute
    force from the cocircuits (complements of hyperplanes).
    """
    ground = _sorted_labels(ground)
    H = [frozenset(h) for h in H]
    if d is not None:
        rep = verify_d_partition(H, ground, d)
        if not rep.passed:
            raise ValidationError(f"not a {d}-partition: {rep.failures[0]}", witness=rep)
        M = FiniteMatroid(ground, paving_circuits(H, ground, d))
        M._hyperplanes = tuple(sorted(H, key=lambda h: (-len(h), sorted(h, key=label_key))))
        return M
    rep = verify_hyperplane_axioms(H, ground)
    if not rep.passed:
        raise ValidationError(f"not a hyperplane family: {rep.failures[0]}", witness=rep)
    index = {x: i for i, x in enumerate(ground)}
    full = (1 << len(ground)) - 1
    cocircuits = [full & ~sum(1 << index[x] for x in h) for h in H]
    masks = _circuits_from_cocircuits(cocircuits, len(ground), config.MAX_BITMASK_GROUND)
    return FiniteMatroid(ground, [[ground[i] for i in _bits(m)] for m in masks])


# ---------------------------------------------------------------------------
# simplification


def parallel_classes(M: FiniteMatroid) -> list[tuple]:
    """Classes of ``a ~ b`` iff a == b or {a, b} is a circuit."""
    parent = list(range(len(M.ground)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for m in M.circuit_masks:
        if m.bit_count() == 2:
            a, b = _bits(m)
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list] = {}
    for i, x in enumerate(M.ground):
        groups.setdefault(find(i), []).append(x)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: label_key(g[0]))


def simplification(M: FiniteMatroid) -> tuple[FiniteMatroid, dict]:
    """si(M) on class representatives (smallest label), and the label -> rep map."""
    loops = [C for C in M.circuits if len(C) == 1]
    if loops:
        raise ValidationError("cannot simplify a matroid with loops", witness=sorted(loops[0], key=label_key))
    class_map = {}
    for cls in parallel_classes(M):
        for x in cls:
            class_map[x] = cls[0]
    circuits = set()
    for C in M.circuits:
        if len(C) >= 3:
            circuits.add(frozenset(class_map[x] for x in C))
    return FiniteMatroid(set(class_map.values()), circuits), class_map


# ---------------------------------------------------------------------------
# data

NON_PAPPUS_LINES = (
    ("1", "2", "3"),
    ("1", "5", "7"),
    ("1", "6", "8"),
    ("2", "4", "7"),
    ("2", "6", "9"),
    ("3", "4", "8"),
    ("3", "5", "9"),
    ("4", "5", "6"),
)


def uniform_matroid(r: int, ground: Iterable[Label]) -> FiniteMatroid:
    ground = _sorted_labels(ground)
    return FiniteMatroid(ground, combinations(ground, r + 1) if r < len(ground) else ())


def non_pappus() -> FiniteMatroid:
    """The Pappus configuration with the line {7, 8, 9} removed (rank 3, 9 points)."""
    ground = tuple(str(i) for i in range(1, 10))
    lines = [frozenset(l) for l in NON_PAPPUS_LINES]
    covered = {frozenset(p) for l in lines for p in combinations(l, 2)}
    pairs = [frozenset(p) for p in combinations(ground, 2) if frozenset(p) not in covered]
    return matroid_from_hyperplanes(lines + pairs, ground, d=2)
