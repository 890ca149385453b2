"""Shipped example ideals and an independent dependency oracle shared by the tests."""

from __future__ import annotations

from itertools import combinations

from tropical_paving.ideals import degree2_from_lattice, extend_matroid, m_s_ideal, remark_example
from tropical_paving.lattices import hnf, lattice_sum, member, vsub
from tropical_paving.matroids import FiniteMatroid, non_pappus
from tropical_paving.partitions import AffineBlock, Window

POWERS = {str(i): (2 ** (i - 1),) for i in range(1, 10)}


def nonpappus_ideal():
    return extend_matroid(non_pappus(), POWERS)


def shipped_ideals() -> dict:
    return {
        "lattice2 2Z": degree2_from_lattice(hnf([(2,)])),
        "lattice2 <(2,0),(0,2)>": degree2_from_lattice(hnf([(2, 0), (0, 2)])),
        "m-power m=2 S=0..5": m_s_ideal(2, range(6)),
        "non-Pappus extension": nonpappus_ideal(),
        "remark d=3": remark_example(3),
    }


# windows of at most 12 points for each shipped ideal
SMALL_WINDOWS = {
    "lattice2 2Z": [Window.interval(0, 11), Window.interval(-6, 5)],
    "lattice2 <(2,0),(0,2)>": [Window((0, 0), (3, 2)), Window((-1, -1), (1, 2))],
    "m-power m=2 S=0..5": [Window.interval(0, 11), [(p,) for p in (0, 1, 2, 3, 4, 8, 16, 32, 33, 34, 36, 40)]],
    "non-Pappus extension": [Window.interval(0, 11), sorted(set(POWERS.values()) | {(0,), (3,), (5,)})],
    "remark d=3": [Window((0, 0), (5, 1)), Window((0, -1), (3, 1))],
}


def relabel(M: FiniteMatroid, mapping: dict) -> FiniteMatroid:
    return FiniteMatroid([mapping[x] for x in M.ground], [[mapping[x] for x in C] for C in M.circuits])


def _same_class(Q, x, y) -> bool:
    return member(Q, vsub(x, y))


def dependent(I, X) -> bool:
    """Dependence of a finite point set straight from the definition of the matroid.

    Two points are parallel when they differ by the quotient lattice; a set
    of d+1 pairwise non-parallel points is dependent iff one translate of a
    block holds all of them; anything with more classes is dependent.
    """
    X = list(X)
    Q = I.quotient_lattice
    d = I.d
    for x, y in combinations(X, 2):
        if _same_class(Q, x, y):
            return True
    k = len(X)
    if k <= d:
        return False
    if k >= d + 2:
        return True
    x0 = X[0]
    for b in I.partition.blocks:
        if isinstance(b, AffineBlock):
            M = lattice_sum(b.lattice, Q) if Q.rank else b.lattice
            if all(member(M, vsub(x, x0)) for x in X):
                return True
            continue
        for p in b.points:
            u = vsub(x0, p)
            if all(any(_same_class(Q, vsub(x, u), q) for q in b.points) for x in X):
                return True
    return False


def definitional_contains(I, S) -> bool:
    """S is a cycle iff every point lies in a minimal dependent subset of S."""
    S = list(S)
    dep = [frozenset(T) for r in range(1, len(S) + 1) for T in combinations(S, r) if dependent(I, T)]
    minimal = [T for T in dep if not any(U < T for U in dep)]
    covered = set().union(*minimal) if minimal else set()
    return covered == set(S)
