"""Brute-force search for realizations of degree-2 ideals over small finite fields.

A zero-dimensional degree-2 ideal J in ``K[x_1^{±1}, .., x_n^{±1}]`` has a
2-dimensional quotient on which each x_i acts by an invertible matrix
X_i, the X_i commuting.  A binomial ``x^u - c`` lies in J exactly when
``X^u = c·I``, so the binomial lattice of trop(J) is the *scalar-power
lattice* ``{u : X_1^{u_1} ... X_n^{u_n} is scalar}``.  Searching over
commuting tuples therefore decides whether the degree-2 tropical ideal of
a lattice is realizable over the given field.

The search takes X_1 up to conjugacy (scalars and companion matrices) and
the later matrices from the centralizer of the tuple so far.  Simultaneous
conjugation does not change the lattice, so nothing is lost.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import ResourceLimitError, ValidationError
from .fields import (
    FiniteField,
    Matrix2,
    commute,
    companion,
    field_of_order,
    fmt_matrix,
    invertible_matrices,
    is_invertible,
    is_scalar,
    mat_mul,
    mat_pow,
)
from .lattices import IntegerLattice, coordinate_section, hnf

# largest field order the exhaustive search accepts, by number of variables
FIELD_LIMITS = {1: 49, 2: 25, 3: 9}


@dataclass(frozen=True)
class MatrixRep:
    field: FiniteField
    matrices: tuple[Matrix2, ...]

    def __post_init__(self):
        F = self.field
        for A in self.matrices:
            if len(A) != 4 or any(not 0 <= x < F.q for x in A):
                raise ValidationError(f"not a 2x2 matrix over {F.name}", witness=A)
            if not is_invertible(F, A):
                raise ValidationError("matrix is not invertible", witness=A)
        for A, B in itertools.combinations(self.matrices, 2):
            if not commute(F, A, B):
                raise ValidationError("matrices do not commute", witness=(A, B))

    @property
    def n(self) -> int:
        return len(self.matrices)

    def fmt(self) -> str:
        return " ".join(fmt_matrix(self.field, A) for A in self.matrices)


def projective_order(F: FiniteField, A: Matrix2) -> int:
    """Smallest e >= 1 with A^e scalar."""
    P = A
    for e in range(1, F.q * F.q):
        if is_scalar(P):
            return e
        P = mat_mul(F, P, A)
    raise AssertionError("matrix of infinite order over a finite field")


def scalar_power_lattice(rep: MatrixRep) -> IntegerLattice:
    """``{u in Z^n : X_1^{u_1} ... X_n^{u_n} is a scalar matrix}``."""
    F = rep.field
    n = rep.n
    orders = [projective_order(F, A) for A in rep.matrices]
    powers = [[mat_pow(F, A, e) for e in range(o)] for A, o in zip(rep.matrices, orders)]
    gens = [tuple(o if i == j else 0 for j in range(n)) for i, o in enumerate(orders)]
    for u in itertools.product(*(range(o) for o in orders)):
        P = (1, 0, 0, 1)
        for i, e in enumerate(u):
            if e:
                P = mat_mul(F, P, powers[i][e])
        if is_scalar(P) and any(u):
            gens.append(u)
    return hnf(gens, n)


def check_quadratic_gap(F: FiniteField, a: int, b: int) -> int | None:
    """Least g >= 1 with x^2 + a x + b dividing x^g - r for some r != 0.

    Works with the remainder ``x^g mod (x^2 + a x + b) = c1 x + c0``; the
    gap is reached once ``c1 = 0``.  None if no g up to q^2 - 1 works.
    """
    if a == 0 or b == 0:
        raise ValidationError("need nonzero a and b", witness=(a, b))
    if not (0 < a < F.q and 0 < b < F.q):
        raise ValidationError(f"coefficients must be elements of {F.name}", witness=(a, b))
    add, mul, neg = F.add, F.mul, F.neg
    c1, c0 = 1, 0  # x^1
    for g in range(1, F.q * F.q):
        if c1 == 0:
            return g
        # x * (c1 x + c0) = (c0 - c1 a) x - c1 b
        c1, c0 = int(add[c0, neg[mul[c1, a]]]), int(neg[mul[c1, b]])
    return None


def conjugacy_representatives(F: FiniteField) -> list[Matrix2]:
    """One invertible matrix per conjugacy class of GL_2(F).

    Scalars, then the companion matrix of every x^2 + a x + b with b != 0
    (a non-scalar 2x2 matrix is conjugate to the companion of its
    characteristic polynomial).
    """
    reps = [(c, 0, 0, c) for c in F.units()]
    for a in F.elements():
        for b in F.units():
            reps.append(companion(F, a, b))
    return reps


def _polynomial_algebra_units(F: FiniteField, A: Matrix2) -> np.ndarray:
    """Invertible elements of K[A] = {s I + t A} for non-scalar A."""
    out = []
    for s in F.elements():
        for t in F.elements():
            M = (
                int(F.add[s, F.mul[t, A[0]]]),
                int(F.mul[t, A[1]]),
                int(F.mul[t, A[2]]),
                int(F.add[s, F.mul[t, A[3]]]),
            )
            if is_invertible(F, M):
                out.append(M)
    return np.array(sorted(out), dtype=np.int64)


@dataclass
class SearchReport:
    target: IntegerLattice
    field: FiniteField
    witnesses: list[MatrixRep] = field(default_factory=list)
    scanned: int = 0

    @property
    def count(self) -> int:
        return len(self.witnesses)

    def lines(self) -> list[str]:
        out = [f"{self.field.name} target {self.target}: {self.count} witness(es), {self.scanned} candidates scanned"]
        out.extend("  " + w.fmt() for w in self.witnesses)
        return out

    def to_json(self, max_witnesses: int | None = None) -> dict:
        ws = self.witnesses if max_witnesses is None else self.witnesses[:max_witnesses]
        return {
            "field": self.field.name,
            "target": [list(r) for r in self.target.basis],
            "witness_count": self.count,
            "scanned": self.scanned,
            "witnesses": [[list(A) for A in w.matrices] for w in ws],
        }


def search_degree2_realization(
    target: IntegerLattice, F: FiniteField | int, check_limits: bool = True
) -> SearchReport:
    """All commuting tuples (X_1 up to conjugacy) whose scalar-power lattice is ``target``."""
    if isinstance(F, int):
        F = field_of_order(F)
    n = target.ambient_dim
    if not target.is_full_rank():
        raise ValidationError("target must have full rank (finite-field realizations always do)", witness=target)
    if check_limits:
        if n not in FIELD_LIMITS:
            raise ResourceLimitError(f"search supports n <= 3 variables, got {n}")
        if F.q > FIELD_LIMITS[n]:
            raise ResourceLimitError(f"{F.name} too large for n = {n} (limit q <= {FIELD_LIMITS[n]})")
    report = SearchReport(target, F)
    # necessary condition for a prefix of length j: generators of target ∩ Z^j are scalar
    sections = [np.array(coordinate_section(target, range(1, j + 1)).basis, dtype=np.int64).reshape(-1, j) for j in range(1, n + 1)]
    for rows in sections:
        if (rows < 0).any():  # full-rank row HNF has nonnegative entries
            raise AssertionError("unexpected negative entry in full-rank HNF")
    reps = np.array(conjugacy_representatives(F), dtype=np.int64)
    gl2 = None

    def extend(prefix: list[Matrix2]):
        nonlocal gl2
        j = len(prefix)
        if j == n:
            rep = MatrixRep(F, tuple(prefix))
            if scalar_power_lattice(rep) == target:
                report.witnesses.append(rep)
            return
        if j == 0:
            cands = reps
        else:
            first = next((A for A in prefix if not is_scalar(A)), None)
            if first is None:
                if gl2 is None:
                    gl2 = invertible_matrices(F)
                cands = gl2
            else:
                cands = _polynomial_algebra_units(F, first)
        report.scanned += len(cands)
        pre = np.array(prefix, dtype=np.int64).reshape(-1, 4)
        ok = _kernels.scalar_rows_filter(pre, cands, sections[j], F.add, F.mul)
        for c in np.flatnonzero(ok):
            extend(prefix + [tuple(int(x) for x in cands[c])])

    extend([])
    return report


def axis_target(g: int) -> IntegerLattice:
    return hnf([(g,)], 1)


def gap_witnesses(F: FiniteField, g: int) -> list[tuple[int, int]]:
    """Pairs (a, b), both nonzero, with check_quadratic_gap == g."""
    return [(a, b) for a in F.units() for b in F.units() if check_quadratic_gap(F, a, b) == g]


# ---------------------------------------------------------------------------
# the three-variable experiment


TRIVARIATE = ((4, 0, 0), (0, 2, 0), (0, 0, 2))
PROP46_FIELDS = (2, 3, 4, 5)
# expected witness presence per (label, field order)
PROP46_EXPECTED = {
    ("trivariate", 2): False,
    ("trivariate", 3): False,
    ("trivariate", 4): False,
    ("trivariate", 5): False,
    ("univariate", 2): False,
    ("univariate", 3): True,
    ("univariate", 4): False,
    ("univariate", 5): True,
    ("bivariate", 2): False,
    ("bivariate", 3): False,
    ("bivariate", 4): True,
    ("bivariate", 5): False,
}


def prop46_experiment(fields: Sequence[int] = PROP46_FIELDS) -> dict:
    """Restrict the (4,0,0),(0,2,0),(0,0,2) ideal to {1} and {2,3}, then search each target.

    The univariate restriction is only realizable outside characteristic 2
    and the bivariate one only in characteristic 2, so no field realizes
    the trivariate ideal.  Here that is checked over the listed fields.
    """
    from .ideals import binomial_lattice, degree2_from_lattice, restrict_vars

    L = hnf(TRIVARIATE, 3)
    I = degree2_from_lattice(L)
    uni = binomial_lattice(restrict_vars(I, [1]))
    bi = binomial_lattice(restrict_vars(I, [2, 3]))
    restrictions = {
        "univariate": {"axes": [1], "lattice": [list(r) for r in uni.basis], "expected": [[4]], "ok": uni == hnf([(4,)], 1)},
        "bivariate": {
            "axes": [2, 3],
            "lattice": [list(r) for r in bi.basis],
            "expected": [[2, 0], [0, 2]],
            "ok": bi == hnf([(2, 0), (0, 2)], 2),
        },
    }
    targets = {"trivariate": L, "univariate": uni, "bivariate": bi}
    rows = []
    for label in ("univariate", "bivariate", "trivariate"):
        for q in fields:
            rep = search_degree2_realization(targets[label], field_of_order(q))
            expected = PROP46_EXPECTED.get((label, q))
            rows.append(
                {
                    "target": label,
                    "field": rep.field.name,
                    "witness_count": rep.count,
                    "scanned": rep.scanned,
                    "expected_witnesses": expected,
                    "match": expected is None or (rep.count > 0) == expected,
                    "first_witness": [list(A) for A in rep.witnesses[0].matrices] if rep.witnesses else None,
                }
            )
    ok = all(r["ok"] for r in restrictions.values()) and all(r["match"] for r in rows)
    return {
        "lattice": [list(r) for r in L.basis],
        "restrictions": restrictions,
        "searches": rows,
        "fields_covered": [field_of_order(q).name for q in fields],
        "all_match": ok,
        "conclusion": (
            "no realization over the fields covered; consistent with non-realizability over every field"
            if ok
            else "observed results differ from the expected table"
        ),
    }

