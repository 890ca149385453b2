from __future__ import annotations

from itertools import product

import pytest

from tropical_paving.errors import ResourceLimitError, ValidationError
from tropical_paving.fields import (
    QUADRATIC_MODULI,
    commute,
    companion,
    det,
    field_of_order,
    finite_field,
    inverse,
    invertible_matrices,
    is_scalar,
    mat_mul,
    mat_pow,
    parse_field,
)
from tropical_paving.lattices import hnf, member
from tropical_paving.realizability import (
    MatrixRep,
    _polynomial_algebra_units,
    axis_target,
    check_quadratic_gap,
    conjugacy_representatives,
    gap_witnesses,
    projective_order,
    prop46_experiment,
    scalar_power_lattice,
    search_degree2_realization,
)

ORDERS = [2, 3, 4, 5, 7, 9, 25, 49]


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms(q):
    F = field_of_order(q)
    E = range(q)
    add, mul = F.add, F.mul
    assert F.q == q
    for a in E:
        assert add[a, 0] == a and mul[a, 1] == a and add[a, F.neg[a]] == 0
        if a:
            assert mul[a, F.inv[a]] == 1
    step = 1 if q <= 9 else 5
    for a, b, c in product(range(0, q, step), repeat=3):
        assert add[add[a, b], c] == add[a, add[b, c]]
        assert mul[mul[a, b], c] == mul[a, mul[b, c]]
        assert mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]
        assert add[a, b] == add[b, a] and mul[a, b] == mul[b, a]
    # the unit group is cyclic
    orders = []
    for g in range(1, q):
        x, k = g, 1
        while x != 1:
            x, k = int(mul[x, g]), k + 1
        orders.append(k)
    assert max(orders) == q - 1


@pytest.mark.parametrize("p", sorted(QUADRATIC_MODULI))
def test_quadratic_moduli_have_no_roots(p):
    c0, c1 = QUADRATIC_MODULI[p]
    assert all((t * t + c1 * t + c0) % p for t in range(p))


def test_field_parsing_and_errors():
    assert parse_field("GF4").q == 4
    assert parse_field("gf(9)").q == 9
    assert parse_field("5").q == 5
    with pytest.raises(ValidationError):
        parse_field("GF8")
    with pytest.raises(ValidationError):
        finite_field(11)
    F = field_of_order(9)
    assert F.fmt(0) == "0" and F.fmt(3) == "t" and F.fmt(7) == "1+2t"
    assert F.modulus() == "t^2 + 1"


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_matrix_arithmetic(q):
    F = field_of_order(q)
    G = invertible_matrices(F)
    assert len(G) == (q * q - 1) * (q * q - q)
    for A in map(tuple, G[:: max(1, len(G) // 30)]):
        A = tuple(int(x) for x in A)
        Ai = inverse(F, A)
        assert mat_mul(F, A, Ai) == (1, 0, 0, 1)
        assert mat_pow(F, A, -3) == mat_pow(F, Ai, 3)
        B = tuple(int(x) for x in G[len(G) // 2])
        assert det(F, mat_mul(F, A, B)) == F.mul[det(F, A), det(F, B)]


def _conj(F, P, A):
    return mat_mul(F, mat_mul(F, P, A), inverse(F, P))


@pytest.mark.parametrize("q", [2, 3, 4])
def test_conjugacy_representatives_are_a_transversal(q):
    F = field_of_order(q)
    G = [tuple(int(x) for x in A) for A in invertible_matrices(F)]
    reps = conjugacy_representatives(F)
    assert len(reps) == q * q - 1
    seen: dict = {}
    for i, R in enumerate(reps):
        for P in G:
            C = _conj(F, P, R)
            assert seen.get(C, i) == i  # two reps never conjugate
            seen[C] = i
    assert set(seen) == set(G)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_centralizer_of_non_scalar(q):
    F = field_of_order(q)
    G = [tuple(int(x) for x in A) for A in invertible_matrices(F)]
    for R in conjugacy_representatives(F):
        if is_scalar(R):
            continue
        brute = {B for B in G if commute(F, R, B)}
        assert {tuple(int(x) for x in B) for B in _polynomial_algebra_units(F, R)} == brute


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 9])
def test_quadratic_gap_equals_companion_projective_order(q):
    F = field_of_order(q)
    for a, b in product(F.units(), F.units()):
        assert check_quadratic_gap(F, a, b) == projective_order(F, companion(F, a, b))


def test_quadratic_gap_examples():
    assert check_quadratic_gap(field_of_order(3), 1, 2) == 4
    assert check_quadratic_gap(field_of_order(5), 2, 2) == 4
    assert (1, 2) in gap_witnesses(field_of_order(3), 4)
    assert gap_witnesses(field_of_order(2), 4) == []
    assert gap_witnesses(field_of_order(4), 4) == []
    with pytest.raises(ValidationError):
        check_quadratic_gap(field_of_order(3), 0, 1)


@pytest.mark.parametrize("q", [2, 3])
def test_scalar_power_lattice_by_enumeration(q):
    F = field_of_order(q)
    G = [tuple(int(x) for x in A) for A in invertible_matrices(F)]
    for A in G[:: max(1, len(G) // 8)]:
        for B in G:
            if not commute(F, A, B):
                continue
            L = scalar_power_lattice(MatrixRep(F, (A, B)))
            for u in product(range(-4, 5), repeat=2):
                P = mat_mul(F, mat_pow(F, A, u[0]), mat_pow(F, B, u[1]))
                assert member(L, u) == is_scalar(P)


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("target", [[(2, 0), (0, 2)], [(3, 0), (0, 1)], [(2, 0), (0, 4)], [(1, 1), (0, 2)]])
def test_search_matches_exhaustive_pairs(q, target):
    F = field_of_order(q)
    L = hnf(target)
    G = [tuple(int(x) for x in A) for A in invertible_matrices(F)]
    reps = set(conjugacy_representatives(F))
    brute = set()
    for A in reps:
        for B in G:
            if commute(F, A, B) and scalar_power_lattice(MatrixRep(F, (A, B))) == L:
                brute.add((A, B))
    rep = search_degree2_realization(L, F)
    assert {w.matrices for w in rep.witnesses} == brute


def test_search_errors_and_limits():
    with pytest.raises(ValidationError):
        search_degree2_realization(hnf([(2, 0)]), 3)
    with pytest.raises(ResourceLimitError):
        search_degree2_realization(hnf([(2, 0, 0), (0, 2, 0), (0, 0, 2)]), 25)
    with pytest.raises(ResourceLimitError):
        search_degree2_realization(hnf([(2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2)]), 2)
    with pytest.raises(ValidationError):
        MatrixRep(field_of_order(3), ((1, 1, 0, 1), (0, 1, 1, 0)))
    with pytest.raises(ValidationError):
        MatrixRep(field_of_order(3), ((1, 1, 1, 1),))


def test_univariate_search_report():
    rep = search_degree2_realization(axis_target(4), 5)
    assert rep.count >= 1
    assert all(projective_order(rep.field, w.matrices[0]) == 4 for w in rep.witnesses)
    data = rep.to_json(2)
    assert data["witness_count"] == rep.count and len(data["witnesses"]) <= 2
    assert rep.lines()[0].startswith("GF(5) target <4> in Z^1")


def test_experiment_on_small_fields():
    rep = prop46_experiment((2, 3))
    assert rep["all_match"]
    assert rep["restrictions"]["univariate"]["lattice"] == [[4]]
    assert rep["fields_covered"] == ["GF(2)", "GF(3)"]
    found = {(r["target"], r["field"]): r["witness_count"] > 0 for r in rep["searches"]}
    assert found == {
        ("univariate", "GF(2)"): False,
        ("univariate", "GF(3)"): True,
        ("bivariate", "GF(2)"): False,
        ("bivariate", "GF(3)"): False,
        ("trivariate", "GF(2)"): False,
        ("trivariate", "GF(3)"): False,
    }
