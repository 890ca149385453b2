from __future__ import annotations

from itertools import product

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import in_lattice, leibniz_det, rational_rank, same_lattice
from tropical_paving.errors import DimensionError, ValidationError
from tropical_paving.lattices import (
    AffineLattice,
    coordinate_section,
    coset_representatives,
    embed,
    full_lattice,
    hnf,
    int_det,
    intersect,
    is_sublattice,
    lattice_sum,
    member,
    parse_lattice_spec,
    snf_quotient,
    trivial_group,
    zero_lattice,
)

small = st.integers(-6, 6)


@st.composite
def generators(draw, n=None, max_rows=4):
    n = draw(st.integers(1, 3)) if n is None else n
    k = draw(st.integers(0, max_rows))
    return n, [tuple(draw(small) for _ in range(n)) for _ in range(k)]


@st.composite
def full_rank(draw, n=None):
    n = draw(st.integers(1, 3)) if n is None else n
    rows = [tuple(draw(small) for _ in range(n)) for _ in range(n)]
    assume(leibniz_det(rows) != 0)
    return n, rows


def _is_hnf(L):
    prev = -1
    for i, r in enumerate(L.basis):
        c = next(j for j, x in enumerate(r) if x)
        assert c > prev and r[c] > 0
        prev = c
        assert all(0 <= above[c] < r[c] for above in L.basis[:i])
        assert all(below[c] == 0 for below in L.basis[i + 1 :])
    return True


@given(generators())
def test_hnf_generates_the_same_lattice(data):
    n, rows = data
    L = hnf(rows, n)
    assert _is_hnf(L)
    assert L.rank == rational_rank(rows) if rows else L.rank == 0
    assert same_lattice([r for r in rows if any(r)], list(L.basis))


@given(generators(), st.randoms(use_true_random=False))
def test_hnf_is_canonical(data, rnd):
    n, rows = data
    assume(len(rows) >= 2)
    shuffled = rows[:]
    rnd.shuffle(shuffled)
    i, j = rnd.sample(range(len(rows)), 2)
    q = rnd.randint(-3, 3)
    shuffled[i] = tuple(a + q * b for a, b in zip(shuffled[i], shuffled[j]))
    shuffled[j] = tuple(-x for x in shuffled[j])
    assert hnf(shuffled, n) == hnf(rows, n)


@given(generators(), st.lists(small, min_size=3, max_size=3))
def test_membership_against_rational_solve(data, v):
    n, rows = data
    v = tuple(v[:n])
    L = hnf(rows, n)
    assert member(L, v) == in_lattice(list(L.basis), v)
    if rows:
        combo = tuple(sum(c * r[i] for c, r in zip(v * 2, rows)) for i in range(n))
        assert member(L, combo)


@given(full_rank())
def test_determinant_and_cosets(data):
    n, rows = data
    L = hnf(rows, n)
    assert L.determinant() == abs(leibniz_det(rows)) == abs(int_det(rows))
    reps = list(coset_representatives(L))
    assert len(reps) == L.determinant()
    # representatives are pairwise inequivalent
    assert len({L.reduce(r) for r in reps}) == len(reps)


@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=4, max_size=4))
def test_int_det_matches_leibniz(M):
    assert int_det(M) == leibniz_det(M)


@given(generators(n=2), generators(n=2))
def test_sum_and_intersection(a, b):
    _, r1 = a
    _, r2 = b
    L1, L2 = hnf(r1, 2), hnf(r2, 2)
    S, I = lattice_sum(L1, L2), intersect(L1, L2)
    assert is_sublattice(L1, S) and is_sublattice(L2, S)
    assert is_sublattice(I, L1) and is_sublattice(I, L2)
    for v in product(range(-12, 13), repeat=2):
        if member(L1, v) and member(L2, v):
            assert member(I, v)
    assert S == hnf(list(L1.basis) + list(L2.basis), 2)


@given(generators(n=3), st.sets(st.integers(1, 3), min_size=1, max_size=2))
def test_coordinate_section(data, axes):
    n, rows = data
    L = hnf(rows, n)
    axes = sorted(axes)
    sec = coordinate_section(L, axes)
    assert sec.ambient_dim == len(axes)
    for b in sec.basis:
        assert member(L, embed(b, axes, n))
    # any lattice vector supported on the axes is in the section
    for v in product(range(-8, 9), repeat=len(axes)):
        if member(L, embed(v, axes, n)):
            assert member(sec, v)


@given(generators())
def test_quotient_group(data):
    n, rows = data
    L = hnf(rows, n)
    G = snf_quotient(L)
    assert G.free_rank == n - L.rank
    factors = G.invariant_factors
    assert all(f > 1 for f in factors)
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))
    if L.is_full_rank():
        assert G.order() == L.determinant()
        elems = list(G.elements())
        assert len(elems) == G.order()
        coords = {G.coordinates(e) for e in elems}
        assert len(coords) == len(elems)
    else:
        assert G.order() is None


@given(generators(), st.lists(small, min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3))
def test_quotient_operations(data, u, v):
    n, rows = data
    u, v = tuple(u[:n]), tuple(v[:n])
    G = snf_quotient(hnf(rows, n))
    ru = G.canonical_rep(u)
    assert G.canonical_rep(ru) == ru
    assert member(G.lattice, tuple(a - b for a, b in zip(u, ru)))
    assert G.add(u, G.neg(u)) == G.identity()
    assert G.sub(G.add(u, v), v) == ru
    # coordinates are a homomorphism onto the abstract group
    cu, cv, cs = G.coordinates(u), G.coordinates(v), G.coordinates(G.add(u, v))
    tors = len(G.invariant_factors)
    for i, f in enumerate(G.invariant_factors):
        assert cs[i] == (cu[i] + cv[i]) % f
    assert cs[tors:] == tuple(a + b for a, b in zip(cu[tors:], cv[tors:]))


def test_quotient_strings_and_examples():
    G = snf_quotient(hnf([(4, 0, 0), (0, 2, 0), (0, 0, 2)]))
    assert str(G) == "Z/2 x Z/2 x Z/4"
    assert G.order() == 16
    assert str(snf_quotient(hnf([(4, 0)]))) == "Z/4 x Z"
    assert str(trivial_group(2)) == "Z x Z"
    assert str(hnf([(4,)])) == "<4> in Z^1"
    assert snf_quotient(hnf([(2, 1), (0, 3)])).invariant_factors == (6,)


def test_parse_lattice_spec():
    assert parse_lattice_spec("4Z") == hnf([(4,)])
    assert parse_lattice_spec("rows=2,0;0,2") == hnf([(2, 0), (0, 2)])
    with pytest.raises(ValidationError):
        parse_lattice_spec("nonsense")


def test_basic_lattices_and_errors():
    assert full_lattice(2).is_whole_space()
    assert zero_lattice(3).is_zero()
    assert not hnf([(2, 0), (0, 1)]).is_whole_space()
    with pytest.raises(DimensionError):
        member(hnf([(1, 0)]), (1,))
    with pytest.raises(DimensionError):
        lattice_sum(hnf([(1,)]), hnf([(1, 0)]))
    with pytest.raises(ValueError):
        hnf([(1, 0)]).determinant()
    with pytest.raises(ValueError):
        list(coset_representatives(hnf([(2, 0)])))
    with pytest.raises(DimensionError):
        coordinate_section(hnf([(1, 0)]), [3])


def test_affine_lattice():
    A = AffineLattice((5, 1), hnf([(2, 0), (0, 3)]))
    assert A.offset == (1, 1)
    assert (3, 4) in A and (3, 3) not in A
    assert A.translate((1, 0)).offset == (0, 1)
