from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from helpers import SMALL_WINDOWS, definitional_contains, dependent, shipped_ideals
from tropical_paving.errors import DimensionError, ResourceLimitError, ValidationError
from tropical_paving.ideals import (
    binomial_lattice,
    circuits_in_window,
    contains,
    degree2_from_lattice,
    degree3_from_pair,
    extend_matroid,
    is_circuit,
    is_subgroup_coset,
    m_s_ideal,
    make_support,
    paving_from_blocks,
    paving_ideal,
    random_support,
    rank_oracle,
    remark_example,
    restrict_matroid,
    restrict_vars,
    semantically_equal,
    uniform_ideal,
    verify_degree_on_window,
)
from tropical_paving.lattices import embed, hnf, member, snf_quotient, vsub
from tropical_paving.matroids import FiniteMatroid, non_pappus, uniform_matroid
from tropical_paving.partitions import FiniteBlock, InvariantPartition, Window

SHIPPED = shipped_ideals()
EXTRA = {
    "uniform n=2 d=2": uniform_ideal(2, 2),
    "paving 2D": paving_from_blocks([FiniteBlock(((0, 0), (1, 0), (0, 2))), FiniteBlock(((0, 0), (3, 1), (5, 0), (1, 4)))], 2, 2),
    "remark d=4": remark_example(4),
    "lattice2 <(1,0),(0,3)>": degree2_from_lattice(hnf([(1, 0), (0, 3)])),
    "zero lattice": degree2_from_lattice(hnf([], 2)),
}
ALL = {**SHIPPED, **EXTRA}
ideal_names = st.sampled_from(sorted(ALL))


def brute_rank(I, X) -> int:
    X = list(X)
    for r in range(len(X), -1, -1):
        if any(not dependent(I, T) for T in combinations(X, r)):
            return r
    return 0


@given(ideal_names, st.integers(0, 2**32), st.integers(1, 7))
def test_rank_oracle_against_definition(name, s, size):
    I = ALL[name]
    rnd = random.Random(s)
    S = random_support(rnd, I.n, size, 5)
    assert rank_oracle(I, S) == brute_rank(I, S)
    assert contains(I, S) == definitional_contains(I, S)


@given(ideal_names, st.integers(0, 2**32))
def test_circuits_are_the_minimal_dependent_sets(name, s):
    I = ALL[name]
    rnd = random.Random(s)
    S = random_support(rnd, I.n, rnd.randint(3, 8), 4)
    got = set(circuits_in_window(I, S))
    want = set()
    for r in range(1, len(S) + 1):
        for T in combinations(S, r):
            if dependent(I, T) and not any(set(C) < set(T) for C in want):
                want.add(tuple(sorted(T)))
    assert got == want
    for C in got:
        assert is_circuit(I, C)


@given(ideal_names, st.integers(0, 2**32))
def test_cycles_are_closed_under_union(name, s):
    I = ALL[name]
    rnd = random.Random(s)
    pts = random_support(rnd, I.n, 8, 4)
    cyc = [C for C in circuits_in_window(I, pts)]
    if len(cyc) >= 2:
        a, b = rnd.sample(cyc, 2)
        assert contains(I, sorted(set(a) | set(b)))


@pytest.mark.parametrize("name", sorted(ALL))
def test_parallel_pairs_are_binomial_lattice_cosets(name):
    I = ALL[name]
    B = binomial_lattice(I)
    W = Window((-3,) * I.n, (3,) * I.n) if I.n == 1 else Window((-2,) * I.n, (2,) * I.n)
    pairs = {C for C in circuits_in_window(I, W, max_size=2) if len(C) == 2}
    pts = W.points()
    want = {tuple(sorted(p)) for p in combinations(pts, 2) if member(B, vsub(*p))} if I.d >= 1 else set()
    assert pairs == want


def test_degrees_and_window_rank():
    for d in range(4):
        assert uniform_ideal(1, d).degree() == d + 1
        assert verify_degree_on_window(uniform_ideal(1, d), Window.interval(0, 7))
    assert remark_example(4).degree() == 5
    assert verify_degree_on_window(remark_example(4), Window((0, 0), (7, 1)))
    assert uniform_ideal(2, 0).degree() == 1
    assert rank_oracle(uniform_ideal(2, 0), [(0, 0), (5, 1)]) == 1


@pytest.mark.parametrize("name", ["paving 2D", "lattice2 <(2,0),(0,2)>", "lattice2 <(1,0),(0,3)>", "uniform n=2 d=2", "zero lattice"])
@pytest.mark.parametrize("axes", [[1], [2]])
def test_variable_restriction_matches_axis_circuits(name, axes):
    I = ALL[name]
    J = restrict_vars(I, axes)
    assert J.n == 1
    line = [(x,) for x in range(-6, 7)]
    on_axis = [embed(p, axes, I.n) for p in line]
    back = {tuple(sorted(embed(p, axes, I.n) for p in C)) for C in circuits_in_window(J, line)}
    assert back == set(circuits_in_window(I, on_axis))


def test_variable_restriction_of_trivariate_lattice():
    I = degree2_from_lattice(hnf([(4, 0, 0), (0, 2, 0), (0, 0, 2)]))
    box = Window((-3, -3), (3, 3))
    J = restrict_vars(I, [2, 3])
    back = {tuple(sorted(embed(p, [2, 3], 3) for p in C)) for C in circuits_in_window(J, box)}
    assert back == set(circuits_in_window(I, [embed(p, [2, 3], 3) for p in box.points()]))
    # a section equal to Z drops the degree
    K = restrict_vars(degree2_from_lattice(hnf([(1, 0), (0, 2)])), [1])
    assert K.degree() == 1


def test_restriction_errors():
    with pytest.raises(ValidationError):
        restrict_vars(remark_example(3), [1])
    with pytest.raises(ValidationError):
        restrict_vars(uniform_ideal(2, 1), [1, 2])
    with pytest.raises(ValidationError):
        restrict_vars(uniform_ideal(2, 1), [3])


def test_extension_reproduces_matroid_and_rejects_bad_input():
    M = non_pappus()
    emb = {t: (2 ** (int(t) - 1), 0) for t in M.ground}
    I = extend_matroid(M, emb)
    R = restrict_matroid(I, emb.values())
    inv = {p: t for t, p in emb.items()}
    assert FiniteMatroid([inv[x] for x in R.ground], [[inv[x] for x in C] for C in R.circuits]) == M
    with pytest.raises(ValidationError):
        extend_matroid(M, {t: (int(t),) for t in M.ground})  # not 2-sparse
    with pytest.raises(ValidationError):
        extend_matroid(M, {t: (0,) for t in M.ground})
    not_paving = FiniteMatroid(range(4), [[0, 1]])  # rank 3 with a 2-circuit
    with pytest.raises(ValidationError):
        extend_matroid(not_paving, [(0,), (1,), (3,), (7,)])
    with pytest.raises(ValidationError):
        extend_matroid(uniform_matroid(1, range(3)), [(0,), (1,), (3,)])
    with pytest.raises(ValidationError):
        extend_matroid(M, {"1": (0,)})


def test_constructor_errors():
    with pytest.raises(ValidationError):
        m_s_ideal(2, [0])
    with pytest.raises(ValidationError):
        m_s_ideal(1, [0, 1])
    with pytest.raises(ValidationError):
        degree2_from_lattice(hnf([(1,)]))
    with pytest.raises(ValidationError):
        paving_ideal(InvariantPartition.build([], 2, snf_quotient(hnf([(5,)]))))
    L = hnf([(6,)])
    P = InvariantPartition.build([], 2, snf_quotient(hnf([(5,)])))
    with pytest.raises(ValidationError):
        degree3_from_pair(L, P)
    with pytest.raises(ValidationError):
        remark_example(2)
    with pytest.raises(ValidationError):
        make_support([(0,), (0,)])
    with pytest.raises(DimensionError):
        make_support([(0,), (0, 1)])
    with pytest.raises(DimensionError):
        rank_oracle(uniform_ideal(1, 1), [(0, 0)])


def test_scan_limit():
    with pytest.raises(ResourceLimitError):
        circuits_in_window(uniform_ideal(1, 2), Window.interval(0, 40), scan_limit=100)
    assert circuits_in_window(uniform_ideal(1, 2), Window.interval(0, 40), max_size=3) == []


def test_semantic_equality():
    assert semantically_equal(m_s_ideal(2, [0, 1]), uniform_ideal(1, 2))
    assert not semantically_equal(m_s_ideal(2, [0, 1, 2]), uniform_ideal(1, 2))
    assert not semantically_equal(uniform_ideal(1, 2), uniform_ideal(1, 1))
    assert not semantically_equal(uniform_ideal(1, 2), uniform_ideal(2, 2))
    assert semantically_equal(degree2_from_lattice(hnf([(2,)])), degree2_from_lattice(hnf([(-2,)])))


def test_remark_block_is_stable_but_not_a_coset():
    I = remark_example(3)
    G = I.group
    block = I.partition.blocks[0]
    assert {G.add((2, 0), p) for p in block.points} == set(block.points)
    assert not is_subgroup_coset(G, block.points)
    assert is_subgroup_coset(G, [(0, 0), (2, 0)])


def test_shipped_small_windows_fit():
    for name, wins in SMALL_WINDOWS.items():
        for W in wins:
            pts = W.points() if isinstance(W, Window) else W
            assert len(pts) <= 12, name


def test_random_support_is_seeded():
    a = random_support(random.Random(3), 2, 5, 4)
    assert a == random_support(random.Random(3), 2, 5, 4)
    assert len(a) == 5 and len(set(a)) == 5


@given(
    st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=0, max_size=3),
    st.sets(st.integers(1, 3), min_size=1, max_size=2),
)
def test_lattice_restriction_including_rank_zero_sections(rows, axes):
    L = hnf(rows, 3)
    assume(not L.is_whole_space())
    I = degree2_from_lattice(L)
    axes = sorted(axes)
    J = restrict_vars(I, axes)
    box = Window((-2,) * len(axes), (2,) * len(axes))
    back = {tuple(sorted(embed(p, axes, 3) for p in C)) for C in circuits_in_window(J, box)}
    assert back == set(circuits_in_window(I, [embed(p, axes, 3) for p in box.points()]))


@given(st.integers(0, 2**32))
def test_paving_restriction_matches_axis_circuits(s):
    rnd = random.Random(s)
    blocks = []
    for _ in range(rnd.randint(1, 3)):
        pts = {(rnd.randint(0, 6), rnd.randint(0, 2)) for _ in range(rnd.randint(3, 5))}
        blocks.append(FiniteBlock(tuple(pts)))
    try:
        I = paving_from_blocks(blocks, 2, 2)
    except ValidationError:
        assume(False)
    J = restrict_vars(I, [1])
    line = [(x,) for x in range(-8, 9)]
    back = {tuple(sorted(embed(p, [1], 2) for p in C)) for C in circuits_in_window(J, line)}
    assert back == set(circuits_in_window(I, [embed(p, [1], 2) for p in line]))
