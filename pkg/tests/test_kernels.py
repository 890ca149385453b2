from __future__ import annotations

import importlib.util
import json
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropical_paving import _kernels as K
from tropical_paving.fields import field_of_order, invertible_matrices, is_scalar, mat_mul, mat_pow

needs_numba = pytest.mark.skipif(not K.HAVE_NUMBA, reason="numba not importable")

mask_lists = st.integers(2, 9).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(1, (1 << n) - 1), min_size=0, max_size=10, unique=True))
)


def _dep_oracle(masks, n):
    return np.array([int(any(m & ~s == 0 for m in masks)) for s in range(1 << n)], dtype=np.uint8)


@given(mask_lists)
def test_dependent_and_rank_tables(data):
    n, masks = data
    arr = np.array(sorted(masks), dtype=np.int64)
    dep = K.dependent_table_np(arr, n)
    assert (dep == _dep_oracle(masks, n)).all()
    rank = K.rank_table_np(dep, n)
    for s in range(1 << n):
        best = max(bin(t).count("1") for t in range(1 << n) if t & ~s == 0 and not dep[t])
        assert rank[s] == best


@needs_numba
@given(mask_lists)
def test_backends_agree(data):
    n, masks = data
    arr = np.array(sorted(masks), dtype=np.int64)
    dep_np, dep_nb = K.dependent_table_np(arr, n), K.dependent_table_nb(arr, n)
    assert (dep_np == dep_nb).all()
    assert (K.rank_table_np(dep_np, n) == K.rank_table_nb(dep_nb, n)).all()
    if len(arr):
        assert tuple(K.elimination_failure_np(arr, dep_np)) == tuple(int(x) for x in K.elimination_failure_nb(arr, dep_nb))
    if len(arr) >= 2:
        assert tuple(K.h3_failure_np(arr, n)) == tuple(int(x) for x in K.h3_failure_nb(arr, n))


@pytest.mark.parametrize("q", [2, 3, 4, 5])
@pytest.mark.parametrize("rows", [[[4]], [[2, 0], [0, 2]], [[1, 1], [0, 3]]])
def test_scalar_filter_against_direct_products(q, rows):
    F = field_of_order(q)
    rows = np.array(rows, dtype=np.int64)
    j = rows.shape[1]
    cands = invertible_matrices(F)[:: max(1, len(invertible_matrices(F)) // 40)]
    prefix = np.array([(1, 1, 0, 1)] * (j - 1), dtype=np.int64).reshape(-1, 4)
    want = []
    for c in cands:
        ok = True
        for r in rows:
            P = (1, 0, 0, 1)
            for A, e in zip(list(map(tuple, prefix)) + [tuple(c)], r):
                P = mat_mul(F, P, mat_pow(F, tuple(int(x) for x in A), int(e)))
            ok &= is_scalar(P)
        want.append(ok)
    got_np = K.scalar_rows_filter_np(prefix, cands, rows, F.add, F.mul)
    assert list(got_np) == want
    if K.HAVE_NUMBA:
        assert list(K.scalar_rows_filter_nb(prefix, cands, rows, F.add, F.mul)) == want


def test_backend_name():
    assert K.backend_name() in ("numba", "numpy")


def test_backend_flag_selects_numpy():
    env = {**os.environ, "TROPICAL_PAVING_BACKEND": "numpy"}
    code = "from tropical_paving import _kernels as K; print(K.backend_name(), K.rank_table is K.rank_table_np)"
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert res.stdout.split() == ["numpy", "True"]


@needs_numba
def test_benchmark_script_runs(capsys):
    spec = importlib.util.spec_from_file_location("bench_kernels", Path(__file__).parents[1] / "benchmarks" / "bench_kernels.py")
    bench = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(bench)
    bench.RUNS = 1
    assert bench.main(["--json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert {r["kernel"] for r in rows} == {"dependent_table", "rank_table", "elimination_failure", "scalar_rows_filter"}
