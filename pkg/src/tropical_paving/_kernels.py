"""Hot inner loops, in two interchangeable implementations.

Every kernel exists as a numba ``@njit`` function and as a pure-numpy
function with the same signature and results.  ``TROPICAL_PAVING_BACKEND``
picks one at import time; the numpy path is also used when numba is not
importable.  ``benchmarks/bench_kernels.py`` times both.

Subsets of a ground set of size ``nbits`` are int64 bitmasks; 2×2 matrices
over a finite field are length-4 rows ``(a, b, c, d)`` of element codes,
with field arithmetic given by ``add``/``mul`` lookup tables.
"""

from __future__ import annotations

import numpy as np

from . import config

try:  # pragma: no cover - exercised implicitly by whichever backend is active
    import numba as nb

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    nb = None
    HAVE_NUMBA = False


# ---------------------------------------------------------------------------
# numpy implementations


def _popcounts(nbits: int) -> np.ndarray:
    idx = np.arange(1 << nbits, dtype=np.int64)
    out = np.zeros(1 << nbits, dtype=np.int8)
    for b in range(nbits):
        out += ((idx >> b) & 1).astype(np.int8)
    return out


def dependent_table_np(masks: np.ndarray, nbits: int) -> np.ndarray:
    """``dep[S] = 1`` iff some mask in ``masks`` is a subset of S."""
    dep = np.zeros(1 << nbits, dtype=np.uint8)
    if len(masks):
        dep[masks] = 1
    for b in range(nbits):
        view = dep.reshape(-1, 2, 1 << b)
        view[:, 1, :] |= view[:, 0, :]
    return dep


def rank_table_np(dep: np.ndarray, nbits: int) -> np.ndarray:
    """Largest independent subset size of every S, given the dependence table."""
    val = np.where(dep == 0, _popcounts(nbits), 0).astype(np.int8)
    for b in range(nbits):
        view = val.reshape(-1, 2, 1 << b)
        np.maximum(view[:, 1, :], view[:, 0, :], out=view[:, 1, :])
    return val


def elimination_failure_np(masks: np.ndarray, dep: np.ndarray) -> tuple[int, int, int]:
    """First ``(i, j, e)`` where circuit elimination fails, else ``(-1, -1, -1)``."""
    k = len(masks)
    for i in range(k - 1):
        ci = int(masks[i])
        rest = masks[i + 1 :]
        bits = [b for b in range(ci.bit_length()) if (ci >> b) & 1]
        bad = np.zeros((len(bits), len(rest)), dtype=np.bool_)
        for row, b in enumerate(bits):
            e = np.int64(1) << np.int64(b)
            share = (rest & e) != 0
            bad[row] = share & (dep[(rest | ci) & ~e] == 0)
        cols = bad.any(axis=0)
        if cols.any():
            jj = int(np.flatnonzero(cols)[0])
            return i, i + 1 + jj, bits[int(np.flatnonzero(bad[:, jj])[0])]
    return -1, -1, -1


def h3_failure_np(hmasks: np.ndarray, nbits: int) -> tuple[int, int, int]:
    """First ``(i, j, x)`` violating hyperplane axiom (H3), else ``(-1, -1, -1)``."""
    k = len(hmasks)
    xs = np.int64(1) << np.arange(nbits, dtype=np.int64)
    for i in range(k):
        for j in range(i + 1, k):
            need = (hmasks[i] & hmasks[j]) | xs
            covered = ((hmasks[None, :] & need[:, None]) == need[:, None]).any(axis=1)
            if not covered.all():
                return i, j, int(np.flatnonzero(~covered)[0])
    return -1, -1, -1


def _mat_mul_np(A, B, add, mul):
    a, b, c, d = A[:, 0], A[:, 1], A[:, 2], A[:, 3]
    e, f, g, h = B[:, 0], B[:, 1], B[:, 2], B[:, 3]
    return np.stack(
        [
            add[mul[a, e], mul[b, g]],
            add[mul[a, f], mul[b, h]],
            add[mul[c, e], mul[d, g]],
            add[mul[c, f], mul[d, h]],
        ],
        axis=1,
    )


def _mat_pow_np(A, k, add, mul):
    out = np.zeros_like(A)
    out[:, 0] = 1
    out[:, 3] = 1
    base = A
    while k:
        if k & 1:
            out = _mat_mul_np(out, base, add, mul)
        k >>= 1
        if k:
            base = _mat_mul_np(base, base, add, mul)
    return out


def scalar_rows_filter_np(prefix, cands, rows, add, mul) -> np.ndarray:
    """For tuples ``prefix + (cand,)``: is every ``X^row`` a scalar matrix?

    ``rows`` holds nonnegative exponent vectors (HNF rows of a full-rank
    target), one column per matrix in the tuple.
    """
    m = len(cands)
    ok = np.ones(m, dtype=np.bool_)
    k = len(prefix)
    for r in range(len(rows)):
        acc = np.zeros((m, 4), dtype=np.int64)
        acc[:, 0] = 1
        acc[:, 3] = 1
        for i in range(k):
            e = int(rows[r, i])
            if e:
                P = _mat_pow_np(prefix[i : i + 1], e, add, mul)
                acc = _mat_mul_np(acc, np.repeat(P, m, axis=0), add, mul)
        e = int(rows[r, k])
        if e:
            acc = _mat_mul_np(acc, _mat_pow_np(cands, e, add, mul), add, mul)
        ok &= (acc[:, 1] == 0) & (acc[:, 2] == 0) & (acc[:, 0] == acc[:, 3])
    return ok


# ---------------------------------------------------------------------------
# numba implementations

if HAVE_NUMBA:
    _jit = nb.njit(cache=True, nogil=True)

    @_jit
    def dependent_table_nb(masks, nbits):
        size = 1 << nbits
        dep = np.zeros(size, dtype=np.uint8)
        for m in masks:
            dep[m] = 1
        for b in range(nbits):
            step = 1 << b
            for s in range(size):
                if s & step and dep[s ^ step]:
                    dep[s] = 1
        return dep

    @_jit
    def rank_table_nb(dep, nbits):
        size = 1 << nbits
        val = np.zeros(size, dtype=np.int8)
        for s in range(size):
            if dep[s] == 0:
                c = 0
                t = s
                while t:
                    t &= t - 1
                    c += 1
                val[s] = c
        for b in range(nbits):
            step = 1 << b
            for s in range(size):
                if s & step and val[s ^ step] > val[s]:
                    val[s] = val[s ^ step]
        return val

    @_jit
    def elimination_failure_nb(masks, dep):
        k = masks.shape[0]
        for i in range(k - 1):
            ci = masks[i]
            for j in range(i + 1, k):
                cj = masks[j]
                inter = ci & cj
                if inter == 0:
                    continue
                union = ci | cj
                bit = 0
                while inter >> bit:
                    if (inter >> bit) & 1:
                        if dep[union & ~(np.int64(1) << bit)] == 0:
                            return i, j, bit
                    bit += 1
        return -1, -1, -1

    @_jit
    def h3_failure_nb(hmasks, nbits):
        k = hmasks.shape[0]
        for i in range(k):
            for j in range(i + 1, k):
                inter = hmasks[i] & hmasks[j]
                for x in range(nbits):
                    need = inter | (np.int64(1) << x)
                    found = False
                    for t in range(k):
                        if hmasks[t] & need == need:
                            found = True
                            break
                    if not found:
                        return i, j, x
        return -1, -1, -1

    @_jit
    def _mm(a0, a1, a2, a3, b0, b1, b2, b3, add, mul):
        return (
            add[mul[a0, b0], mul[a1, b2]],
            add[mul[a0, b1], mul[a1, b3]],
            add[mul[a2, b0], mul[a3, b2]],
            add[mul[a2, b1], mul[a3, b3]],
        )

    @_jit
    def _mpow(a0, a1, a2, a3, e, add, mul):
        r0, r1, r2, r3 = 1, 0, 0, 1
        b0, b1, b2, b3 = a0, a1, a2, a3
        while e:
            if e & 1:
                r0, r1, r2, r3 = _mm(r0, r1, r2, r3, b0, b1, b2, b3, add, mul)
            e >>= 1
            if e:
                b0, b1, b2, b3 = _mm(b0, b1, b2, b3, b0, b1, b2, b3, add, mul)
        return r0, r1, r2, r3

    @_jit
    def scalar_rows_filter_nb(prefix, cands, rows, add, mul):
        m = cands.shape[0]
        k = prefix.shape[0]
        nrows = rows.shape[0]
        # prefix powers do not depend on the candidate
        pre = np.zeros((nrows, 4), dtype=np.int64)
        for r in range(nrows):
            a0, a1, a2, a3 = 1, 0, 0, 1
            for i in range(k):
                e = rows[r, i]
                if e:
                    p0, p1, p2, p3 = _mpow(prefix[i, 0], prefix[i, 1], prefix[i, 2], prefix[i, 3], e, add, mul)
                    a0, a1, a2, a3 = _mm(a0, a1, a2, a3, p0, p1, p2, p3, add, mul)
            pre[r, 0] = a0
            pre[r, 1] = a1
            pre[r, 2] = a2
            pre[r, 3] = a3
        ok = np.ones(m, dtype=np.bool_)
        for c in range(m):
            for r in range(nrows):
                e = rows[r, k]
                a0, a1, a2, a3 = pre[r, 0], pre[r, 1], pre[r, 2], pre[r, 3]
                if e:
                    p0, p1, p2, p3 = _mpow(cands[c, 0], cands[c, 1], cands[c, 2], cands[c, 3], e, add, mul)
                    a0, a1, a2, a3 = _mm(a0, a1, a2, a3, p0, p1, p2, p3, add, mul)
                if a1 != 0 or a2 != 0 or a0 != a3:
                    ok[c] = False
                    break
        return ok


# ---------------------------------------------------------------------------
# dispatch

USING_NUMBA = HAVE_NUMBA and config.BACKEND == "numba"

if USING_NUMBA:
    dependent_table = dependent_table_nb
    rank_table = rank_table_nb
    elimination_failure = elimination_failure_nb
    h3_failure = h3_failure_nb
    scalar_rows_filter = scalar_rows_filter_nb
else:
    dependent_table = dependent_table_np
    rank_table = rank_table_np
    elimination_failure = elimination_failure_np
    h3_failure = h3_failure_np
    scalar_rows_filter = scalar_rows_filter_np


def backend_name() -> str:
    return "numba" if USING_NUMBA else "numpy"
