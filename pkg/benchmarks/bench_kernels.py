#!/usr/bin/env python3
"""Time the numba kernels against their numpy fallbacks on realistic inputs.

Run ``python3 benchmarks/bench_kernels.py`` (add ``--json`` for machine output).
Both implementations are called directly, so the backend flag does not matter.
"""

import argparse
import json
import statistics
import sys
import time

import numpy as np

from tropical_paving import _kernels as K
from tropical_paving.fields import field_of_order, invertible_matrices
from tropical_paving.ideals import m_s_ideal, restrict_matroid
from tropical_paving.partitions import Window

RUNS = 5


def timed(func, *args, runs=None):
    runs = RUNS if runs is None else runs
    func(*args)  # warm-up, includes JIT compilation for numba
    times = []
    for _ in range(runs):
        t0 = time.perf_counter()
        func(*args)
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def workloads():
    M = restrict_matroid(m_s_ideal(2, range(6)), Window.interval(0, 17))
    n = len(M.ground)
    masks = np.array(M.circuit_masks, dtype=np.int64)
    dep = K.dependent_table_np(masks, n)
    F = field_of_order(9)
    cands = invertible_matrices(F)
    prefix = np.array([(0, 1, 1, 0)], dtype=np.int64)
    rows = np.array([[2, 0], [0, 2]], dtype=np.int64)
    return {
        "dependent_table": (f"{len(masks)} circuits on {n} points", (masks, n)),
        "rank_table": (f"2^{n} subsets", (dep, n)),
        "elimination_failure": (f"{len(masks)} circuits", (masks[:3000], dep)),
        "scalar_rows_filter": (f"{len(cands)} matrices over GF(9)", (prefix, cands, rows, F.add, F.mul)),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    if not K.HAVE_NUMBA:
        print("numba is not importable; nothing to compare", file=sys.stderr)
        return 1
    results = []
    for name, (label, inputs) in workloads().items():
        t_np = timed(getattr(K, name + "_np"), *inputs)
        t_nb = timed(getattr(K, name + "_nb"), *inputs)
        results.append({"kernel": name, "input": label, "numpy_s": t_np, "numba_s": t_nb, "speedup": t_np / t_nb})
    if args.json:
        print(json.dumps(results, indent=2))
    else:
        print(f"{'kernel':<22}{'input':<32}{'numpy':>10}{'numba':>10}{'speedup':>9}")
        for r in results:
            print(f"{r['kernel']:<22}{r['input']:<32}{r['numpy_s']:>9.4f}s{r['numba_s']:>9.4f}s{r['speedup']:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
