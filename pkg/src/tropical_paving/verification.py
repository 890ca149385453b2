"""Window verification: check an ideal's matroid restriction against every axiom we know.

Each suite works from the explicit circuit list of the restriction, so the
rank oracle and partition lookups are compared against data they did not
produce.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from . import config
from .ideals import TropicalIdeal, binomial_lattice, rank_oracle, restrict_matroid
from .matroids import (
    AxiomReport,
    FiniteMatroid,
    _bits,
    is_paving,
    rank_table,
    simplification,
    verify_circuit_axioms,
    verify_d_partition,
)
from .partitions import as_points, class_traces

EXHAUSTIVE_RANK_POINTS = 12
RANK_SAMPLES = 2000
ELIMINATION_PAIRS = 20000
ELIMINATION_MAX_UNION = 8


@dataclass
class SuiteResult:
    window_points: int
    rank: int
    circuits: int
    suites: dict[str, AxiomReport] = field(default_factory=dict)
    notes: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.suites.values())

    def lines(self) -> list[str]:
        out = [f"window: {self.window_points} points, rank {self.rank}, {self.circuits} circuits"]
        for name, rep in self.suites.items():
            status = "PASS" if rep.passed else "FAIL"
            note = f" ({self.notes[name]})" if name in self.notes else ""
            out.append(f"{status} {name}{note}")
            for axiom, w in rep.failures[:5]:
                out.append(f"    {axiom}: {w}")
        out.append("all suites pass" if self.passed else "verification FAILED")
        return out

    def to_json(self) -> dict:
        return {
            "window_points": self.window_points,
            "rank": self.rank,
            "circuits": self.circuits,
            "passed": self.passed,
            "suites": {
                k: {"passed": v.passed, "failures": [[a, repr(w)] for a, w in v.failures[:20]], "note": self.notes.get(k, "")}
                for k, v in self.suites.items()
            },
        }


def _hyperplane_report(I: TropicalIdeal, si: FiniteMatroid, class_of: dict) -> tuple[AxiomReport, str]:
    rep = AxiomReport()
    r = si.rank
    if r < 2:
        return rep, f"skipped: simplification has rank {r} < 2"
    H = si.hyperplanes()
    rep.merge(verify_d_partition(H, si.ground, r - 1))
    if r != I.d + 1:
        return rep, f"window rank {r} below degree; partition comparison skipped"
    # the hyperplanes must be the block traces with >= d classes plus the uncovered d-sets
    d = I.d
    cls = {class_of[x]: x for x in si.ground}
    traces = [frozenset(cls[c] for c in t.points) for t in class_traces(I.partition, sorted(cls), d)]
    covered = {frozenset(D) for T in traces for D in combinations(sorted(T), d)}
    expected = set(traces)
    expected.update(frozenset(D) for D in combinations(si.ground, d) if frozenset(D) not in covered)
    if expected != set(H):
        extra = sorted(map(sorted, set(H) - expected))[:3]
        missing = sorted(map(sorted, expected - set(H)))[:3]
        rep.fail("traces", {"unexpected": extra, "missing": missing})
    return rep, ""


def _rank_report(I: TropicalIdeal, M: FiniteMatroid, rng: random.Random, table=None) -> tuple[AxiomReport, str]:
    rep = AxiomReport()
    n = len(M.ground)
    if n <= EXHAUSTIVE_RANK_POINTS and table is not None:
        masks = range(1 << n)
        note = f"all {1 << n} subsets"
        brute = lambda m: int(table[m])  # noqa: E731
    else:
        masks = [rng.getrandbits(n) for _ in range(RANK_SAMPLES)]
        note = f"{RANK_SAMPLES} seeded random subsets"
        brute = M._rank_mask if table is None else (lambda m: int(table[m]))
    for m in masks:
        X = M.labels(m)
        a, b = rank_oracle(I, X), brute(m)
        if a != b:
            rep.fail("rank", (X, a, b))
            if len(rep.failures) >= 5:
                break
    return rep, note


def _elimination_report(M: FiniteMatroid, rng: random.Random, table=None) -> tuple[AxiomReport, str]:
    """Monomial elimination on circuits and small unions of two circuits.

    For cycles f, g sharing u, some cycle h has f Δ g ⊆ h ⊆ (f ∪ g) - u.
    The largest cycle inside T is the union of the circuits inside T (the
    non-coloops of T), so this is a containment test against that union.
    """
    rep = AxiomReport()
    circ = list(M.circuit_masks)

    if table is not None:

        def cycle_hull(T: int) -> int:
            r = table[T]
            return sum(1 << e for e in _bits(T) if table[T & ~(1 << e)] == r)

    else:

        def cycle_hull(T: int) -> int:
            out = 0
            for c in circ:
                if c & ~T == 0:
                    out |= c
            return out

    cycles = set(circ)
    for a, b in combinations(circ[:200], 2):
        u = a | b
        if a & b and u.bit_count() <= ELIMINATION_MAX_UNION:
            cycles.add(u)
    cycles = sorted(cycles)
    k = len(cycles)
    total = k * (k - 1) // 2
    if total <= ELIMINATION_PAIRS:
        pairs = combinations(cycles, 2)
        note = f"all {total} cycle pairs"
    else:
        pairs = (tuple(rng.sample(cycles, 2)) for _ in range(ELIMINATION_PAIRS))
        note = f"{ELIMINATION_PAIRS} seeded random pairs of {total}"
    for f, g in pairs:
        common = f & g
        if not common:
            continue
        sym = f ^ g
        for e in _bits(common):
            T = (f | g) & ~(1 << e)
            if sym & ~cycle_hull(T):
                rep.fail("elimination", (M.labels(f), M.labels(g), M.ground[e]))
                return rep, note
    return rep, note


def verify_window_suite(I: TropicalIdeal, ground, seed: int = 0, limit: int | None = None) -> SuiteResult:
    rng = random.Random(seed)
    pts = as_points(ground, limit)
    M = restrict_matroid(I, pts, limit=limit)
    res = SuiteResult(len(pts), M.rank, len(M.circuits))
    res.suites["circuit axioms"] = verify_circuit_axioms(M.circuits, M.ground)
    si, class_map = simplification(M)
    class_of = {x: I.group.canonical_rep(x) for x in si.ground}
    pav = AxiomReport()
    target = M if I.group.is_trivial_lattice else si
    if not is_paving(target):
        bad = [sorted(C) for C in target.circuits if len(C) < target.rank][:3]
        pav.fail("paving", bad)
    res.suites["paving"] = pav
    if target is si:
        res.notes["paving"] = "checked on the simplification"
    res.suites["hyperplane d-partition"], note = _hyperplane_report(I, si, class_of)
    if note:
        res.notes["hyperplane d-partition"] = note
    table = rank_table(M) if len(M.ground) <= config.MAX_BITMASK_GROUND else None
    res.suites["rank oracle"], res.notes["rank oracle"] = _rank_report(I, M, rng, table)
    res.suites["monomial elimination"], res.notes["monomial elimination"] = _elimination_report(M, rng, table)
    # parallel classes of the restriction are the cosets of the binomial lattice
    par = AxiomReport()
    B = binomial_lattice(I)
    keys = {x: B.reduce(x) for x in M.ground}
    for x, rep_x in class_map.items():
        if keys[x] != keys[rep_x]:
            par.fail("parallel", ("parallel points in different cosets", x, rep_x))
            break
    if len(set(class_map.values())) != len(set(keys.values())):
        par.fail("parallel", "coset count differs from parallel class count")
    res.suites["parallel classes"] = par
    return res
