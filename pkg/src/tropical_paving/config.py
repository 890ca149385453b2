"""Runtime limits and backend selection.

Limits are read from the environment once at import time; every function
that enumerates accepts an explicit override, and the CLI flags win over
both.

``TROPICAL_PAVING_BACKEND``
    ``numba`` (default when numba imports) or ``numpy``.
``TROPICAL_PAVING_MAX_POINTS``
    largest window (number of lattice points) we agree to materialize.
``TROPICAL_PAVING_MAX_SCAN``
    largest number of candidate subsets a circuit scan may visit.
``TROPICAL_PAVING_MAX_BITMASK``
    largest ground set handled by the bitmask (2^n table) verifiers.
"""

from __future__ import annotations

import os


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


MAX_WINDOW_POINTS = _env_int("TROPICAL_PAVING_MAX_POINTS", 4096)
MAX_SUBSET_SCAN = _env_int("TROPICAL_PAVING_MAX_SCAN", 3_000_000)
MAX_BITMASK_GROUND = _env_int("TROPICAL_PAVING_MAX_BITMASK", 22)

BACKEND = os.environ.get("TROPICAL_PAVING_BACKEND", "numba").strip().lower()
if BACKEND not in ("numba", "numpy"):
    raise ValueError(f"TROPICAL_PAVING_BACKEND must be 'numba' or 'numpy', got {BACKEND!r}")
