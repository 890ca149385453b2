"""Small finite fields GF(p) and GF(p^2) by lookup tables, and 2×2 matrices over them.

An element of GF(p^k) is stored as the integer code ``a0 + a1*p`` for the
residue class of ``a0 + a1*t`` modulo the shipped irreducible polynomial.
Tables are numpy arrays so the search kernels can index them directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import ValidationError

# t^2 + c1 t + c0, stored as (c0, c1)
QUADRATIC_MODULI = {
    2: (1, 1),  # t^2 + t + 1
    3: (1, 0),  # t^2 + 1
    5: (2, 1),  # t^2 + t + 2
    7: (1, 0),  # t^2 + 1
}

Matrix2 = tuple  # (a, b, c, d) row-major: [[a, b], [c, d]]


@dataclass(frozen=True)
class FiniteField:
    p: int
    k: int
    add: np.ndarray = field(repr=False, compare=False)
    mul: np.ndarray = field(repr=False, compare=False)
    neg: np.ndarray = field(repr=False, compare=False)
    inv: np.ndarray = field(repr=False, compare=False)  # inv[0] = 0 by convention

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def name(self) -> str:
        return f"GF({self.q})"

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def sub(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    def fmt(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        a0, a1 = a % self.p, a // self.p
        if a1 == 0:
            return str(a0)
        t = "t" if a1 == 1 else f"{a1}t"
        return t if a0 == 0 else f"{a0}+{t}"

    def modulus(self) -> str:
        if self.k == 1:
            return f"Z/{self.p}"
        c0, c1 = QUADRATIC_MODULI[self.p]
        mid = "" if c1 == 0 else (" + t" if c1 == 1 else f" + {c1}t")
        return f"t^2{mid} + {c0}"


def _build(p: int, k: int) -> FiniteField:
    q = p**k
    if k == 1:
        a = np.arange(q)
        add = (a[:, None] + a[None, :]) % p
        mul = (a[:, None] * a[None, :]) % p
    else:
        c0, c1 = QUADRATIC_MODULI[p]
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for x in range(q):
            x0, x1 = x % p, x // p
            for y in range(q):
                y0, y1 = y % p, y // p
                add[x, y] = (x0 + y0) % p + ((x1 + y1) % p) * p
                # (x0 + x1 t)(y0 + y1 t) with t^2 = -c1 t - c0
                s0 = x0 * y0
                s1 = x0 * y1 + x1 * y0
                s2 = x1 * y1
                r0 = (s0 - s2 * c0) % p
                r1 = (s1 - s2 * c1) % p
                mul[x, y] = r0 + r1 * p
    add = add.astype(np.int64)
    mul = mul.astype(np.int64)
    neg = np.array([int(np.flatnonzero(add[a] == 0)[0]) for a in range(q)], dtype=np.int64)
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        hits = np.flatnonzero(mul[a] == 1)
        if len(hits) != 1:
            raise AssertionError(f"no inverse for {a} in GF({q}); modulus not irreducible")
        inv[a] = int(hits[0])
    for t in (add, mul, neg, inv):
        t.flags.writeable = False
    return FiniteField(p, k, add, mul, neg, inv)


@lru_cache(maxsize=None)
def finite_field(p: int, k: int = 1) -> FiniteField:
    if p not in QUADRATIC_MODULI or k not in (1, 2):
        raise ValidationError(f"unsupported field GF({p}^{k}); p must be 2, 3, 5 or 7 and k 1 or 2")
    return _build(p, k)


_BY_ORDER = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1), 9: (3, 2), 25: (5, 2), 49: (7, 2)}


def field_of_order(q: int) -> FiniteField:
    if q not in _BY_ORDER:
        raise ValidationError(f"no shipped field of order {q}; choose from {sorted(_BY_ORDER)}")
    return finite_field(*_BY_ORDER[q])


def parse_field(text: str) -> FiniteField:
    """``GF4``, ``GF(4)``, ``gf9`` or a bare order such as ``5``."""
    t = text.strip().upper().replace("GF", "").strip("()")
    try:
        return field_of_order(int(t))
    except ValueError:
        raise ValidationError(f"cannot parse field {text!r}") from None


# ---------------------------------------------------------------------------
# 2×2 matrices


def identity(F: FiniteField) -> Matrix2:
    return (1, 0, 0, 1)


def scalar(F: FiniteField, c: int) -> Matrix2:
    return (c, 0, 0, c)


def mat_mul(F: FiniteField, A: Matrix2, B: Matrix2) -> Matrix2:
    a, b, c, d = A
    e, f, g, h = B
    ad, mu = F.add, F.mul
    return (
        int(ad[mu[a, e], mu[b, g]]),
        int(ad[mu[a, f], mu[b, h]]),
        int(ad[mu[c, e], mu[d, g]]),
        int(ad[mu[c, f], mu[d, h]]),
    )


def det(F: FiniteField, A: Matrix2) -> int:
    a, b, c, d = A
    return F.sub(int(F.mul[a, d]), int(F.mul[b, c]))


def is_invertible(F: FiniteField, A: Matrix2) -> bool:
    return det(F, A) != 0


def inverse(F: FiniteField, A: Matrix2) -> Matrix2:
    a, b, c, d = A
    dt = det(F, A)
    if dt == 0:
        raise ValidationError("singular matrix", witness=A)
    s = int(F.inv[dt])
    mu = F.mul
    return (int(mu[s, d]), int(mu[s, F.neg[b]]), int(mu[s, F.neg[c]]), int(mu[s, a]))


def mat_pow(F: FiniteField, A: Matrix2, e: int) -> Matrix2:
    if e < 0:
        A, e = inverse(F, A), -e
    out = identity(F)
    while e:
        if e & 1:
            out = mat_mul(F, out, A)
        e >>= 1
        if e:
            A = mat_mul(F, A, A)
    return out


def is_scalar(A: Matrix2) -> bool:
    return A[1] == 0 and A[2] == 0 and A[0] == A[3]


def commute(F: FiniteField, A: Matrix2, B: Matrix2) -> bool:
    return mat_mul(F, A, B) == mat_mul(F, B, A)


def companion(F: FiniteField, a: int, b: int) -> Matrix2:
    """Companion matrix [[0, -b], [1, -a]] of x^2 + a x + b."""
    return (0, int(F.neg[b]), 1, int(F.neg[a]))


def all_matrices(F: FiniteField) -> np.ndarray:
    q = F.q
    g = np.indices((q, q, q, q)).reshape(4, -1).T
    return np.ascontiguousarray(g, dtype=np.int64)


def invertible_matrices(F: FiniteField) -> np.ndarray:
    M = all_matrices(F)
    dets = F.add[F.mul[M[:, 0], M[:, 3]], F.neg[F.mul[M[:, 1], M[:, 2]]]]
    return M[dets != 0]


def fmt_matrix(F: FiniteField, A: Matrix2) -> str:
    return "[" + " ".join(F.fmt(x) for x in A) + "]"
