"""Arithmetic tables for the small finite fields GF(q), q in {2, 3, 4, 5, 7, 8, 9}.

Prime fields use modular arithmetic.  Prime-power fields use fixed
irreducible polynomials so that element encodings (and therefore every
matrix written by this package) are bit-exact across runs:

    GF(4) = GF(2)[x] / (x^2 + x + 1)
    GF(8) = GF(2)[x] / (x^3 + x + 1)
    GF(9) = GF(3)[x] / (x^2 + 1)

An element of GF(p^k) is encoded as an integer in [0, q) whose base-p
digits are the polynomial coefficients, little-endian: e = sum d_i * p^i
encodes sum d_i * x^i.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from .errors import UnsupportedFieldError

SUPPORTED_FIELDS = (2, 3, 4, 5, 7, 8, 9)

# q -> (characteristic p, degree k, irreducible poly little-endian)
_FIELD_SPECS = {
    2: (2, 1, (0, 1)),
    3: (3, 1, (0, 1)),
    4: (2, 2, (1, 1, 1)),
    5: (5, 1, (0, 1)),
    7: (7, 1, (0, 1)),
    8: (2, 3, (1, 1, 0, 1)),
    9: (3, 2, (1, 0, 1)),
}


@dataclass(frozen=True)
class Field:
    """Precomputed operation tables for one GF(q)."""

    q: int
    p: int
    deg: int
    add: np.ndarray = dc_field(repr=False)
    mul: np.ndarray = dc_field(repr=False)
    neg: np.ndarray = dc_field(repr=False)
    inv: np.ndarray = dc_field(repr=False)  # inv[0] is unused and set to 0

    def __post_init__(self):
        for t in (self.add, self.mul, self.neg, self.inv):
            t.flags.writeable = False


def _digits(e, p, k):
    return [(e // p**i) % p for i in range(k)]


def _undigits(ds, p):
    return sum(d * p**i for i, d in enumerate(ds))


def _poly_mul_mod(a, b, p, irr):
    """Multiply two little-endian coefficient lists mod p, reduce mod irr."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    deg = len(irr) - 1
    for m in range(len(prod) - 1, deg - 1, -1):
        c = prod[m]
        if c:
            prod[m] = 0
            for j in range(deg):
                prod[m - deg + j] = (prod[m - deg + j] - c * irr[j]) % p
    return prod[:deg]


@lru_cache(maxsize=None)
def field(q: int) -> Field:
    """Return the (cached) operation tables for GF(q)."""
    if q not in _FIELD_SPECS:
        raise UnsupportedFieldError(
            f"GF({q}) is not supported; supported field orders: {SUPPORTED_FIELDS}"
        )
    p, k, irr = _FIELD_SPECS[q]
    add = np.zeros((q, q), dtype=np.uint8)
    mul = np.zeros((q, q), dtype=np.uint8)
    for a in range(q):
        da = _digits(a, p, k)
        for b in range(q):
            db = _digits(b, p, k)
            add[a, b] = _undigits([(x + y) % p for x, y in zip(da, db)], p)
            mul[a, b] = _undigits(_poly_mul_mod(da, db, p, irr), p)
    neg = np.zeros(q, dtype=np.uint8)
    inv = np.zeros(q, dtype=np.uint8)
    for a in range(q):
        neg[a] = int(np.flatnonzero(add[a] == 0)[0])
        if a:
            inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
    return Field(q=q, p=p, deg=k, add=add, mul=mul, neg=neg, inv=inv)


def normalize_column(col, q: int):
    """Scale a nonzero GF(q) vector so its first nonzero entry is 1.

    Projectively parallel columns normalize to the same vector, which is
    how parallel detection and point enumeration stay canonical.
    """
    f = field(q)
    col = list(col)
    for x in col:
        if x:
            s = int(f.inv[x])
            return tuple(int(f.mul[s, y]) for y in col)
    return tuple(col)


def projective_points(r: int, q: int):
    """All points of PG(r-1, q) as normalized r-vectors, lexicographic order.

    Returns (q**r - 1) // (q - 1) tuples; the first nonzero coordinate of
    each is 1.  Coordinate 0 is the most significant for the ordering.
    """
    pts = []
    for code in range(1, q**r):
        vec = []
        c = code
        for _ in range(r):
            vec.append(c % q)
            c //= q
        vec.reverse()
        nz = next(x for x in vec if x)
        if nz == 1:
            pts.append(tuple(vec))
    return pts
