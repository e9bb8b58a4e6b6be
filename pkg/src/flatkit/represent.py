"""Embedding search: does a matroid arise from columns over GF(q)?

Backtracking assignment of projective points to elements.  A greedy basis
is pinned to unit vectors (any representation can be row-reduced to that
form, and column scaling is free), then the remaining elements try every
normalized point, pruned by comparing linear rank with the matroid rank
on every subset of the already-assigned elements.
"""

from __future__ import annotations

import numpy as np

from .errors import TooLargeError
from .gf import field, projective_points
from .matroid import EMBED_CAP, GFMatrix, Matroid


def _reduce(vec, basis_rows, f):
    """Reduce vec against normalized rows; returns the residual (or None if zero)."""
    v = list(vec)
    for lead, row in basis_rows:
        c = v[lead]
        if c:
            factor = int(f.neg[c])
            v = [int(f.add[x, f.mul[factor, y]]) for x, y in zip(v, row)]
    if any(v):
        return v
    return None


def _extend_basis(basis_rows, vec, f):
    """Basis rows plus vec if independent; None when vec is in the span."""
    v = _reduce(vec, basis_rows, f)
    if v is None:
        return None
    lead = next(i for i, x in enumerate(v) if x)
    s = int(f.inv[v[lead]])
    row = tuple(int(f.mul[s, x]) for x in v)
    return basis_rows + [(lead, row)]


def is_representable(m: Matroid, q: int, cap: int = EMBED_CAP) -> GFMatrix | None:
    """A GF(q) matrix whose column matroid is exactly m, or None.

    The returned matrix has one column per element, in element order, so
    no relabeling is needed to match m.
    """
    f = field(q)
    if m.n > cap:
        raise TooLargeError(f"embedding search for {m.n} elements exceeds cap {cap}")
    r = m.rank()
    if m.n == 0:
        return GFMatrix(q=q, entries=np.zeros((0, 0), dtype=np.uint8))

    basis: list[int] = []
    mask = 0
    for e in range(m.n):
        if m.rank(mask | (1 << e)) > m.rank(mask):
            basis.append(e)
            mask |= 1 << e
    rest = [e for e in range(m.n) if e not in basis]

    assign: dict[int, tuple[int, ...]] = {}
    for i, e in enumerate(basis):
        unit = [0] * r
        unit[i] = 1
        assign[e] = tuple(unit)

    points = projective_points(r, q)

    def search(idx: int, placed: list[int]) -> bool:
        if idx == len(rest):
            return True
        k = len(placed)
        # reduced basis of every subset of the placed elements
        sub_basis = [None] * (1 << k)
        sub_basis[0] = []
        sub_mask = [0] * (1 << k)
        for sm in range(1, 1 << k):
            low = (sm & -sm).bit_length() - 1
            prev = sm & (sm - 1)
            ext = _extend_basis(sub_basis[prev], assign[placed[low]], f)
            sub_basis[sm] = sub_basis[prev] if ext is None else ext
            sub_mask[sm] = sub_mask[prev] | (1 << placed[low])
        x = rest[idx]
        bx = 1 << x
        for vec in points:
            ok = True
            for sm in range(1 << k):
                lin = len(sub_basis[sm]) + (_reduce(vec, sub_basis[sm], f) is not None)
                if lin != m.rank(sub_mask[sm] | bx):
                    ok = False
                    break
            if not ok:
                continue
            assign[x] = vec
            if search(idx + 1, placed + [x]):
                return True
            del assign[x]
        return False

    if not search(0, list(basis)):
        return None
    ent = np.zeros((r, m.n), dtype=np.uint8)
    for e, vec in assign.items():
        ent[:, e] = vec
    return GFMatrix(q=q, entries=ent)
