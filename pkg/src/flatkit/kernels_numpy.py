"""Pure-numpy implementations of the hot rank-table kernels.

These are the fallback path when numba is unavailable (or disabled via
``FLATKIT_BACKEND=numpy``); `flatkit.kernels_numba` carries the jitted
mirrors.  Both backends compute byte-identical results.

All kernels operate on a full rank table: a uint8 array of length 2**n
whose entry at index ``m`` is the rank of the subset with bitmask ``m``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

import numpy as np


@lru_cache(maxsize=None)
def popcounts(n: int) -> np.ndarray:
    """Popcount of every mask below 2**n, as a read-only uint8 array."""
    pc = np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.uint8)
    pc.flags.writeable = False
    return pc


def validate_table(table: np.ndarray, n: int) -> bool:
    """Check the rank axioms on a full table.

    Checks normalization plus the local forms of monotonicity and
    submodularity (unit steps, and the two-element exchange inequality
    r(A+e) + r(A+f) >= r(A+e+f) + r(A)).  The local forms are equivalent
    to the global axioms, which keeps the check at O(2^n * n^2).
    """
    t = np.asarray(table, dtype=np.int16)
    if t[0] != 0:
        return False
    if np.any(t > popcounts(n)):
        return False
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    for e in range(n):
        be = 1 << e
        base = masks[(masks & be) == 0]
        step = t[base | be] - t[base]
        if step.size and (step.min() < 0 or step.max() > 1):
            return False
    for e in range(n):
        be = 1 << e
        for f in range(e + 1, n):
            bf = 1 << f
            base = masks[(masks & (be | bf)) == 0]
            if np.any(t[base | be] + t[base | bf] < t[base | be | bf] + t[base]):
                return False
    return True


def closure_table(table: np.ndarray, n: int) -> np.ndarray:
    """Closure of every subset: cl(A) = {e : r(A+e) = r(A)}."""
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    cl = masks.copy()
    for e in range(n):
        be = 1 << e
        cl[table[masks | be] == table] |= be
    return cl


def gf_rank_table(cols: np.ndarray, q: int, add: np.ndarray, mul: np.ndarray,
                  neg: np.ndarray, inv: np.ndarray) -> np.ndarray:
    """Rank table of the column matroid of a GF(q) matrix.

    cols is (rows x ncols) with entries in [0, q).  Entry m of the result
    is the GF(q) rank of the columns selected by mask m.
    """
    rows, ncols = cols.shape
    size = 1 << ncols
    out = np.zeros(size, dtype=np.uint8)
    col_list = [tuple(int(x) for x in cols[:, j]) for j in range(ncols)]
    for m in range(1, size):
        # basis rows are normalized to lead coefficient 1
        basis: list[tuple[int, tuple[int, ...]]] = []
        mm = m
        while mm:
            j = (mm & -mm).bit_length() - 1
            mm &= mm - 1
            vec = list(col_list[j])
            for lead, b in basis:
                c = vec[lead]
                if c:
                    factor = int(neg[c])
                    for i in range(rows):
                        vec[i] = int(add[vec[i], mul[factor, b[i]]])
            lead = next((i for i, x in enumerate(vec) if x), -1)
            if lead >= 0:
                s = int(inv[vec[lead]])
                basis.append((lead, tuple(int(mul[s, x]) for x in vec)))
        out[m] = len(basis)
    return out


def restrict_table(table: np.ndarray, elems: np.ndarray) -> np.ndarray:
    """Rank table of the restriction to the listed elements (relabeled 0..k-1)."""
    k = len(elems)
    sub = np.arange(1 << k, dtype=np.int64)
    embed = np.zeros(1 << k, dtype=np.int64)
    for i in range(k):
        embed[(sub >> i) & 1 == 1] |= 1 << int(elems[i])
    return np.asarray(table, dtype=np.uint8)[embed]


@lru_cache(maxsize=4)
def _perm_maps(n: int) -> np.ndarray:
    """sigma[p, m] = source mask for target mask m under the p-th permutation.

    Only built for n <= 8; masks fit in uint16.
    """
    perms = np.array(list(permutations(range(n))), dtype=np.int64)
    bits = (np.arange(1 << n, dtype=np.int64)[:, None] >> np.arange(n)) & 1
    weights = (1 << perms).astype(np.int64)  # (n!, n)
    sigma = bits @ weights.T  # (2^n, n!)
    return np.ascontiguousarray(sigma.T.astype(np.uint16))


def min_perm_table(table: np.ndarray, n: int) -> np.ndarray:
    """Lexicographic minimum of the rank table over all ground-set permutations.

    Materializes all n! permuted tables, so callers cap n at 8; larger
    ground sets go through the prefix-search canonicalizer instead.
    """
    t = np.asarray(table, dtype=np.uint8)
    rows = t[_perm_maps(n)]
    col = 0
    size = 1 << n
    while rows.shape[0] > 1 and col < size:
        c = rows[:, col]
        rows = rows[c == c.min()]
        col += 1
    return rows[0].copy()
