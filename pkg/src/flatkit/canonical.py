"""Canonical forms for rank tables: equal bytes <=> isomorphic matroids.

The canonical form is the lexicographic minimum, over all ground-set
permutations, of the permuted rank-table byte sequence.  Three routes
compute it:

* tables that depend only on subset size (uniform matroids and friends)
  are fixed by every permutation and are returned as-is;
* up to PERM_SCAN_MAX elements, the backend kernel scans all n!
  permutations (numba: early-exit loop; numpy: vectorized gather);
* above that, a prefix search assigns one position at a time, keeping
  every partial assignment that still achieves the minimal prefix.  The
  prefix pruning is what keeps n <= 12 practical.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .errors import TooLargeError

PERM_SCAN_MAX = 8

CANON_CAP_DEFAULT = 12


def _is_size_function(table: np.ndarray, n: int) -> bool:
    """True when r(A) depends only on |A| (then every permutation fixes it)."""
    pc = kernels.popcounts(n)
    ref = table[(1 << np.arange(n + 1, dtype=np.int64)) - 1]  # r of {0..c-1}
    return bool(np.all(table == ref[pc]))


def _prefix_search_min(table: np.ndarray, n: int) -> np.ndarray:
    """Minimal permuted table via position-by-position prefix minimization.

    A partial assignment maps positions 0..j-1 to distinct elements; its
    submask array gives, for every mask over those positions, the mask of
    the corresponding source elements.  Extending by element x appends the
    block table[submasks | bit(x)], which is exactly the next 2**j bytes
    of the permuted table.  All ties must be kept: assignments that agree
    on the prefix may diverge later.
    """
    size = 1 << n
    out = np.empty(size, dtype=np.uint8)
    out[0] = table[0]
    frontier: list[tuple[int, np.ndarray]] = [(0, np.zeros(1, dtype=np.int64))]
    for j in range(n):
        blk = 1 << j
        best: bytes | None = None
        winners: list[tuple[int, np.ndarray, int]] = []
        for used, submasks in frontier:
            for x in range(n):
                bx = 1 << x
                if used & bx:
                    continue
                block = table[submasks | bx].tobytes()
                if best is None or block < best:
                    best = block
                    winners = [(used | bx, submasks, bx)]
                elif block == best:
                    winners.append((used | bx, submasks, bx))
        out[blk : 2 * blk] = np.frombuffer(best, dtype=np.uint8)
        frontier = [
            (used, np.concatenate([submasks, submasks | bx]))
            for used, submasks, bx in winners
        ]
    return out


def canonical_bytes(table, n: int, cap: int = CANON_CAP_DEFAULT) -> bytes:
    """Canonical byte string of a rank table (see module docstring)."""
    if n > cap:
        raise TooLargeError(f"canonicalization of {n} elements exceeds cap {cap}")
    table = np.ascontiguousarray(table, dtype=np.uint8)
    if n <= 1 or _is_size_function(table, n):
        return table.tobytes()
    if n <= PERM_SCAN_MAX:
        return kernels.min_perm_table(table, n).tobytes()
    return _prefix_search_min(table, n).tobytes()
