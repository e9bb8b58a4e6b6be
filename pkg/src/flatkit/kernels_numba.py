"""Numba-jitted mirrors of the kernels in `flatkit.kernels_numpy`.

Same names, same signatures, byte-identical results; the test suite and
the benchmark script compare the two backends directly.  Compiled objects
are cached on disk, so the one-time compile cost is paid once per machine.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .kernels_numpy import popcounts  # shared precompute, not a kernel

__all__ = [
    "popcounts",
    "validate_table",
    "closure_table",
    "gf_rank_table",
    "restrict_table",
    "min_perm_table",
]


@njit(cache=True, nogil=True)
def _validate_table_jit(table, n):
    size = 1 << n
    if table[0] != 0:
        return False
    for m in range(size):
        pc = 0
        mm = m
        while mm:
            mm &= mm - 1
            pc += 1
        if table[m] > pc:
            return False
    for m in range(size):
        rm = np.int64(table[m])
        for e in range(n):
            be = 1 << e
            if m & be:
                continue
            re_ = np.int64(table[m | be])
            if re_ < rm or re_ > rm + 1:
                return False
            for f in range(e + 1, n):
                bf = 1 << f
                if m & bf:
                    continue
                if re_ + table[m | bf] < table[m | be | bf] + rm:
                    return False
    return True


def validate_table(table, n):
    return bool(_validate_table_jit(np.ascontiguousarray(table, dtype=np.uint8), n))


@njit(cache=True, nogil=True)
def _closure_table_jit(table, n):
    size = 1 << n
    cl = np.empty(size, np.int64)
    for m in range(size):
        c = m
        r = table[m]
        for e in range(n):
            if table[m | (1 << e)] == r:
                c |= 1 << e
        cl[m] = c
    return cl


def closure_table(table, n):
    return _closure_table_jit(np.ascontiguousarray(table, dtype=np.uint8), n)


@njit(cache=True, nogil=True)
def _gf_rank_table_jit(cols, add, mul, neg, inv):
    rows, ncols = cols.shape
    size = 1 << ncols
    out = np.zeros(size, np.uint8)
    vec = np.empty(rows, np.uint8)
    basis = np.empty((rows if rows else 1, rows if rows else 1), np.uint8)
    leads = np.empty(rows if rows else 1, np.int64)
    for m in range(1, size):
        bcount = 0
        for j in range(ncols):
            if (m >> j) & 1:
                for i in range(rows):
                    vec[i] = cols[i, j]
                for b in range(bcount):
                    c = vec[leads[b]]
                    if c:
                        f = neg[c]
                        for i in range(rows):
                            vec[i] = add[vec[i], mul[f, basis[b, i]]]
                lead = -1
                for i in range(rows):
                    if vec[i]:
                        lead = i
                        break
                if lead >= 0:
                    s = inv[vec[lead]]
                    for i in range(rows):
                        basis[bcount, i] = mul[s, vec[i]]
                    leads[bcount] = lead
                    bcount += 1
        out[m] = bcount
    return out


def gf_rank_table(cols, q, add, mul, neg, inv):
    return _gf_rank_table_jit(
        np.ascontiguousarray(cols, dtype=np.uint8), add, mul, neg, inv
    )


@njit(cache=True, nogil=True)
def _restrict_table_jit(table, elems):
    k = elems.size
    out = np.empty(1 << k, np.uint8)
    for sub in range(1 << k):
        src = 0
        for i in range(k):
            if (sub >> i) & 1:
                src |= 1 << elems[i]
        out[sub] = table[src]
    return out


def restrict_table(table, elems):
    return _restrict_table_jit(
        np.ascontiguousarray(table, dtype=np.uint8),
        np.ascontiguousarray(elems, dtype=np.int64),
    )


@njit(cache=True, nogil=True)
def _min_perm_table_jit(table, n):
    size = 1 << n
    best = table.copy()
    p = np.arange(n, dtype=np.int64)
    while True:
        # advance p to the next permutation; identity was consumed as `best`
        i = n - 2
        while i >= 0 and p[i] >= p[i + 1]:
            i -= 1
        if i < 0:
            break
        j = n - 1
        while p[j] <= p[i]:
            j -= 1
        tmp = p[i]
        p[i] = p[j]
        p[j] = tmp
        lo = i + 1
        hi = n - 1
        while lo < hi:
            tmp = p[lo]
            p[lo] = p[hi]
            p[hi] = tmp
            lo += 1
            hi -= 1
        # lexicographic compare of the permuted table against best, early exit
        for m in range(size):
            src = 0
            for b in range(n):
                if (m >> b) & 1:
                    src |= 1 << p[b]
            v = table[src]
            if v > best[m]:
                break
            if v < best[m]:
                best[m] = v
                for m2 in range(m + 1, size):
                    src2 = 0
                    for b in range(n):
                        if (m2 >> b) & 1:
                            src2 |= 1 << p[b]
                    best[m2] = table[src2]
                break
    return best


def min_perm_table(table, n):
    return _min_perm_table_jit(np.ascontiguousarray(table, dtype=np.uint8), n)
