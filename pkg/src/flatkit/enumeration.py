"""Isomorph-free generation of simple matroids in a universe.

Two strategies, matching the two universe kinds:

* ALL: breadth-first single-element extensions from the empty matroid.
  Extensions are parameterized by modular cuts of the flat lattice
  (up-closed, closed under intersections of modular pairs, and free of
  rank <= 1 flats so the new element is neither a loop nor parallel).
  Every simple matroid on n+1 elements is an extension of each of its
  single-element deletions, so one representative per isomorphism class
  suffices for completeness.

* GF(q): grow point subsets of PG(max_rank-1, q) one point at a time.
  For q in {2, 3} representations are unique up to projective
  equivalence, so keeping one subset per isomorphism class is complete;
  for larger q all subsets are kept (inequivalent embeddings of the same
  matroid can extend differently) and only the emitted stream is deduped.

Streams are emitted in (n, rank, canonical key) order and are
byte-stable across runs; an optional on-disk cache replays them.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .canonical import CANON_CAP_DEFAULT
from .classes import Universe
from .errors import ParseError, TooLargeError
from .gf import field, projective_points
from .matroid import GROUND_CAP, GFMatrix, Matroid, empty_matroid, from_matrix
from . import formats as _formats_mod  # deferred circular-safe use in cache IO


@dataclass(frozen=True)
class EnumLimits:
    """Search box: at most max_elements elements and rank at most max_rank."""

    max_elements: int
    max_rank: int

    def __post_init__(self):
        if self.max_elements < 0 or self.max_rank < 0:
            raise ValueError("limits must be nonnegative")
        if self.max_elements > GROUND_CAP:
            raise TooLargeError(
                f"max_elements {self.max_elements} exceeds ground cap {GROUND_CAP}"
            )

    @classmethod
    def of(cls, max_elements: int, max_rank: int | None = None) -> "EnumLimits":
        return cls(max_elements, max_elements if max_rank is None else max_rank)


def modular_cuts(m: Matroid):
    """All modular cuts of m that yield simple extensions, as frozensets of flats.

    Processes flats in descending rank so up-closure and forced
    intersections resolve in one pass.  Free matroids short-circuit to
    principal filters: with every pair modular, a cut closed under
    intersections has a unique minimal flat.
    """
    flats = m.flats()
    if m.rank() == m.n:  # free matroid: empty cut or a principal filter
        yield frozenset()
        for f in flats:
            if m.rank(f) >= 2:
                yield frozenset(g for g in flats if g & f == f)
        return

    order = sorted(flats, key=lambda f: (-m.rank(f), f))
    t = len(order)
    index_of = {f: i for i, f in enumerate(order)}
    strict_supersets = [
        [j for j in range(i) if order[j] & order[i] == order[i] and order[j] != order[i]]
        for i in range(t)
    ]
    rank = [m.rank(f) for f in order]

    chosen = [False] * t

    def dfs(i: int, forced: frozenset[int]):
        if i == t:
            yield frozenset(order[j] for j in range(t) if chosen[j])
            return
        if i not in forced:
            yield from dfs(i + 1, forced)
        if rank[i] < 2:
            return
        if not all(chosen[j] for j in strict_supersets[i]):
            return
        new_forced = set(forced)
        new_forced.discard(i)
        fi = order[i]
        ok = True
        for j in range(i):
            if not chosen[j]:
                continue
            fj = order[j]
            meet = fi & fj
            if meet == fi or meet == fj:
                continue
            if rank[i] + rank[j] == m.rank(fi | fj) + m.rank(meet):
                k = index_of[meet]  # intersections of flats are flats
                if k < i:
                    if not chosen[k]:
                        ok = False
                        break
                else:
                    new_forced.add(k)
        if ok:
            chosen[i] = True
            yield from dfs(i + 1, frozenset(new_forced))
            chosen[i] = False

    yield from dfs(0, frozenset())


def extensions(m: Matroid, cap: int = GROUND_CAP) -> list[Matroid]:
    """All simple single-element extensions, one per isomorphism class.

    The new element is index n.  Sorted by canonical key.
    """
    if m.n + 1 > cap:
        raise TooLargeError(f"extension to {m.n + 1} elements exceeds cap {cap}")
    cl = m.closure_map()
    out: dict = {}
    for cut in modular_cuts(m):
        in_cut = np.zeros(1 << m.n, dtype=bool)
        if cut:
            in_cut[list(cut)] = True
        add = (~in_cut[cl]).astype(np.uint8)
        table = np.concatenate([m.table, m.table + add])
        ext = Matroid(table, validated=True)
        key = ext.canonical_key()
        if key not in out:
            out[key] = ext
    return [out[k] for k in sorted(out, key=lambda k: k.sort_key)]


def _emit_order(mats: dict) -> list[Matroid]:
    return [mats[k] for k in sorted(mats, key=lambda k: k.sort_key)]


def _enumerate_all(lim: EnumLimits):
    level = {empty_matroid().canonical_key(): empty_matroid()}
    yield _emit_order(level)
    for n in range(1, lim.max_elements + 1):
        nxt: dict = {}
        for parent in _emit_order(level):
            for ext in extensions(parent):
                if ext.rank() > lim.max_rank:
                    continue
                key = ext.canonical_key()
                if key not in nxt:
                    nxt[key] = ext
        level = nxt
        yield _emit_order(level)


def _enumerate_gf(q: int, lim: EnumLimits):
    pts = projective_points(lim.max_rank, q) if lim.max_rank > 0 else []
    cols = (
        np.array(pts, dtype=np.uint8).T
        if pts
        else np.zeros((max(lim.max_rank, 1), 0), dtype=np.uint8)
    )

    def build(subset: tuple[int, ...]) -> Matroid:
        if not subset:
            return empty_matroid()
        return from_matrix(GFMatrix(q=q, entries=cols[:, list(subset)]))

    yield [empty_matroid()]
    # For q in {2,3} a matroid determines its embedding up to projective
    # equivalence, so one subset per isomorphism class is a complete
    # frontier.  Larger fields can embed one matroid inequivalently, so
    # there every subset is grown (by ascending point index, each once)
    # and only the emitted stream is deduplicated.
    unique_rep = q in (2, 3)
    frontier: list[tuple[int, ...]] = [()]
    for _n in range(1, lim.max_elements + 1):
        seen: dict = {}
        all_grown: list[tuple[int, ...]] = []
        for subset in frontier:
            if unique_rep:
                present = set(subset)
                candidates = [p for p in range(len(pts)) if p not in present]
            else:
                candidates = range(subset[-1] + 1 if subset else 0, len(pts))
            for p in candidates:
                grown = tuple(sorted(subset + (p,)))
                mat = build(grown)
                key = mat.canonical_key()
                if key not in seen:
                    seen[key] = (grown, mat)
                if not unique_rep:
                    all_grown.append(grown)
        if unique_rep:
            frontier = [seen[k][0] for k in sorted(seen, key=lambda k: k.sort_key)]
        else:
            frontier = all_grown
        yield _emit_order({k: v[1] for k, v in seen.items()})


def enumerate_universe(u: Universe, lim: EnumLimits, cache: str | None = None):
    """Stream every simple matroid in the universe within the limits,
    exactly once up to isomorphism, in (n, rank, canonical key) order.
    """
    if lim.max_elements > CANON_CAP_DEFAULT:
        raise TooLargeError(
            f"enumeration needs canonical keys; max_elements {lim.max_elements} "
            f"exceeds canonicalization cap {CANON_CAP_DEFAULT}"
        )
    if cache and os.path.exists(cache):
        yield from read_cache(cache, u, lim)
        return
    levels = _enumerate_all(lim) if u.kind == "all" else _enumerate_gf(u.q, lim)
    emitted: list[Matroid] = []
    for level in levels:
        for mat in level:
            emitted.append(mat)
            yield mat
    if cache:
        write_cache(cache, u, lim, emitted)


def _cache_header(u: Universe, lim: EnumLimits) -> str:
    return (
        f"# flatkit-enum universe={u.label} "
        f"max_elements={lim.max_elements} max_rank={lim.max_rank}"
    )


def write_cache(path: str, u: Universe, lim: EnumLimits, mats: list[Matroid]) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(_cache_header(u, lim) + "\n")
        for m in mats:
            tuples = " ".join(_formats_mod.mask_to_tuple_str(b, m.n) for b in m.bases())
            fh.write(f"{m.n} {m.rank()} {m.canonical_key().hex} {tuples}\n")
    os.replace(tmp, path)


def read_cache(path: str, u: Universe, lim: EnumLimits):
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if header != _cache_header(u, lim):
            raise ParseError(
                "cache header mismatch", source=path, line=1,
                expected=_cache_header(u, lim),
            )
        for lineno, line in enumerate(fh, start=2):
            parts = line.split()
            if len(parts) < 3:
                raise ParseError("short cache record", source=path, line=lineno,
                                 expected="'n rank key bases...'")
            n, rank, keyhex = int(parts[0]), int(parts[1]), parts[2]
            if n == 0:
                mat = empty_matroid()
            else:
                masks = [_formats_mod.tuple_str_to_mask(t) for t in parts[3:]]
                mat = _formats_mod.matroid_from_bases(n, masks, rank=rank)
            if mat.canonical_key().hex != keyhex:
                raise ParseError("cache record does not match its canonical key",
                                 source=path, line=lineno)
            yield mat
