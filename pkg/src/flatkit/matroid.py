"""Exact simple matroids on ground set {0..n-1}, stored as full rank tables.

A subset is a bitmask (bit i set <=> element i present), a matroid is an
immutable uint8 table of 2**n ranks, and every query is a table lookup.
Construction enforces simplicity (no loops, no parallel pairs) and the
rank axioms; restriction, deletion and direct sums stay inside the simple
world by design.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import canonical, kernels
from .errors import (
    LoopColumnError,
    NonSimpleError,
    ParallelColumnsError,
    RankTableError,
    TooLargeError,
)
from .gf import field, normalize_column, projective_points

GROUND_CAP = 24  #: largest supported ground set (table is 2**n bytes)
CANON_CAP = 12  #: largest ground set canonical_key will process
EMBED_CAP = 10  #: largest ground set is_representable will search

# constructors re-validate tables up to this size; larger tables are only
# validated when explicitly requested (validate() or validated=False)
_CHECK_CAP = 16


def validate(table, n: int | None = None) -> bool:
    """True iff `table` satisfies all four rank-table axioms.

    The axioms: r(empty) = 0, 0 <= r(A) <= |A|, monotonicity under
    inclusion, and submodularity.  Raises RankTableError when the array
    length is not 2**n.
    """
    table = np.asarray(table, dtype=np.uint8)
    if n is None:
        if table.size == 0 or table.size & (table.size - 1):
            raise RankTableError(f"table length {table.size} is not a power of two")
        n = table.size.bit_length() - 1
    if table.size != 1 << n:
        raise RankTableError(f"table has {table.size} entries, expected 2**{n}")
    return kernels.validate_table(table, n)


def _simplicity_defect(table: np.ndarray, n: int) -> str | None:
    for e in range(n):
        if table[1 << e] != 1:
            return f"element {e} has rank {table[1 << e]} (loop)"
    for e in range(n):
        for f in range(e + 1, n):
            if table[(1 << e) | (1 << f)] != 2:
                return f"elements {e},{f} form a parallel pair"
    return None


@dataclass(frozen=True)
class CanonicalKey:
    """Permutation-invariant fingerprint: equal keys <=> isomorphic matroids."""

    data: bytes
    n: int
    rank: int

    @property
    def hex(self) -> str:
        return self.data.hex()

    @property
    def sort_key(self):
        return (self.n, self.rank, self.data)


class Matroid:
    """A simple matroid with O(1) rank queries.

    Instances are immutable after construction; the flat/closure caches
    are filled once on first use, so sharing across threads is safe.
    """

    __slots__ = ("n", "table", "_cl_table", "_flats", "_canon")

    def __init__(self, table, *, validated: bool = False, cap: int = GROUND_CAP):
        table = np.ascontiguousarray(table, dtype=np.uint8)
        if table.ndim != 1 or table.size == 0 or table.size & (table.size - 1):
            raise RankTableError(f"table length {table.size} is not a power of two")
        n = table.size.bit_length() - 1
        if n > cap:
            raise TooLargeError(f"ground set size {n} exceeds cap {cap}")
        if not validated or n <= _CHECK_CAP:
            if not kernels.validate_table(table, n):
                raise RankTableError("table violates the rank axioms")
        defect = _simplicity_defect(table, n)
        if defect is not None:
            raise NonSimpleError(defect)
        table.flags.writeable = False
        self.n = n
        self.table = table
        self._cl_table = None
        self._flats = None
        self._canon = None

    # -- basic queries ------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def rank(self, subset: int | None = None) -> int:
        """Rank of a subset mask; of the whole ground set when omitted."""
        if subset is None:
            subset = self.full_mask
        return int(self.table[subset])

    def closure(self, subset: int) -> int:
        """Smallest flat containing the subset."""
        if self._cl_table is not None:
            return int(self._cl_table[subset])
        r = self.table[subset]
        cl = subset
        for e in range(self.n):
            if self.table[subset | (1 << e)] == r:
                cl |= 1 << e
        return cl

    def closure_map(self) -> np.ndarray:
        """Closure of every mask, as one (cached, read-only) array."""
        if self._cl_table is None:
            cl = kernels.closure_table(self.table, self.n)
            cl.flags.writeable = False
            self._cl_table = cl
        return self._cl_table

    def flats(self, rank_filter: int | None = None) -> list[int]:
        """All flats as masks, ascending; optionally only those of one rank."""
        if self._flats is None:
            cl = self.closure_map()
            self._flats = np.flatnonzero(cl == np.arange(1 << self.n, dtype=np.int64))
        if rank_filter is None:
            return [int(f) for f in self._flats]
        return [int(f) for f in self._flats if self.table[f] == rank_filter]

    def proper_flats(self) -> list[int]:
        return [f for f in self.flats() if f != self.full_mask]

    def hyperplanes(self) -> list[int]:
        """Flats of rank exactly rank(M) - 1."""
        r = self.rank()
        if r == 0:
            raise ValueError("a rank-0 matroid has no hyperplanes")
        return self.flats(rank_filter=r - 1)

    def bases(self) -> list[int]:
        """Masks of the maximal independent sets, ascending."""
        pc = kernels.popcounts(self.n)
        r = self.rank()
        hit = np.flatnonzero((pc == r) & (self.table == r))
        return [int(b) for b in hit]

    def elements_of(self, mask: int) -> list[int]:
        return [e for e in range(self.n) if (mask >> e) & 1]

    # -- derived matroids ----------------------------------------------

    def restrict(self, subset: int) -> "Matroid":
        """Matroid induced on the subset, relabeled to 0..k-1 in mask order."""
        elems = np.array(self.elements_of(subset), dtype=np.int64)
        return Matroid(kernels.restrict_table(self.table, elems), validated=True)

    def delete(self, e: int) -> "Matroid":
        """Restriction to the complement of one element."""
        if not 0 <= e < self.n:
            raise ValueError(f"element {e} outside ground set of size {self.n}")
        return self.restrict(self.full_mask & ~(1 << e))

    # -- isomorphism ----------------------------------------------------

    def canonical_key(self, cap: int = CANON_CAP) -> CanonicalKey:
        if self._canon is None:
            data = canonical.canonical_bytes(self.table, self.n, cap=cap)
            self._canon = CanonicalKey(data=data, n=self.n, rank=self.rank())
        return self._canon

    def is_isomorphic_to(self, other: "Matroid") -> bool:
        if self.n != other.n or self.rank() != other.rank():
            return False
        return self.canonical_key() == other.canonical_key()

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Matroid)
            and self.n == other.n
            and bool(np.array_equal(self.table, other.table))
        )

    def __hash__(self):
        return hash((self.n, self.table.tobytes()))

    def __repr__(self):
        return f"Matroid(n={self.n}, rank={self.rank()})"

    # slots + immutability: block rebinds of the public fields
    def __setattr__(self, name, value):
        if name in ("n", "table") and hasattr(self, "table"):
            raise AttributeError("Matroid is immutable")
        object.__setattr__(self, name, value)


@dataclass(frozen=True)
class GFMatrix:
    """A matrix over GF(q); columns are matroid elements when built from it."""

    q: int
    entries: np.ndarray  # (rows x cols) uint8, row-major

    def __post_init__(self):
        field(self.q)  # raises UnsupportedFieldError
        ent = np.ascontiguousarray(self.entries, dtype=np.uint8)
        if ent.ndim != 2:
            raise ValueError("entries must be a 2-D array")
        if ent.size and ent.max() >= self.q:
            raise ValueError(f"entry {int(ent.max())} is not an element of GF({self.q})")
        ent.flags.writeable = False
        object.__setattr__(self, "entries", ent)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]


def uniform(r: int, n: int) -> Matroid:
    """U_{r,n}: every subset of size at most r is independent."""
    if not 0 <= r <= n:
        raise ValueError(f"uniform matroid needs 0 <= r <= n, got r={r}, n={n}")
    if (r == 0 and n > 0) or (r == 1 and n > 1):
        raise NonSimpleError(f"U_{{{r},{n}}} has loops or parallel elements")
    table = np.minimum(kernels.popcounts(n), r).astype(np.uint8)
    return Matroid(table, validated=True)


def empty_matroid() -> Matroid:
    return uniform(0, 0)


def from_matrix(m: GFMatrix, cap: int = GROUND_CAP) -> Matroid:
    """Column matroid of a GF(q) matrix.  Columns must form a simple matroid."""
    ent = m.entries
    n = m.cols
    if n > cap:
        raise TooLargeError(f"{n} columns exceed ground-set cap {cap}")
    for j in range(n):
        if not ent[:, j].any():
            raise LoopColumnError(f"column {j} is zero")
    normalized = [normalize_column(ent[:, j], m.q) for j in range(n)]
    seen: dict[tuple, int] = {}
    for j, v in enumerate(normalized):
        if v in seen:
            raise ParallelColumnsError(f"columns {seen[v]} and {j} are parallel")
        seen[v] = j
    f = field(m.q)
    table = kernels.gf_rank_table(ent, m.q, f.add, f.mul, f.neg, f.inv)
    return Matroid(table, validated=True)


def projective_geometry(dim: int, q: int, cap: int = GROUND_CAP) -> Matroid:
    """PG(dim, q): one element per 1-dimensional subspace of GF(q)^(dim+1)."""
    if dim < 0:
        raise ValueError("dimension must be nonnegative")
    npoints = (q ** (dim + 1) - 1) // (q - 1)
    if npoints > cap:
        raise TooLargeError(f"PG({dim},{q}) has {npoints} points, cap is {cap}")
    pts = projective_points(dim + 1, q)
    ent = np.array(pts, dtype=np.uint8).T if pts else np.zeros((dim + 1, 0), np.uint8)
    return from_matrix(GFMatrix(q=q, entries=ent), cap=cap)


def direct_sum(a: Matroid, b: Matroid, cap: int = GROUND_CAP) -> Matroid:
    """Disjoint union with additive rank; b's elements are relabeled above a's."""
    if a.n + b.n > cap:
        raise TooLargeError(f"direct sum has {a.n + b.n} elements, cap is {cap}")
    table = np.add.outer(b.table, a.table).ravel().astype(np.uint8)
    return Matroid(table, validated=True)


def canonical_form(m: Matroid, cap: int = CANON_CAP) -> CanonicalKey:
    return m.canonical_key(cap=cap)
