"""Hereditary matroid classes given by a universe and forbidden flats.

A class is the set of universe members containing no flat isomorphic to
any forbidden matroid; that set is closed under flats by construction.
The extension class adds every matroid with one element whose deletion
lands in the class.  Membership verdicts carry witnesses, found in a
fixed scan order so reports are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

from .errors import ConfigError
from .gf import field
from .matroid import EMBED_CAP, Matroid, direct_sum, uniform


@dataclass(frozen=True)
class Universe:
    """Ambient world of a class: all simple matroids, or GF(q)-representable ones."""

    kind: str  # "all" | "gf"
    q: Optional[int] = None

    @classmethod
    def all(cls) -> "Universe":
        return cls(kind="all")

    @classmethod
    def gf(cls, q: int) -> "Universe":
        field(q)  # validate support
        return cls(kind="gf", q=q)

    def contains(self, m: Matroid, embed_cap: int = EMBED_CAP) -> bool:
        if self.kind == "all":
            return True
        from .represent import is_representable

        return is_representable(m, self.q, cap=embed_cap) is not None

    @property
    def label(self) -> str:
        return "all" if self.kind == "all" else f"gf{self.q}"


@dataclass(frozen=True)
class MembershipVerdict:
    in_class: bool
    witness_flat: Optional[int] = None
    witness_forbidden_index: Optional[int] = None
    universe_violation: bool = False


@dataclass(frozen=True)
class ExtensionVerdict:
    in_extension: bool
    already_in_class: bool = False
    witness_element: Optional[int] = None


@dataclass(frozen=True)
class HereditaryClass:
    name: str
    universe: Universe
    forbidden: tuple[Matroid, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "forbidden", tuple(self.forbidden))
        labels = tuple(self.labels) or tuple(
            f"forbidden[{i}]" for i in range(len(self.forbidden))
        )
        if len(labels) != len(self.forbidden):
            raise ConfigError("labels and forbidden list have different lengths")
        object.__setattr__(self, "labels", labels)
        seen = {}
        for i, f in enumerate(self.forbidden):
            if f.n == 0:
                raise ConfigError(f"forbidden flat {labels[i]} is empty")
            key = f.canonical_key()
            if key in seen:
                raise ConfigError(
                    f"forbidden flats {labels[seen[key]]} and {labels[i]} are isomorphic"
                )
            seen[key] = i
            if not self.universe.contains(f):
                raise ConfigError(
                    f"forbidden flat {labels[i]} is outside universe {self.universe.label}"
                )


def has_flat_isomorphic_to(m: Matroid, f: Matroid) -> Optional[int]:
    """First flat of m (ascending mask) whose restriction is isomorphic to f."""
    fkey = f.canonical_key()
    for x in m.flats(rank_filter=f.rank()):
        if x.bit_count() == f.n and m.restrict(x).canonical_key() == fkey:
            return x
    return None


def in_class(m: Matroid, c: HereditaryClass) -> MembershipVerdict:
    """Universe check, then scan flats (ascending) against the forbidden list."""
    if not c.universe.contains(m):
        return MembershipVerdict(in_class=False, universe_violation=True)
    by_shape = {}
    for i, f in enumerate(c.forbidden):
        by_shape.setdefault((f.rank(), f.n), []).append((i, f.canonical_key()))
    for x in m.flats():
        shape = (m.rank(x), x.bit_count())
        candidates = by_shape.get(shape)
        if not candidates:
            continue
        xkey = m.restrict(x).canonical_key()
        for i, fkey in candidates:
            if xkey == fkey:
                return MembershipVerdict(
                    in_class=False, witness_flat=x, witness_forbidden_index=i
                )
    return MembershipVerdict(in_class=True)


def in_extension_class(m: Matroid, c: HereditaryClass) -> ExtensionVerdict:
    """In the class, or one element's deletion is (smallest such element wins)."""
    if in_class(m, c).in_class:
        return ExtensionVerdict(in_extension=True, already_in_class=True)
    for e in range(m.n):
        if in_class(m.delete(e), c).in_class:
            return ExtensionVerdict(in_extension=True, witness_element=e)
    return ExtensionVerdict(in_extension=False)


def is_minimal_forbidden(f: Matroid, member: Callable[[Matroid], bool]) -> bool:
    """Outside the class, with every proper flat inside it."""
    if member(f):
        return False
    return all(member(f.restrict(x)) for x in f.proper_flats())


def membership(c: HereditaryClass, memo: bool = True) -> Callable[[Matroid], bool]:
    """Class-membership predicate; memoized by canonical key by default.

    Membership depends only on the isomorphism class, so the memo is safe;
    pass memo=False for an independent evaluation path.
    """
    if not memo:
        return lambda m: in_class(m, c).in_class
    cache: dict = {}

    def pred(m: Matroid) -> bool:
        key = m.canonical_key()
        hit = cache.get(key)
        if hit is None:
            hit = in_class(m, c).in_class
            cache[key] = hit
        return hit

    return pred


def extension_membership(c: HereditaryClass, memo: bool = True) -> Callable[[Matroid], bool]:
    """M^e-membership predicate built on the class predicate."""
    member = membership(c, memo=memo)

    def raw(m: Matroid) -> bool:
        return member(m) or any(member(m.delete(e)) for e in range(m.n))

    if not memo:
        return raw
    cache: dict = {}

    def pred(m: Matroid) -> bool:
        key = m.canonical_key()
        hit = cache.get(key)
        if hit is None:
            hit = raw(m)
            cache[key] = hit
        return hit

    return pred


@lru_cache(maxsize=1)
def binary_targets() -> HereditaryClass:
    """The built-in GF(2) class with forbidden flats U(3,3) and U(2,3)+U(1,1)."""
    return HereditaryClass(
        name="binary-targets",
        universe=Universe.gf(2),
        forbidden=(uniform(3, 3), direct_sum(uniform(2, 3), uniform(1, 1))),
        labels=("U(3,3)", "U(2,3)+U(1,1)"),
    )


BUILTIN_CLASSES = {"binary-targets": binary_targets}


def resolve_class(name_or_path: str) -> HereditaryClass:
    """CLI helper: a built-in class name or a path to a JSON config."""
    import os

    if name_or_path in BUILTIN_CLASSES:
        return BUILTIN_CLASSES[name_or_path]()
    if os.path.exists(name_or_path):
        from .formats import load_class_config

        return load_class_config(name_or_path)
    raise ConfigError(
        f"unknown class {name_or_path!r}; built-ins: {sorted(BUILTIN_CLASSES)}"
    )
