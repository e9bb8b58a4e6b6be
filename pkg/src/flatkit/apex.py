"""Rank bound, forbidden-flat search, and verification suites for extension classes.

Given a hereditary class with forbidden-flat parameters r (max rank) and
k (max element count), minimal forbidden flats of the extension class
have rank at most max(2r, r + k(r-1)).  The search uses that ceiling to
clamp enumeration; the theorem verifier deliberately does not, since it
exists to test the ceiling.  Witness decompositions reproduce why a
found matroid lies outside the extension class: a flat S isomorphic to a
forbidden flat, and for each element e of S a flat F_e of the deletion
doing the same, with S and the F_e jointly spanning.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .classes import (
    HereditaryClass,
    extension_membership,
    in_class,
    is_minimal_forbidden,
    membership,
)
from .enumeration import EnumLimits, enumerate_universe, extensions
from .errors import EmptyForbiddenListError, NotForbiddenError, WitnessInvariantError
from .matroid import (
    CanonicalKey,
    Matroid,
    direct_sum,
    projective_geometry,
    uniform,
    validate,
)


@dataclass(frozen=True)
class ClassParams:
    """r = max forbidden-flat rank, k = max forbidden-flat size, and the ceiling."""

    r: int
    k: int
    bound: int

    def to_json_dict(self) -> dict:
        return {"r": self.r, "k": self.k, "bound": self.bound}


def class_params(c: HereditaryClass) -> ClassParams:
    if not c.forbidden:
        raise EmptyForbiddenListError(
            f"class {c.name!r} has no forbidden flats; its extension class is the whole universe"
        )
    r = max(f.rank() for f in c.forbidden)
    k = max(f.n for f in c.forbidden)
    return ClassParams(r=r, k=k, bound=max(2 * r, r + k * (r - 1)))


@dataclass(frozen=True)
class WitnessDecomposition:
    """Certificate that a matroid lies outside the extension class.

    s restricts to a forbidden flat; for the i-th element of s, fi[i] is
    a flat of the corresponding single-element deletion (expressed in the
    original labeling) restricting to a forbidden flat; together they
    span the whole matroid.
    """

    s: int
    elements: tuple[int, ...]
    fi: tuple[int, ...]
    union_rank: int

    def parts(self) -> list[int]:
        return [self.s, *self.fi]

    def to_json_dict(self, m: Matroid) -> dict:
        return {
            "s": m.elements_of(self.s),
            "elements": list(self.elements),
            "fi": [m.elements_of(f) for f in self.fi],
            "union_rank": self.union_rank,
        }


@dataclass(frozen=True)
class SearchReport:
    class_name: str
    params: ClassParams
    limits: EnumLimits
    found: tuple[tuple[CanonicalKey, Matroid], ...]
    complete: bool
    universe_note: str

    def found_keys(self) -> list[str]:
        return [k.hex for k, _ in self.found]

    def to_json_dict(self) -> dict:
        return {
            "class": self.class_name,
            "params": self.params.to_json_dict(),
            "limits": {
                "max_elements": self.limits.max_elements,
                "max_rank": self.limits.max_rank,
            },
            "complete": self.complete,
            "universe_note": self.universe_note,
            "found": [_found_entry(k, m) for k, m in self.found],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def _found_entry(key: CanonicalKey, m: Matroid) -> dict:
    return {
        "n": m.n,
        "rank": m.rank(),
        "canonical": key.hex,
        "bases": [m.elements_of(b) for b in m.bases()],
    }


def _pmap(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _universe_note(c: HereditaryClass, params: ClassParams, lim: EnumLimits,
                   clamped: bool) -> str:
    if c.universe.kind == "gf":
        q = c.universe.q
        pts = (q**params.bound - 1) // (q - 1)
        note = (
            f"search restricted to GF({q})-representable simple matroids; "
            f"full coverage of the rank ceiling {params.bound} needs "
            f"max_elements {pts}"
        )
    else:
        note = (
            "ALL universe: element count is unbounded at fixed rank, so any "
            "element limit is honest-partial coverage (only rank is provably bounded)"
        )
    if clamped:
        note += f"; enumeration rank was clamped to the ceiling {params.bound}"
    return note


def forbidden_flats_ext(
    c: HereditaryClass,
    lim: EnumLimits,
    jobs: int = 1,
    clamp: bool = True,
    memo: bool = True,
) -> SearchReport:
    """Minimal forbidden flats of the extension class within the limits.

    With clamp=True (the default) the enumeration rank is capped at the
    class ceiling, which loses nothing; the theorem verifier runs with
    clamp=False precisely to check that claim.
    """
    params = class_params(c)
    eff_rank = min(lim.max_rank, params.bound) if clamp else lim.max_rank
    eff = EnumLimits(lim.max_elements, eff_rank)
    member_ext = extension_membership(c, memo=memo)
    candidates = list(enumerate_universe(c.universe, eff))
    flags = _pmap(lambda m: is_minimal_forbidden(m, member_ext), candidates, jobs)
    found = sorted(
        ((m.canonical_key(), m) for m, hit in zip(candidates, flags) if hit),
        key=lambda kv: kv[0].sort_key,
    )
    if c.universe.kind == "gf":
        q = c.universe.q
        pts = (q**params.bound - 1) // (q - 1)
        complete = lim.max_elements >= pts and eff_rank >= params.bound
    else:
        complete = False
    return SearchReport(
        class_name=c.name,
        params=params,
        limits=lim,
        found=tuple(found),
        complete=complete,
        universe_note=_universe_note(c, params, lim, clamped=clamp and eff_rank < lim.max_rank),
    )


def naive_forbidden_flats_ext(c: HereditaryClass, lim: EnumLimits) -> list[CanonicalKey]:
    """Independent slow route: no rank clamp, no memoization, plain double loop."""
    class_params(c)  # same precondition as the fast route
    member_ext = extension_membership(c, memo=False)
    keys = set()
    for m in enumerate_universe(c.universe, lim):
        if is_minimal_forbidden(m, member_ext):
            keys.add(m.canonical_key())
    return sorted(keys, key=lambda k: k.sort_key)


def _first_forbidden_flat(m: Matroid, c: HereditaryClass) -> int | None:
    verdict = in_class(m, c)
    return verdict.witness_flat


def extract_witness(m: Matroid, c: HereditaryClass) -> WitnessDecomposition:
    """Decompose a minimal forbidden flat of the extension class (see class doc).

    Raises NotForbiddenError when the precondition fails, and
    WitnessInvariantError when a piece cannot be found (possible only for
    matroids whose non-membership is a universe violation rather than a
    forbidden flat) or the spanning invariant breaks.
    """
    member_ext = extension_membership(c)
    if not is_minimal_forbidden(m, member_ext):
        raise NotForbiddenError(
            f"{m!r} is not a minimal forbidden flat for {c.name}^e"
        )
    s = _first_forbidden_flat(m, c)
    if s is None:
        raise WitnessInvariantError(
            "no flat of the matroid restricts to a forbidden flat "
            "(non-membership comes from the universe test)"
        )
    elements = tuple(m.elements_of(s))
    fi = []
    for e in elements:
        d = m.delete(e)
        x = _first_forbidden_flat(d, c)
        if x is None:
            raise WitnessInvariantError(
                f"deletion of element {e} has no forbidden-flat witness"
            )
        remaining = [v for v in range(m.n) if v != e]
        fi.append(sum(1 << remaining[i] for i in range(d.n) if (x >> i) & 1))
    union = s
    for f in fi:
        union |= f
    union_rank = m.rank(union)
    if union_rank != m.rank():
        raise WitnessInvariantError(
            f"witness parts span rank {union_rank}, expected full rank {m.rank()}"
        )
    return WitnessDecomposition(
        s=s, elements=elements, fi=tuple(fi), union_rank=union_rank
    )


@dataclass(frozen=True)
class LemmaReport:
    class_name: str
    limits: EnumLimits
    checked: int
    members: int
    violations: tuple[dict, ...]

    @property
    def violation_count(self) -> int:
        return len(self.violations)

    def to_json_dict(self) -> dict:
        return {
            "suite": "lemma",
            "class": self.class_name,
            "limits": {
                "max_elements": self.limits.max_elements,
                "max_rank": self.limits.max_rank,
            },
            "checked": self.checked,
            "members": self.members,
            "violation_count": self.violation_count,
            "violations": list(self.violations),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def verify_lemma(c: HereditaryClass, lim: EnumLimits, jobs: int = 1) -> LemmaReport:
    """Check that the extension class is closed under flats on the enumerated range."""
    member_ext = extension_membership(c)
    mats = list(enumerate_universe(c.universe, lim))

    def check(m: Matroid):
        if not member_ext(m):
            return None
        bad = [f for f in m.flats() if not member_ext(m.restrict(f))]
        return (m, bad)

    results = _pmap(check, mats, jobs)
    members = sum(1 for r in results if r is not None)
    violations = []
    for r in results:
        if r is None:
            continue
        m, bad = r
        for f in bad:
            violations.append(
                {"matroid": m.canonical_key().hex, "flat": m.elements_of(f)}
            )
    return LemmaReport(
        class_name=c.name,
        limits=lim,
        checked=len(mats),
        members=members,
        violations=tuple(violations),
    )


@dataclass(frozen=True)
class TheoremReport:
    class_name: str
    params: ClassParams
    limits: EnumLimits
    found: tuple[dict, ...]
    violations: tuple[dict, ...]

    @property
    def violation_count(self) -> int:
        return len(self.violations)

    def to_json_dict(self) -> dict:
        return {
            "suite": "theorem",
            "class": self.class_name,
            "params": self.params.to_json_dict(),
            "limits": {
                "max_elements": self.limits.max_elements,
                "max_rank": self.limits.max_rank,
            },
            "found": list(self.found),
            "violation_count": self.violation_count,
            "violations": list(self.violations),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def verify_theorem_bound(c: HereditaryClass, lim: EnumLimits, jobs: int = 1) -> TheoremReport:
    """Unclamped search, then check the rank ceiling and the witness dichotomy.

    For each found minimal forbidden flat: rank <= max(2r, r + k(r-1));
    the witness parts span; and either some pair of parts is disjoint and
    rank <= 2r, or all pairs meet and rank <= r + j(r-1) where j is the
    number of F_i pieces actually extracted.
    """
    params = class_params(c)
    report = forbidden_flats_ext(c, lim, jobs=jobs, clamp=False)
    found_entries = []
    violations = []
    for key, m in report.found:
        entry = _found_entry(key, m)
        if m.rank() > params.bound:
            violations.append({"kind": "rank_ceiling", "canonical": key.hex,
                               "rank": m.rank(), "bound": params.bound})
        try:
            w = extract_witness(m, c)
        except WitnessInvariantError as exc:
            violations.append({"kind": "witness", "canonical": key.hex,
                               "error": str(exc)})
        else:
            entry["witness"] = w.to_json_dict(m)
            parts = w.parts()
            disjoint = any(
                parts[i] & parts[j] == 0
                for i in range(len(parts))
                for j in range(i + 1, len(parts))
            )
            if disjoint:
                entry["witness"]["branch"] = "disjoint_pair"
                ok = m.rank() <= 2 * params.r
            else:
                entry["witness"]["branch"] = "all_pairs_meet"
                ok = m.rank() <= params.r + len(w.fi) * (params.r - 1)
            if not ok:
                violations.append({"kind": "dichotomy", "canonical": key.hex,
                                   "rank": m.rank(),
                                   "branch": entry["witness"]["branch"]})
        found_entries.append(entry)
    return TheoremReport(
        class_name=c.name,
        params=params,
        limits=lim,
        found=tuple(found_entries),
        violations=tuple(violations),
    )


@dataclass(frozen=True)
class OracleReport:
    class_name: str
    limits: EnumLimits
    fast_keys: tuple[str, ...]
    naive_keys: tuple[str, ...]

    @property
    def equal(self) -> bool:
        return self.fast_keys == self.naive_keys

    @property
    def violation_count(self) -> int:
        return 0 if self.equal else 1

    def to_json_dict(self) -> dict:
        return {
            "suite": "oracle",
            "class": self.class_name,
            "limits": {
                "max_elements": self.limits.max_elements,
                "max_rank": self.limits.max_rank,
            },
            "fast": list(self.fast_keys),
            "naive": list(self.naive_keys),
            "equal": self.equal,
            "violation_count": self.violation_count,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def verify_oracle(c: HereditaryClass, lim: EnumLimits, jobs: int = 1) -> OracleReport:
    """Clamped+memoized search vs the naive route; the key sets must coincide."""
    fast = forbidden_flats_ext(c, lim, jobs=jobs, clamp=True, memo=True)
    naive = naive_forbidden_flats_ext(c, lim)
    return OracleReport(
        class_name=c.name,
        limits=lim,
        fast_keys=tuple(key.hex for key, _ in fast.found),
        naive_keys=tuple(key.hex for key in naive),
    )


# -- rank-axiom suite ---------------------------------------------------------


def axiom_corpus(seed: int = 20260810, random_matrices: int = 200) -> list[Matroid]:
    """Deterministic construction corpus: uniforms, geometries, sums,
    restrictions, deletions, extensions, and seeded random GF(2)/GF(3)
    column matroids with at most 8 elements."""
    from .gf import projective_points
    from .matroid import GFMatrix, from_matrix

    corpus: list[Matroid] = [uniform(0, 0), uniform(1, 1)]
    for r in range(2, 5):
        for n in range(r, 9):
            corpus.append(uniform(r, n))
    fano = projective_geometry(2, 2)
    corpus += [projective_geometry(1, 2), fano, projective_geometry(2, 3)]
    corpus.append(direct_sum(uniform(2, 3), uniform(1, 1)))
    corpus.append(direct_sum(uniform(2, 3), uniform(2, 3)))
    corpus += [fano.restrict(h) for h in fano.hyperplanes()[:3]]
    corpus += [fano.delete(0), uniform(4, 8).delete(0)]
    for seedling in (uniform(2, 2), uniform(2, 3), uniform(3, 3)):
        corpus += extensions(seedling)
    rng = np.random.default_rng(seed)
    made = 0
    while made < random_matrices:
        q = int(rng.choice([2, 3]))
        r = int(rng.integers(2, 5))
        n = int(rng.integers(1, 9))
        pts = projective_points(r, q)
        if n > len(pts):
            continue
        pick = rng.choice(len(pts), size=n, replace=False)
        ent = np.array([pts[i] for i in sorted(pick)], dtype=np.uint8).T
        corpus.append(from_matrix(GFMatrix(q=q, entries=ent)))
        made += 1
    return corpus


def mutate_table(rng, m: Matroid) -> np.ndarray:
    """A copy of m's table with one axiom broken, chosen pseudo-randomly."""
    t = m.table.copy()
    n = m.n
    strategies = [0, 1, 2, 3] if n >= 2 else [0, 1]
    s = int(rng.choice(strategies))
    if s == 0:  # normalization at the empty set
        t[0] = 1
    elif s == 1:  # normalization: exceed |A|
        a = int(rng.integers(0, 1 << n)) if n else 0
        t[a] = a.bit_count() + 1
    elif s == 2:  # monotonicity: a superset drops below a singleton (needs n >= 2)
        e, x = (int(v) for v in rng.choice(n, size=2, replace=False))
        extra = 1 << x
        for y in range(n):
            if y not in (e, x) and rng.random() < 0.5:
                extra |= 1 << y
        t[(1 << e) | extra] = 0
    else:  # submodularity: overshoot the exchange inequality
        e, f = sorted(int(v) for v in rng.choice(n, size=2, replace=False))
        base = 0
        for x in range(n):
            if x not in (e, f) and rng.random() < 0.5:
                base |= 1 << x
        be, bf = 1 << e, 1 << f
        t[base | be | bf] = int(t[base | be]) + int(t[base | bf]) - int(t[base]) + 1
    return t


@dataclass(frozen=True)
class AxiomReport:
    corpus_size: int
    corpus_failures: tuple[str, ...]
    mutant_count: int
    mutants_accepted: int

    @property
    def violation_count(self) -> int:
        return len(self.corpus_failures) + self.mutants_accepted

    def to_json_dict(self) -> dict:
        return {
            "suite": "axioms",
            "corpus_size": self.corpus_size,
            "corpus_failures": list(self.corpus_failures),
            "mutant_count": self.mutant_count,
            "mutants_accepted": self.mutants_accepted,
            "violation_count": self.violation_count,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def verify_axioms(seed: int = 20260810, random_matrices: int = 200,
                  mutants: int = 50) -> AxiomReport:
    """Validate the whole construction corpus; mutated tables must all fail."""
    corpus = axiom_corpus(seed=seed, random_matrices=random_matrices)
    failures = tuple(repr(m) for m in corpus if not validate(m.table, m.n))
    rng = np.random.default_rng(seed + 1)
    accepted = 0
    eligible = [m for m in corpus if m.n >= 1]
    for _ in range(mutants):
        m = eligible[int(rng.integers(0, len(eligible)))]
        if validate(mutate_table(rng, m), m.n):
            accepted += 1
    return AxiomReport(
        corpus_size=len(corpus),
        corpus_failures=failures,
        mutant_count=mutants,
        mutants_accepted=accepted,
    )
