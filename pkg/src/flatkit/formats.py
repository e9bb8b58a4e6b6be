"""Matroid and class-config file formats.

Three interchangeable matroid descriptions, as line-oriented text (with
'#' comments) and as a JSON mirror:

* bases:  ``format: bases`` / ``n:`` / ``rank:`` / ``bases: 01 02 12``.
  Each tuple is one character per element, base-36 ('0'-'9' then
  'a'-'n'), so ground sets up to 24 elements stay one token per basis.
* matrix: ``format: matrix`` / ``field:`` / ``rows:`` / ``cols:`` then
  one line of entries per row.
* name:   ``format: name`` then an expression ``U(r,n)``, ``PG(d,q)``,
  or sums like ``U(2,3)+U(1,1)``.

Class configs are JSON: ``{"name", "universe": "all" | {"gf": q},
"forbidden": [record-or-name-expression, ...]}``.
"""

from __future__ import annotations

import json
import re
from functools import reduce

import numpy as np

from .classes import HereditaryClass, Universe
from .errors import ConfigError, ParseError
from .matroid import (
    GFMatrix,
    Matroid,
    direct_sum,
    from_matrix,
    projective_geometry,
    uniform,
)

_ALPHABET = "0123456789abcdefghijklmn"

_TERM_RE = re.compile(r"^(U|PG)\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)$")


def element_to_char(e: int) -> str:
    if not 0 <= e < len(_ALPHABET):
        raise ValueError(f"element {e} out of encodable range")
    return _ALPHABET[e]


def char_to_element(c: str) -> int:
    e = _ALPHABET.find(c.lower())
    if e < 0:
        raise ValueError(f"invalid element character {c!r}")
    return e


def mask_to_tuple_str(mask: int, n: int) -> str:
    return "".join(element_to_char(e) for e in range(n) if (mask >> e) & 1)


def tuple_str_to_mask(s: str) -> int:
    mask = 0
    for c in s:
        b = 1 << char_to_element(c)
        if mask & b:
            raise ValueError(f"repeated element in tuple {s!r}")
        mask |= b
    return mask


def table_from_bases(n: int, base_masks: list[int]) -> np.ndarray:
    """Rank table with r(A) = max over bases of |A ∩ B|."""
    bs = np.array(sorted(set(base_masks)), dtype=np.uint64)
    table = np.zeros(1 << n, dtype=np.uint8)
    masks = np.arange(1 << n, dtype=np.uint64)
    step = 1 << 16
    for start in range(0, 1 << n, step):
        chunk = masks[start : start + step]
        table[start : start + step] = np.bitwise_count(
            chunk[:, None] & bs[None, :]
        ).max(axis=1)
    return table


def matroid_from_bases(n: int, base_masks: list[int], rank: int | None = None) -> Matroid:
    """Build and cross-check a matroid from its claimed list of bases."""
    if not base_masks:
        raise ValueError("at least one basis is required")
    sizes = {int(b).bit_count() for b in base_masks}
    if len(sizes) != 1:
        raise ValueError("bases have different sizes")
    (r,) = sizes
    if rank is not None and rank != r:
        raise ValueError(f"declared rank {rank} but bases have size {r}")
    m = Matroid(table_from_bases(n, base_masks))
    if m.bases() != sorted(set(base_masks)):
        raise ValueError("sets do not satisfy basis exchange (not the bases of a matroid)")
    return m


def parse_name_expr(expr: str) -> Matroid:
    """U(r,n) | PG(d,q) | sums with '+'."""
    parts = [p.strip() for p in expr.strip().split("+")]
    if not all(parts):
        raise ValueError(f"empty term in expression {expr!r}")
    mats = []
    for part in parts:
        match = _TERM_RE.match(part)
        if not match:
            raise ValueError(f"bad term {part!r}; expected U(r,n) or PG(d,q)")
        kind, a, b = match.group(1), int(match.group(2)), int(match.group(3))
        mats.append(uniform(a, b) if kind == "U" else projective_geometry(a, b))
    return reduce(direct_sum, mats)


# -- text format ------------------------------------------------------------


def _content_lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield i, line


def _expect_kv(lineno, line, key, source):
    if ":" not in line:
        raise ParseError(f"bad line {line!r}", source=source, line=lineno, expected=f"'{key}: <value>'")
    k, v = line.split(":", 1)
    if k.strip() != key:
        raise ParseError(f"unexpected key {k.strip()!r}", source=source, line=lineno, expected=f"'{key}:'")
    return v.strip()


def parse_matroid_text(text: str, source: str = "<text>") -> Matroid:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty matroid file", source=source, line=1, expected="'format:'")
    it = iter(lines)
    lineno, line = next(it)
    fmt = _expect_kv(lineno, line, "format", source)
    try:
        if fmt == "bases":
            lineno, line = next(it)
            n = int(_expect_kv(lineno, line, "n", source))
            lineno, line = next(it)
            rank = int(_expect_kv(lineno, line, "rank", source))
            lineno, line = next(it)
            rest = _expect_kv(lineno, line, "bases", source)
            tokens = rest.split()
            for lineno2, line2 in it:
                tokens.extend(line2.split())
            masks = [tuple_str_to_mask(t) for t in tokens]
            return matroid_from_bases(n, masks, rank=rank)
        if fmt == "matrix":
            lineno, line = next(it)
            q = int(_expect_kv(lineno, line, "field", source))
            lineno, line = next(it)
            rows = int(_expect_kv(lineno, line, "rows", source))
            lineno, line = next(it)
            cols = int(_expect_kv(lineno, line, "cols", source))
            ent = np.zeros((rows, cols), dtype=np.uint8)
            for i in range(rows):
                lineno, line = next(it)
                vals = line.split()
                if len(vals) != cols:
                    raise ParseError(
                        f"row {i} has {len(vals)} entries",
                        source=source, line=lineno, expected=f"{cols} entries",
                    )
                ent[i] = [int(v) for v in vals]
            return from_matrix(GFMatrix(q=q, entries=ent))
        if fmt == "name":
            lineno, line = next(it)
            expr = _expect_kv(lineno, line, "name", source) if line.startswith("name") else line
            return parse_name_expr(expr)
    except StopIteration:
        raise ParseError("file ended early", source=source, line=lines[-1][0], expected="more lines") from None
    except ParseError:
        raise
    except (ValueError, KeyError) as exc:
        raise ParseError(str(exc), source=source, line=lineno) from exc
    raise ParseError(
        f"unknown format {fmt!r}", source=source, line=lines[0][0],
        expected="'bases', 'matrix', or 'name'",
    )


def write_matroid_text(m: Matroid) -> str:
    tuples = " ".join(mask_to_tuple_str(b, m.n) for b in m.bases())
    return f"format: bases\nn: {m.n}\nrank: {m.rank()}\nbases: {tuples}\n"


def write_matrix_text(gm: GFMatrix) -> str:
    lines = [f"format: matrix", f"field: {gm.q}", f"rows: {gm.rows}", f"cols: {gm.cols}"]
    for i in range(gm.rows):
        lines.append(" ".join(str(int(x)) for x in gm.entries[i]))
    return "\n".join(lines) + "\n"


# -- JSON mirror -------------------------------------------------------------


def parse_matroid_json(obj, source: str = "<json>") -> Matroid:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc), source=source, line=exc.lineno) from exc
    try:
        fmt = obj["format"]
        if fmt == "bases":
            masks = [sum(1 << int(e) for e in b) for b in obj["bases"]]
            for b in obj["bases"]:
                if len(set(b)) != len(b):
                    raise ValueError(f"repeated element in basis {b}")
            return matroid_from_bases(int(obj["n"]), masks, rank=int(obj["rank"]))
        if fmt == "matrix":
            ent = np.array(obj["entries"], dtype=np.uint8)
            if ent.ndim != 2 or ent.shape != (int(obj["rows"]), int(obj["cols"])):
                raise ValueError("entries shape does not match rows/cols")
            return from_matrix(GFMatrix(q=int(obj["field"]), entries=ent))
        if fmt == "name":
            return parse_name_expr(obj["name"])
        raise ValueError(f"unknown format {fmt!r}")
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(str(exc), source=source) from exc


def matroid_to_json_dict(m: Matroid) -> dict:
    return {
        "format": "bases",
        "n": m.n,
        "rank": m.rank(),
        "bases": [m.elements_of(b) for b in m.bases()],
    }


def parse_matroid_file(path) -> Matroid:
    text = open(path, "r", encoding="utf-8").read()
    if str(path).endswith(".json"):
        return parse_matroid_json(text, source=str(path))
    return parse_matroid_text(text, source=str(path))


def parse_matroid_arg(value: str) -> Matroid:
    """CLI helper: a path to a matroid file, or a name expression."""
    import os

    if os.path.exists(value):
        return parse_matroid_file(value)
    return parse_name_expr(value)


# -- class configs ------------------------------------------------------------


def parse_class_config(obj, source: str = "<config>") -> HereditaryClass:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc), source=source, line=exc.lineno) from exc
    try:
        name = obj["name"]
        uni = obj["universe"]
        if uni == "all":
            universe = Universe.all()
        elif isinstance(uni, dict) and "gf" in uni:
            universe = Universe.gf(int(uni["gf"]))
        else:
            raise ValueError(f"bad universe {uni!r}; expected \"all\" or {{\"gf\": q}}")
        forbidden = []
        labels = []
        for i, rec in enumerate(obj["forbidden"]):
            if isinstance(rec, str):
                forbidden.append(parse_name_expr(rec))
                labels.append(rec)
            else:
                forbidden.append(parse_matroid_json(rec, source=source))
                labels.append(rec.get("label", f"forbidden[{i}]"))
        return HereditaryClass(name=name, universe=universe, forbidden=forbidden, labels=labels)
    except (ParseError, ConfigError):
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(str(exc), source=source) from exc


def load_class_config(path) -> HereditaryClass:
    return parse_class_config(open(path, "r", encoding="utf-8").read(), source=str(path))
