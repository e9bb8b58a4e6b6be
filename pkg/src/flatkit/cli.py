"""Command-line front end.

Mathematical answers ("not in class", violation counts) go to stdout or
report files; the exit status only reflects how the run went: 0 for a
successful run, 2 for input/parse errors, 3 for cap violations.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import apex
from .classes import in_class, in_extension_class, resolve_class, Universe
from .enumeration import EnumLimits, enumerate_universe
from .errors import ConfigError, FlatkitError, ParseError, TooLargeError
from .formats import (
    mask_to_tuple_str,
    matroid_to_json_dict,
    parse_matroid_arg,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAPS = 3


def _add_common(p, with_jobs=False, with_limits=False):
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", help="write the report here instead of stdout")
    if with_jobs:
        p.add_argument("--jobs", type=int, default=1,
                       help="parallel candidate testing (output is normalized)")
    if with_limits:
        p.add_argument("--max-elements", type=int, required=True)
        p.add_argument("--max-rank", type=int, default=None,
                       help="defaults to --max-elements")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="flatkit",
        description="Simple-matroid engine: class membership, extension "
                    "classes, and forbidden-flat search.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="class membership of one matroid")
    p.add_argument("--class", dest="klass", required=True,
                   help="built-in class name or JSON config path")
    p.add_argument("--matroid", required=True,
                   help="matroid file or name expression like 'U(3,3)'")
    _add_common(p)

    p = sub.add_parser("check-ext", help="extension-class membership")
    p.add_argument("--class", dest="klass", required=True)
    p.add_argument("--matroid", required=True)
    _add_common(p)

    p = sub.add_parser("flats", help="list the flats of a matroid by rank")
    p.add_argument("--matroid", required=True)
    p.add_argument("--rank", type=int, default=None, help="only this rank")
    _add_common(p)

    p = sub.add_parser("iso", help="are two matroids isomorphic?")
    p.add_argument("--matroid", action="append", required=True,
                   help="give twice: the two matroids to compare")
    _add_common(p)

    p = sub.add_parser("enumerate", help="stream canonical representatives")
    p.add_argument("--universe", required=True,
                   help="'all' or 'gfQ' (e.g. gf2)")
    p.add_argument("--cache", default=None,
                   help="on-disk cache file (accelerator only)")
    _add_common(p, with_limits=True)

    p = sub.add_parser("forbidden-ext",
                       help="search minimal forbidden flats of the extension class")
    p.add_argument("--class", dest="klass", required=True)
    _add_common(p, with_jobs=True, with_limits=True)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=("axioms", "lemma", "theorem", "oracle"),
                   required=True)
    p.add_argument("--class", dest="klass", default=None,
                   help="required for lemma/theorem/oracle")
    p.add_argument("--seed", type=int, default=20260810, help="axioms suite seed")
    p.add_argument("--max-elements", type=int, default=None)
    p.add_argument("--max-rank", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", help="write the report here instead of stdout")
    return ap


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _limits(args) -> EnumLimits:
    return EnumLimits.of(args.max_elements, args.max_rank)


def _mask_str(m, mask: int) -> str:
    return "{" + ",".join(str(e) for e in m.elements_of(mask)) + "}"


def _cmd_check(args) -> int:
    c = resolve_class(args.klass)
    m = parse_matroid_arg(args.matroid)
    v = in_class(m, c)
    if args.format == "json":
        _emit(args, json.dumps({
            "class": c.name,
            "matroid": matroid_to_json_dict(m),
            "in_class": v.in_class,
            "universe_violation": v.universe_violation,
            "witness_flat": None if v.witness_flat is None else m.elements_of(v.witness_flat),
            "witness_forbidden": None if v.witness_forbidden_index is None
            else c.labels[v.witness_forbidden_index],
        }, indent=2) + "\n")
    elif v.in_class:
        _emit(args, "IN_CLASS\n")
    elif v.universe_violation:
        _emit(args, f"NOT_IN_CLASS, outside universe {c.universe.label}\n")
    else:
        _emit(args, f"NOT_IN_CLASS, witness flat = {_mask_str(m, v.witness_flat)}, "
                    f"forbidden = {c.labels[v.witness_forbidden_index]}\n")
    return EXIT_OK


def _cmd_check_ext(args) -> int:
    c = resolve_class(args.klass)
    m = parse_matroid_arg(args.matroid)
    v = in_extension_class(m, c)
    if args.format == "json":
        _emit(args, json.dumps({
            "class": c.name,
            "matroid": matroid_to_json_dict(m),
            "in_extension": v.in_extension,
            "already_in_class": v.already_in_class,
            "witness_element": v.witness_element,
        }, indent=2) + "\n")
    elif not v.in_extension:
        _emit(args, "NOT_IN_EXTENSION\n")
    elif v.already_in_class:
        _emit(args, "IN_EXTENSION (already in class)\n")
    else:
        _emit(args, f"IN_EXTENSION, witness element = {v.witness_element}\n")
    return EXIT_OK


def _cmd_flats(args) -> int:
    m = parse_matroid_arg(args.matroid)
    flats = m.flats(rank_filter=args.rank)
    if args.format == "json":
        by_rank: dict[str, list] = {}
        for f in flats:
            by_rank.setdefault(str(m.rank(f)), []).append(m.elements_of(f))
        _emit(args, json.dumps({"n": m.n, "rank": m.rank(), "flats": by_rank},
                               indent=2) + "\n")
    else:
        lines = [f"n={m.n} rank={m.rank()} flats={len(flats)}"]
        for f in flats:
            lines.append(f"rank {m.rank(f)}: {_mask_str(m, f)}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_iso(args) -> int:
    if len(args.matroid) != 2:
        raise ConfigError("iso needs exactly two --matroid arguments")
    a = parse_matroid_arg(args.matroid[0])
    b = parse_matroid_arg(args.matroid[1])
    same = a.is_isomorphic_to(b)
    if args.format == "json":
        _emit(args, json.dumps({"isomorphic": same}, indent=2) + "\n")
    else:
        _emit(args, ("ISOMORPHIC" if same else "NOT_ISOMORPHIC") + "\n")
    return EXIT_OK


def _parse_universe(label: str) -> Universe:
    if label == "all":
        return Universe.all()
    if label.startswith("gf"):
        return Universe.gf(int(label[2:]))
    raise ConfigError(f"bad universe {label!r}; expected 'all' or 'gfQ'")


def _cmd_enumerate(args) -> int:
    u = _parse_universe(args.universe)
    lim = _limits(args)
    mats = list(enumerate_universe(u, lim, cache=args.cache))
    if args.format == "json":
        _emit(args, json.dumps([
            {"n": m.n, "rank": m.rank(), "canonical": m.canonical_key().hex,
             "bases": [m.elements_of(b) for b in m.bases()]}
            for m in mats
        ], indent=2) + "\n")
    else:
        lines = []
        for m in mats:
            tuples = " ".join(mask_to_tuple_str(b, m.n) for b in m.bases())
            lines.append(f"{m.n} {m.rank()} {m.canonical_key().hex} {tuples}".rstrip())
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_forbidden_ext(args) -> int:
    c = resolve_class(args.klass)
    report = apex.forbidden_flats_ext(c, _limits(args), jobs=args.jobs)
    out = getattr(args, "out", None)
    if out and (os.path.isdir(out) or out.endswith(os.sep) or out.endswith("/")):
        os.makedirs(out, exist_ok=True)
        doc = report.to_json_dict()
        for entry in doc["found"]:
            path = os.path.join(out, f"{entry['canonical']}.json")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(json.dumps(entry, indent=2) + "\n")
        doc["found"] = [e["canonical"] for e in doc["found"]]
        with open(os.path.join(out, "summary.json"), "w", encoding="utf-8") as fh:
            fh.write(json.dumps(doc, indent=2) + "\n")
        return EXIT_OK
    if args.format == "json":
        _emit(args, report.to_json())
    else:
        lines = [
            f"class {report.class_name}: r={report.params.r} k={report.params.k} "
            f"bound={report.params.bound}",
            f"limits: max_elements={report.limits.max_elements} "
            f"max_rank={report.limits.max_rank}",
            f"complete: {report.complete}",
            f"note: {report.universe_note}",
            f"found {len(report.found)} minimal forbidden flat(s) for the extension class:",
        ]
        for key, m in report.found:
            lines.append(f"  n={m.n} rank={m.rank()} canonical={key.hex}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.suite == "axioms":
        report = apex.verify_axioms(seed=args.seed)
    else:
        if not args.klass:
            raise ConfigError(f"--class is required for the {args.suite} suite")
        if args.max_elements is None:
            raise ConfigError(f"--max-elements is required for the {args.suite} suite")
        c = resolve_class(args.klass)
        lim = EnumLimits.of(args.max_elements, args.max_rank)
        if args.suite == "lemma":
            report = apex.verify_lemma(c, lim, jobs=args.jobs)
        elif args.suite == "theorem":
            report = apex.verify_theorem_bound(c, lim, jobs=args.jobs)
        else:
            report = apex.verify_oracle(c, lim, jobs=args.jobs)
    if args.format == "json":
        _emit(args, report.to_json())
    else:
        doc = report.to_json_dict()
        lines = [f"suite: {args.suite}"]
        for k, v in doc.items():
            if k in ("violations", "found", "fast", "naive", "corpus_failures", "suite"):
                continue
            lines.append(f"{k}: {v}")
        lines.append(f"violations: {doc['violation_count']}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


_COMMANDS = {
    "check": _cmd_check,
    "check-ext": _cmd_check_ext,
    "flats": _cmd_flats,
    "iso": _cmd_iso,
    "enumerate": _cmd_enumerate,
    "forbidden-ext": _cmd_forbidden_ext,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except TooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPS
    except (ParseError, ConfigError, FlatkitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
