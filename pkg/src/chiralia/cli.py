"""``chiralia`` command line.

Exit status: 0 when every check passed, 1 when a verification failed (the
failure report is on stdout), 2 for usage errors and exhausted limits.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from . import constructions as K
from .atlas import DEDUPE_MODES, SearchSpec, atlas_append, atlas_diff, atlas_load, search
from .coset_enum import EnumerationExceeded, EnumLimits, default_max_cosets, enumerate_cosets
from .group_engine import ELEMENT_CAP, ConcreteGroup, GroupTooLarge
from .polytope import PolyhedronReport, RotationPair, classify
from .words import PresentationSyntaxError, format_presentation, parse_presentation

log = logging.getLogger("chiralia")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
REPORT_COLUMNS = ["group", "order", "k1", "k2", "tight", "orientation"]


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# output


def _emit(args, payload, *, rows=None, human=None) -> None:
    fmt = args.format
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        if rows:
            w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write((human if human is not None else json.dumps(payload, indent=2)) + "\n")


def _report_row(group: str, rep: PolyhedronReport) -> dict:
    k1, k2 = rep.schlafli
    return dict(zip(REPORT_COLUMNS, [group, rep.order, k1, k2, rep.tight, rep.orientation]))


def _report_human(group: str, rep: PolyhedronReport) -> str:
    k1, k2 = rep.schlafli
    lines = [
        f"{group}: order {rep.order}, type {{{k1},{k2}}}, {rep.orientation}"
        + (", tight" if rep.tight else ""),
    ]
    for k, v in rep.evidence.items():
        lines.append(f"  {k}: {v}")
    if rep.sylow_profile:
        sp = rep.sylow_profile
        lines.append(
            f"  sylow: p={sp.p} m={sp.m} d={sp.d} class={sp.nilpotency_class} "
            f"abelian={sp.is_abelian} metacyclic={sp.is_metacyclic}"
        )
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# helpers


def _limits(args, expected=None) -> EnumLimits:
    mc = args.max_cosets or default_max_cosets(expected)
    return EnumLimits(mc, getattr(args, "strategy", "hlt"))


def _read_presentation(path: str):
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"file not found: {path}")
    return parse_presentation(p.read_text(encoding="utf-8"), p.stem)


def _construction(args) -> dict:
    fam = args.family
    if fam is None:
        raise UsageError("--family is required")
    need = {"P": ("p", "e", "r"), "G": ("p", "e", "r"), "Gstar": ("p", "e", "r"),
            "tight": ("p", "l1", "l2"), "thm2": ("p", "variant")}[fam]
    c = {"family": fam}
    for k in need:
        v = getattr(args, k)
        if v is None:
            raise UsageError(f"--family {fam} needs --{k}")
        c[k] = v
    if fam == "thm2" and args.variant >= 4:
        if args.i is None or args.j is None:
            raise UsageError("variants 4-6 need --i and --j")
        c["i"], c["j"] = args.i, args.j
    return c


def _build_family(c: dict):
    """(presentation, group, pair or None)."""
    fam = c["family"]
    if fam in ("P", "G", "Gstar"):
        q = K.MaximalClassParams(c["p"], c["e"], c["r"])
        if fam == "P":
            mc = K.build_P(q)
            return mc.presentation, mc.group, None
        if fam == "G":
            G, pair = K.build_G_case1(q)
            return K.presentation_G(q), G, pair
        G, pair = K.build_G_star(q)
        return K.presentation_G_star(q), G, pair
    if fam == "tight":
        pres = K.build_tight(K.TightParams(c["p"], c["l1"], c["l2"]))
    else:
        pres = K.build_theorem2(K.TheoremTwoParams(c["p"], c["variant"], c.get("i"), c.get("j")))
    G = ConcreteGroup.from_presentation(pres)
    return pres, G, RotationPair(G, G.gen("sigma1"), G.gen("sigma2"))


# ---------------------------------------------------------------------------
# commands


def cmd_order(args) -> int:
    pres = _read_presentation(args.file)
    table = enumerate_cosets(pres, (), _limits(args))
    if not table.closed:
        raise EnumerationExceeded(f"{args.file}: exceeded {table.max_cosets} cosets")
    payload = {"file": args.file, "order": table.index, "strategy": table.strategy}
    if args.check_axioms:
        G = ConcreteGroup.from_coset_table(table)
        ok = G.verify_axioms(samples=args.samples, seed=args.seed)
        payload["axioms"] = ok
        _emit(args, payload, rows=[payload], human=f"{table.index}\naxioms: {'ok' if ok else 'FAILED'}")
        return EXIT_OK if ok else EXIT_FAIL
    _emit(args, payload, rows=[payload], human=str(table.index))
    return EXIT_OK


def cmd_construct(args) -> int:
    c = _construction(args)
    pres, G, pair = _build_family(c)
    label = pres.label or c["family"]
    payload = {"construction": c, "presentation": format_presentation(pres), "order": G.order}
    rep = None
    if pair is not None:
        rep = classify(pair)
        payload["sigma1"], payload["sigma2"] = pair.words()
        payload["report"] = rep.to_json()
    human = format_presentation(pres).rstrip() + f"\n-> order {G.order}"
    if rep is not None:
        human += "\n" + _report_human(label, rep)
    rows = [_report_row(label, rep)] if rep else [{"group": label, "order": G.order}]
    _emit(args, payload, rows=rows, human=human)
    return EXIT_OK


def cmd_classify(args) -> int:
    pres = _read_presentation(args.file)
    G = ConcreteGroup.from_presentation(pres, _limits(args))
    if G.order > args.element_cap:
        raise GroupTooLarge(f"order {G.order} exceeds element cap {args.element_cap}")
    try:
        pair = RotationPair(G, G.evaluate(args.sigma1), G.evaluate(args.sigma2))
    except (KeyError, PresentationSyntaxError) as ex:
        raise UsageError(f"bad word: {ex}") from ex
    rep = classify(pair)
    label = pres.label or "group"
    _emit(args, {"group": label, "sigma1": args.sigma1, "sigma2": args.sigma2, "report": rep.to_json()},
          rows=[_report_row(label, rep)], human=_report_human(label, rep))
    return EXIT_OK


def _search_spec(args) -> SearchSpec:
    if (args.family is None) == (args.presentation is None):
        raise UsageError("give exactly one of --family or --presentation")
    ktype = None
    if args.type:
        try:
            k1, k2 = (int(x) for x in args.type.split(","))
        except ValueError as ex:
            raise UsageError("--type expects K1,K2") from ex
        ktype = (k1, k2)
    return SearchSpec(
        construction=_construction(args) if args.family else None,
        presentation_path=args.presentation,
        require_chiral=args.chiral,
        require_type=ktype,
        require_tight=args.tight,
        dedupe=args.dedupe,
        threads=args.threads,
        element_cap=args.element_cap,
    )


def cmd_search(args) -> int:
    recs = search(_search_spec(args), timestamp="")
    out = []
    for r in recs:
        d = r.to_json()
        d.pop("timestamp")
        out.append(d)
    human = "\n".join(
        f"{r.sigma1} , {r.sigma2}: type {{{r.report.schlafli[0]},{r.report.schlafli[1]}}} "
        f"{r.report.orientation}" + (f" (class of {r.class_size})" if r.class_size > 1 else "")
        for r in recs
    ) or "no pairs"
    _emit(args, out, rows=[_report_row(r.group, r.report) for r in recs], human=human)
    return EXIT_OK


def cmd_verify(args) -> int:
    from . import suites as S

    if args.suite == "thm1":
        res = S.suite_thm1(args.p or 3, args.e or 2, args.r or 2, threads=args.threads)
    elif args.suite == "thm2":
        variants = (args.variant,) if args.variant else (1, 2, 3, 4, 5, 6)
        res = S.suite_thm2(args.p or 3, variants, i=args.i, j=args.j, max_cosets=args.max_cosets)
    elif args.suite == "thm3":
        res = S.suite_thm3(args.p or 3, args.e or 2, args.r or 2)
    elif args.suite == "tight":
        res = S.suite_tight()
    else:
        if args.p is not None:
            if args.e is None or args.r is None:
                raise UsageError("a single lemma point needs --p, --e and --r")
            res = S.suite_lemmas(points=[K.MaximalClassParams(args.p, args.e, args.r)])
        else:
            res = S.suite_lemmas(args.limit)
    for c in res.checks:
        c.detail.pop("seconds", None)
    payload = res.to_json()
    rows = [{"suite": res.suite, "check": c.name, "pass": c.passed} for c in res.checks]
    human = "\n".join(
        [f"# {n}" for n in res.notes]
        + [f"{'PASS' if c.passed else 'FAIL'}  {c.name}" for c in res.checks]
        + [f"{res.suite}: {'all checks passed' if res.passed else f'{len(res.failures())} failed'}"]
    )
    if not res.passed and args.format == "human":
        human += "\n" + json.dumps({"failures": [c.to_json() for c in res.failures()]}, indent=2)
    _emit(args, payload, rows=rows, human=human)
    return EXIT_OK if res.passed else EXIT_FAIL


def cmd_atlas(args) -> int:
    if args.action == "append":
        recs = search(_search_spec(args))
        n = atlas_append(args.path, recs)
        _emit(args, {"appended": n, "path": args.path}, rows=[{"appended": n}], human=f"appended {n} records")
        return EXIT_OK
    if args.action == "load":
        loaded = atlas_load(args.path)
        payload = {"records": len(loaded.records), "errors": loaded.errors, "warnings": loaded.warnings}
        human = f"{len(loaded.records)} records" + "".join(f"\n  {e}" for e in loaded.errors + loaded.warnings)
        rows = [_report_row(r.group, r.report) for r in loaded.records]
        _emit(args, payload, rows=rows, human=human)
        return EXIT_FAIL if loaded.errors else EXIT_OK
    if args.other is None:
        raise UsageError("atlas diff needs two paths")
    d = atlas_diff(args.path, args.other)
    payload = {k: [list(x) for x in v] for k, v in d.items()}
    rows = [{"side": k, "group": g, "sigma1": a, "sigma2": b} for k, v in d.items() for g, a, b in v]
    human = f"only in {args.path}: {len(d['only_in_a'])}\nonly in {args.other}: {len(d['only_in_b'])}"
    _emit(args, payload, rows=rows, human=human)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _family_flags(p: argparse.ArgumentParser, *, required=False) -> None:
    p.add_argument("--family", choices=["P", "G", "Gstar", "tight", "thm2"], required=required)
    for name in ("p", "e", "r", "l1", "l2", "variant", "i", "j"):
        p.add_argument(f"--{name}", type=int)


def _search_flags(p: argparse.ArgumentParser) -> None:
    _family_flags(p)
    p.add_argument("--presentation", help="presentation file instead of a family")
    p.add_argument("--chiral", action="store_true", help="keep chiral pairs only")
    p.add_argument("--type", help="keep one Schlaefli type, e.g. 9,18")
    t = p.add_mutually_exclusive_group()
    t.add_argument("--tight", dest="tight", action="store_true", default=None)
    t.add_argument("--non-tight", dest="tight", action="store_false")
    p.add_argument("--dedupe", choices=DEDUPE_MODES, default="raw")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "human"], default="human")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--max-cosets", type=int, default=None)
    common.add_argument("--element-cap", type=int, default=ELEMENT_CAP)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="chiralia", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"chiralia {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("order", parents=[common], help="enumerate a presentation and print its order")
    p.add_argument("file")
    p.add_argument("--strategy", choices=["hlt", "felsch"], default="hlt")
    p.add_argument("--check-axioms", action="store_true")
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("construct", parents=[common], help="build a named family")
    _family_flags(p, required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("classify", parents=[common], help="classify a rotation pair")
    p.add_argument("file")
    p.add_argument("--sigma1", required=True)
    p.add_argument("--sigma2", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("search", parents=[common], help="all rotation pairs of a group")
    _search_flags(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=["thm1", "thm2", "thm3", "lemmas", "tight"])
    for name in ("p", "e", "r", "variant", "i", "j"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--limit", type=int, default=10**5, help="p^m bound for the lemma sweep")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("atlas", parents=[common], help="append to, load or diff JSON-lines atlases")
    p.add_argument("action", choices=["append", "load", "diff"])
    p.add_argument("path")
    p.add_argument("other", nargs="?")
    _search_flags(p)
    p.set_defaults(func=cmd_atlas)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as ex:
        return int(ex.code or 0) and EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (UsageError, PresentationSyntaxError, FileNotFoundError) as ex:
        print(f"chiralia: error: {ex}", file=sys.stderr)
        return EXIT_USAGE
    except (EnumerationExceeded, GroupTooLarge) as ex:
        print(f"chiralia: limit exceeded: {ex}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as ex:
        print(f"chiralia: error: {ex}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
