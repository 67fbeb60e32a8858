"""Exhaustive rotation-pair search and the JSON-lines atlas.

Pairs are found as ``sigma2 = sigma1^-1 w`` with ``w^2 = 1``, which is
exactly the condition ``(sigma1 sigma2)^2 = 1``.  Two generating pairs are
related by an automorphism iff the breadth-first relabelling of their
Cayley graphs coincides, so that relabelling serves as a hash key; every
merge is confirmed by an explicit ``hom_extends`` witness.
"""

from __future__ import annotations

import json
import logging
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Literal

import numpy as np

from . import __version__
from . import _group_kernels as GK
from .group_engine import ELEMENT_CAP, ConcreteGroup, GroupTooLarge, hom_extends
from .polytope import (
    PolyhedronReport,
    PreconditionError,
    RotationPair,
    classify,
    dual,
    enantiomorph,
    sylow_prime,
    verify_theorem1,
)

__all__ = [
    "SearchSpec",
    "AtlasRecord",
    "AtlasLoad",
    "search",
    "search_group",
    "verify_theorem1_corpus",
    "atlas_append",
    "atlas_load",
    "atlas_diff",
    "materialize",
    "equivalence",
    "ATLAS_VERSION",
]

log = logging.getLogger(__name__)

ATLAS_VERSION = 1
Dedupe = Literal["raw", "aut", "aut+enantiomorph+dual"]
DEDUPE_MODES = ("raw", "aut", "aut+enantiomorph+dual")


@dataclass(frozen=True)
class SearchSpec:
    """What to search.  Give exactly one of ``construction``, ``presentation_path`` or ``group``.

    ``construction`` is a dict such as ``{"family": "G", "p": 3, "e": 2, "r": 2}``.
    """

    construction: dict | None = None
    presentation_path: str | None = None
    group: ConcreteGroup | None = None
    require_chiral: bool = False
    require_type: tuple[int, int] | None = None
    require_tight: bool | None = None
    dedupe: Dedupe = "raw"
    threads: int = 1
    element_cap: int = ELEMENT_CAP

    def __post_init__(self):
        given = [x is not None for x in (self.construction, self.presentation_path, self.group)]
        if sum(given) != 1:
            raise ValueError("give exactly one group source")
        if self.dedupe not in DEDUPE_MODES:
            raise ValueError(f"unknown dedupe mode {self.dedupe!r}")


def materialize(spec: SearchSpec) -> ConcreteGroup:
    if spec.group is not None:
        return spec.group
    if spec.presentation_path is not None:
        from .words import parse_presentation

        text = Path(spec.presentation_path).read_text()
        return ConcreteGroup.from_presentation(parse_presentation(text, Path(spec.presentation_path).stem))
    return construct_group(spec.construction)


def construct_group(c: dict) -> ConcreteGroup:
    from . import constructions as K

    fam = c["family"]
    if fam in ("P", "G", "Gstar"):
        q = K.MaximalClassParams(c["p"], c["e"], c["r"])
        if fam == "P":
            return K.build_P(q).group
        return (K.build_G_case1(q) if fam == "G" else K.build_G_star(q))[0]
    if fam == "tight":
        pres = K.build_tight(K.TightParams(c["p"], c["l1"], c["l2"]))
    elif fam == "thm2":
        pres = K.build_theorem2(K.TheoremTwoParams(c["p"], c["variant"], c.get("i"), c.get("j")))
    else:
        raise ValueError(f"unknown family {fam!r}")
    return ConcreteGroup.from_presentation(pres)


@dataclass
class AtlasRecord:
    group: str
    order: int
    sigma1: str
    sigma2: str
    report: PolyhedronReport
    version: str = __version__
    timestamp: str = ""
    class_size: int = 1
    pair: RotationPair | None = field(default=None, compare=False, repr=False)

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.group, self.sigma1, self.sigma2)

    def to_json(self) -> dict:
        return {
            "v": ATLAS_VERSION,
            "group": self.group,
            "order": self.order,
            "sigma1": self.sigma1,
            "sigma2": self.sigma2,
            "class_size": self.class_size,
            "report": self.report.to_json(),
            "version": self.version,
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_json(cls, d: dict) -> "AtlasRecord":
        return cls(
            group=d["group"],
            order=int(d["order"]),
            sigma1=d["sigma1"],
            sigma2=d["sigma2"],
            report=PolyhedronReport.from_json(d["report"]),
            version=d.get("version", ""),
            timestamp=d.get("timestamp", ""),
            class_size=int(d.get("class_size", 1)),
        )

    def invariant_errors(self) -> list[str]:
        errs = self.report.invariant_errors()
        if self.report.order != self.order:
            errs.append("record order differs from report order")
        return errs


# ---------------------------------------------------------------------------
# search


def _pair_key(G: ConcreteGroup, a: int, b: int) -> bytes | None:
    count, rel = GK.pair_key(G.rperm(a), G.rperm(b))
    if count != G.order:
        return None
    return rel.tobytes()


def _intersection_trivial(G: ConcreteGroup, cyc_mask: np.ndarray, b: int) -> bool:
    # <a> & <b> is nontrivial iff it holds the order-q subgroup of <b> for some prime q
    o = G.element_order(b)
    q = 2
    rest = o
    while rest > 1:
        if rest % q == 0:
            if cyc_mask[G.power(b, o // q)]:
                return False
            while rest % q == 0:
                rest //= q
        q += 1
    return True


def _candidates_for(G: ConcreteGroup, a: int, W: np.ndarray) -> list[tuple[int, int, bytes]]:
    out = []
    ainv = G.inv(a)
    bs = G.mul_many(np.full(W.size, ainv), W)
    cyc = np.zeros(G.order, dtype=np.bool_)
    x = 0
    while True:
        cyc[x] = True
        x = G.mul(x, a)
        if x == 0:
            break
    for b in np.unique(bs):
        b = int(b)
        if G.element_order(b) < 3 or not _intersection_trivial(G, cyc, b):
            continue
        key = _pair_key(G, a, b)
        if key is not None:
            out.append((a, b, key))
    return out


def _valid_pairs(G: ConcreteGroup, threads: int) -> list[tuple[int, int, bytes]]:
    W = np.flatnonzero(G.orders <= 2).astype(np.int64)
    firsts = [int(a) for a in np.flatnonzero(G.orders >= 3)]
    if threads > 1 and len(firsts) > 1:
        chunks = [firsts[i::threads] for i in range(threads)]
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(lambda ch: [t for a in ch for t in _candidates_for(G, a, W)], chunks))
        found = [t for part in parts for t in part]
    else:
        found = [t for a in firsts for t in _candidates_for(G, a, W)]
    found.sort(key=lambda t: (t[0], t[1]))
    return found


def _orbit_key(G: ConcreteGroup, a: int, b: int, key_of) -> bytes:
    """Smallest Aut-key over the orbit of (a, b) under enantiomorph and dual."""
    seen = {}
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        k = key_of(x, y)
        if k in seen:
            continue
        seen[k] = (x, y)
        xi = G.inv(x)
        stack.append((xi, G.mul(G.mul(x, x), y)))
        stack.append((G.inv(y), xi))
    return min(seen)


def search_group(
    G: ConcreteGroup,
    *,
    label: str | None = None,
    require_chiral: bool = False,
    require_type: tuple[int, int] | None = None,
    require_tight: bool | None = None,
    dedupe: Dedupe = "raw",
    threads: int = 1,
    element_cap: int = ELEMENT_CAP,
    timestamp: str | None = None,
) -> list[AtlasRecord]:
    """All valid rotation pairs of ``G`` (type entries >= 3, generating,
    trivial intersection), classified, filtered and deduplicated."""
    if G.order > element_cap:
        raise GroupTooLarge(f"group of order {G.order} exceeds the element cap {element_cap}")
    if dedupe not in DEDUPE_MODES:
        raise ValueError(f"unknown dedupe mode {dedupe!r}")
    label = label if label is not None else (G.label or "group")
    if timestamp is None:
        timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    if G.order < 3:
        return []
    pairs = _valid_pairs(G, threads)
    keys: dict[tuple[int, int], bytes] = {(a, b): k for a, b, k in pairs}

    def key_of(x, y):
        k = keys.get((x, y))
        if k is None:
            k = _pair_key(G, x, y)
            keys[(x, y)] = k
        return k

    # one classification per automorphism class; the report is Aut-invariant
    reports: dict[bytes, PolyhedronReport] = {}
    reps: dict[bytes, tuple[int, int]] = {}
    for a, b, k in pairs:
        if k not in reps:
            reps[k] = (a, b)
            reports[k] = classify(RotationPair.of(G, a, b))

    def keep(rep: PolyhedronReport) -> bool:
        if rep.orientation == "Invalid":
            return False
        if require_chiral and rep.orientation != "Chiral":
            return False
        if require_type is not None and tuple(rep.schlafli) != tuple(require_type):
            return False
        if require_tight is not None and rep.tight != require_tight:
            return False
        return True

    if dedupe == "raw":
        chosen = [((a, b), k, 1) for a, b, k in pairs]
    else:
        if dedupe == "aut":
            cls_of = {k: k for k in reps}
        else:
            cls_of = {k: _orbit_key(G, *reps[k], key_of) for k in reps}
        members: dict[bytes, list[tuple[int, int]]] = {}
        for a, b, k in pairs:
            members.setdefault(cls_of[k], []).append((a, b))
        chosen = []
        for ck, mem in members.items():
            rep = min(mem)
            for other in mem:
                if dedupe == "aut" and other != rep:
                    if equivalence(RotationPair.of(G, *rep), RotationPair.of(G, *other)) is None:
                        raise AssertionError("Aut-key collision without an automorphism witness")
            chosen.append((rep, keys[rep], len(mem)))
        chosen.sort()

    out = []
    for (a, b), k, size in chosen:
        rep = reports[k]
        if not keep(rep):
            continue
        pair = RotationPair.of(G, a, b)
        w1, w2 = pair.words()
        out.append(
            AtlasRecord(
                group=label,
                order=G.order,
                sigma1=w1,
                sigma2=w2,
                report=replace(rep, evidence=dict(rep.evidence)),
                timestamp=timestamp,
                class_size=size,
                pair=pair,
            )
        )
    return out


def equivalence(a: RotationPair, b: RotationPair):
    """An automorphism taking pair ``a`` to pair ``b``, or ``None``."""
    if a.group is not b.group:
        raise ValueError("pairs live in different groups")
    f = hom_extends(a.group, {a.sigma1: b.sigma1, a.sigma2: b.sigma2})
    return f if f is not None and f.is_automorphism() else None


def search(spec: SearchSpec, *, timestamp: str | None = None) -> list[AtlasRecord]:
    G = materialize(spec)
    label = G.label
    if spec.construction is not None:
        c = spec.construction
        label = c["family"] + "(" + ",".join(f"{k}={c[k]}" for k in sorted(c) if k != "family") + ")"
    return search_group(
        G,
        label=label,
        require_chiral=spec.require_chiral,
        require_type=spec.require_type,
        require_tight=spec.require_tight,
        dedupe=spec.dedupe,
        threads=spec.threads,
        element_cap=spec.element_cap,
        timestamp=timestamp,
    )


def verify_theorem1_corpus(records: Iterable[AtlasRecord]) -> dict:
    """Run the structural clauses on every record with an attached pair."""
    records = list(records)
    failures = []
    assertions = []
    checked = 0
    for i, rec in enumerate(records):
        if rec.pair is None:
            failures.append({"record": i, "error": "no group attached"})
            continue
        try:
            verdict = verify_theorem1(rec.pair)
        except PreconditionError as ex:
            failures.append({"record": i, "error": str(ex)})
            continue
        checked += 1
        if not verdict.passed:
            failures.append({"record": i, "clauses": verdict.failures()})
        sp = sylow_prime(rec.order)
        prof = rec.report.sylow_profile
        if sp is None or prof is None or prof.is_abelian or prof.d != 2:
            assertions.append({"record": i, "error": "Sylow subgroup is not nonabelian of rank 2"})
    return {
        "records": len(records),
        "checked": checked,
        "failures": failures,
        "corpus_assertions": assertions,
        "passed": not failures and not assertions,
    }


# ---------------------------------------------------------------------------
# persistence


def atlas_append(path: str | Path, records: Iterable[AtlasRecord]) -> int:
    n = 0
    with open(path, "a", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec.to_json(), ensure_ascii=False) + "\n")
            n += 1
    return n


@dataclass
class AtlasLoad:
    records: list[AtlasRecord]
    errors: list[str]
    warnings: list[str]


def atlas_load(path: str | Path) -> AtlasLoad:
    """Read an atlas; bad lines are reported by number and skipped."""
    records, errors, warns = [], [], []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                d = json.loads(line)
                if not isinstance(d, dict):
                    raise ValueError("record is not an object")
                if d.get("v") != ATLAS_VERSION:
                    msg = f"line {lineno}: schema version {d.get('v')!r}, expected {ATLAS_VERSION}"
                    warns.append(msg)
                    warnings.warn(msg, stacklevel=2)
                rec = AtlasRecord.from_json(d)
            except (ValueError, KeyError, TypeError) as ex:
                errors.append(f"line {lineno}: malformed record ({ex})")
                continue
            bad = rec.invariant_errors()
            if bad:
                errors.append(f"line {lineno}: " + "; ".join(bad))
                continue
            records.append(rec)
    return AtlasLoad(records, errors, warns)


def _keys(x) -> set:
    if isinstance(x, (str, Path)):
        x = atlas_load(x).records
    elif isinstance(x, AtlasLoad):
        x = x.records
    return {r.key for r in x}


def atlas_diff(a, b) -> dict:
    """Keys ``(group, sigma1, sigma2)`` present in only one of two atlases."""
    ka, kb = _keys(a), _keys(b)
    return {"only_in_a": sorted(ka - kb), "only_in_b": sorted(kb - ka)}
