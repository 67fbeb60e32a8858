"""Todd-Coxeter coset enumeration.

>>> from chiralia.words import parse_presentation
>>> table = enumerate_cosets(parse_presentation("gens a; rels a^5;"))
>>> table.order
5
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from . import _tc_kernel as K
from .words import Presentation, Word, format_presentation

__all__ = [
    "EnumLimits",
    "CosetTable",
    "EnumerationExceeded",
    "TableNotClosedError",
    "enumerate_cosets",
    "permutation_rep",
    "default_max_cosets",
]

log = logging.getLogger(__name__)

Strategy = Literal["hlt", "felsch"]

# hard ceiling on the letters of one expanded relator
_MAX_RELATOR_LETTERS = 5_000_000


def default_max_cosets(expected_order: int | None = None) -> int:
    """10x the expected order when known, else 10**6; ``CHIRALIA_MAX_COSETS`` overrides."""
    env = os.environ.get("CHIRALIA_MAX_COSETS")
    if env:
        return int(env)
    if expected_order:
        return max(10 * int(expected_order), 64)
    return 10**6


@dataclass(frozen=True)
class EnumLimits:
    max_cosets: int = 10**6
    strategy: Strategy = "hlt"

    def __post_init__(self):
        if self.max_cosets < 1:
            raise ValueError("max_cosets must be positive")
        if self.strategy not in ("hlt", "felsch"):
            raise ValueError(f"unknown strategy {self.strategy!r}")


class EnumerationExceeded(RuntimeError):
    """The coset limit was hit; this says nothing about the group order."""


class TableNotClosedError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class CosetTable:
    """Result of an enumeration.

    ``actions`` is the closed, breadth-first standardized table: row ``c``,
    column ``2*i`` holds ``c . g_i`` and column ``2*i+1`` holds
    ``c . g_i^-1``.  Coset 0 is the subgroup itself.
    """

    presentation: Presentation
    subgroup_gens: tuple[Word, ...]
    status: Literal["closed", "exceeded"]
    strategy: Strategy
    max_cosets: int
    actions: np.ndarray | None = None
    max_defined: int = 0
    live_at_stop: int = 0
    stats: dict = field(default_factory=dict)

    @property
    def closed(self) -> bool:
        return self.status == "closed"

    @property
    def index(self) -> int:
        if not self.closed:
            raise TableNotClosedError(f"table is {self.status}; no index available")
        return int(self.actions.shape[0])

    @property
    def order(self) -> int:
        """Group order; only meaningful for the trivial subgroup."""
        if self.subgroup_gens:
            raise ValueError("order() needs an enumeration over the trivial subgroup")
        return self.index

    def to_json(self) -> dict:
        if not self.closed:
            raise TableNotClosedError(f"table is {self.status}")
        gens = [self.actions[:, 2 * i].tolist() for i in range(len(self.presentation.alphabet))]
        return {"order": self.index, "generators": gens, "strategy": self.strategy}


def _cyclic_reduce(syl: list[tuple[int, int]]) -> list[tuple[int, int]]:
    syl = list(syl)
    while len(syl) > 1 and syl[0][0] == syl[-1][0]:
        g = syl[0][0]
        e = syl[0][1] + syl[-1][1]
        syl = syl[1:-1]
        if e:
            if syl and syl[0][0] == g:
                syl[0] = (g, syl[0][1] + e)
                if syl[0][1] == 0:
                    syl = syl[1:]
            else:
                syl.insert(0, (g, e))
    return syl


def _free_reduce(syl) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    for g, e in syl:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            e += out[-1][1]
            out.pop()
            if e:
                out.append((g, e))
        else:
            out.append((g, e))
    return out


def _power_moduli(relators: Sequence[Word]) -> dict[int, int]:
    """Generators killed at a known exponent by a one-syllable relator."""
    moduli: dict[int, int] = {}
    for r in relators:
        syl = _cyclic_reduce(list(r.syllables))
        if len(syl) == 1:
            g, e = syl[0]
            e = abs(e)
            moduli[g] = e if g not in moduli else int(np.gcd(moduli[g], e))
    return moduli


def _reduce_exponents(syl, moduli: dict[int, int], keep_power: bool) -> list[tuple[int, int]]:
    # g^M = 1 lets any exponent of g be taken mod M; the group is unchanged
    if keep_power and len(syl) == 1:
        return list(syl)
    out = []
    for g, e in syl:
        m = moduli.get(g)
        if m:
            e = e % m
            if e > m // 2:
                e -= m
        out.append((g, e))
    return _free_reduce(out)


def _letters(syl) -> np.ndarray:
    total = sum(abs(e) for _, e in syl)
    if total > _MAX_RELATOR_LETTERS:
        raise ValueError(f"relator expands to {total} letters; too long to scan")
    cols = []
    for g, e in syl:
        cols.extend([2 * g if e > 0 else 2 * g + 1] * abs(e))
    return np.asarray(cols, dtype=np.int32)


def _flatten(words: list[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    off = np.zeros(len(words) + 1, dtype=np.int64)
    for i, w in enumerate(words):
        off[i + 1] = off[i] + len(w)
    flat = np.concatenate(words) if words else np.zeros(0, dtype=np.int32)
    return flat.astype(np.int32), off


def _prepare(pres: Presentation, subgroup_gens: Sequence[Word]):
    moduli = _power_moduli(pres.relators)
    rels = []
    seen = set()
    for r in pres.relators:
        syl = _reduce_exponents(_cyclic_reduce(list(r.syllables)), moduli, keep_power=True)
        syl = _cyclic_reduce(syl)
        if not syl:
            continue
        key = tuple(syl)
        if key in seen:
            continue
        seen.add(key)
        rels.append(_letters(syl))
    rels.sort(key=lambda w: (len(w), w.tolist()))
    subs = []
    for w in subgroup_gens:
        syl = _reduce_exponents(list(w.syllables), moduli, keep_power=False)
        if syl:
            subs.append(_letters(syl))
    return rels, subs


def _conjugates(rels: list[np.ndarray], ncols: int, inv_col: np.ndarray):
    """Cyclic conjugates of relators and their inverses, bucketed by first letter."""
    conj: list[np.ndarray] = []
    seen = set()
    for w in rels:
        inv = inv_col[w[::-1]]
        for base in (w, inv):
            for k in range(len(base)):
                c = np.concatenate([base[k:], base[:k]])
                key = c.tobytes()
                if key not in seen:
                    seen.add(key)
                    conj.append(c)
    conj.sort(key=lambda c: (int(c[0]), len(c), c.tolist()))
    flat, off = _flatten(conj)
    col_counts = np.zeros(ncols, dtype=np.int64)
    for c in conj:
        col_counts[c[0]] += 1
    col_off = np.zeros(ncols + 1, dtype=np.int64)
    col_off[1:] = np.cumsum(col_counts)
    col_conj = np.arange(len(conj), dtype=np.int64)
    return flat, off, col_conj, col_off


def enumerate_cosets(
    pres: Presentation,
    subgroup_gens: Sequence[Word] = (),
    limits: EnumLimits | None = None,
    *,
    expected_order: int | None = None,
) -> CosetTable:
    """Enumerate the cosets of ``<subgroup_gens>`` in the group presented by ``pres``.

    A closed result is standardized breadth-first from the subgroup coset,
    so HLT and Felsch produce identical tables.  Hitting the coset limit
    gives ``status == "exceeded"``; nothing is raised.
    """
    if limits is None:
        limits = EnumLimits(default_max_cosets(expected_order))
    names = pres.names
    for w in subgroup_gens:
        if w.alphabet != names:
            raise ValueError("subgroup generator over a different alphabet")
    k = len(names)
    ncols = 2 * k
    inv_col = np.arange(ncols, dtype=np.int32) ^ 1
    rels, subs = _prepare(pres, subgroup_gens)
    relf, relo = _flatten(rels)
    subf, subo = _flatten(subs)

    cap = int(limits.max_cosets)
    table = np.zeros((cap + 1, ncols), dtype=np.int32)
    p = np.zeros(cap + 1, dtype=np.int32)
    p[1] = 1
    state = np.zeros(8, dtype=np.int64)
    state[K.NEXT] = 2
    state[K.LIVE] = 1
    state[K.MAXNEXT] = 2

    if ncols == 0:
        code = K.CLOSED
    elif limits.strategy == "hlt":
        margin = int(relo[-1]) + ncols + 1
        code = K.enumerate_hlt(table, p, inv_col, relf, relo, subf, subo, margin, state)
    else:
        cflat, coff, ccol, ccoff = _conjugates(rels, ncols, inv_col)
        stack_size = max(1024, min(4 * cap, 1 << 24))
        code = K.enumerate_felsch(table, p, inv_col, relf, relo, subf, subo, cflat, coff, ccol, ccoff, stack_size, state)

    common = dict(
        presentation=pres,
        subgroup_gens=tuple(subgroup_gens),
        strategy=limits.strategy,
        max_cosets=cap,
        max_defined=int(state[K.MAXNEXT]) - 1,
        live_at_stop=int(state[K.LIVE]),
    )
    if code != K.CLOSED:
        log.info("enumeration of %s exceeded %d cosets", pres.label or "presentation", cap)
        return CosetTable(status="exceeded", **common)

    nxt = int(state[K.NEXT])
    if ncols == 0:
        std = np.zeros((1, 0), dtype=np.int32)
    else:
        std = K.standardize(np.ascontiguousarray(table[:nxt]), p[:nxt], 1)
    if std.shape[0] != int(state[K.LIVE]):
        raise AssertionError("standardized table size disagrees with live coset count")
    if ncols and not K.relators_hold(std, relf, relo):
        raise AssertionError("closed coset table violates a relator")
    return CosetTable(status="closed", actions=std, **common)


def permutation_rep(table: CosetTable) -> list:
    """One permutation per generator: the action on cosets (coset 0 = subgroup)."""
    from .group_engine import Permutation

    if not table.closed:
        raise TableNotClosedError(f"table is {table.status}")
    return [Permutation(table.actions[:, 2 * i]) for i in range(len(table.presentation.alphabet))]


def describe(table: CosetTable) -> str:
    head = format_presentation(table.presentation).rstrip()
    if table.closed:
        return f"{head}\n-> index {table.index} ({table.strategy}, peak {table.max_defined} cosets)"
    return f"{head}\n-> {table.status} at {table.max_cosets} cosets ({table.strategy})"
