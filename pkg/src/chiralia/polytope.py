"""Rotation pairs of rank-3 polytopes: validity, Schlaefli type, chirality."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import pgroup
from .group_engine import (
    ConcreteGroup,
    GroupElement,
    Homomorphism,
    MixedGroupError,
    cyclic_subgroup,
    hom_extends,
    intersect,
    is_normal,
    product_set,
)
from .words import format_word

__all__ = [
    "RotationPair",
    "PolyhedronReport",
    "Theorem1Verdict",
    "PreconditionError",
    "classify",
    "enantiomorph",
    "dual",
    "quotient_criterion",
    "verify_theorem1",
    "sylow_prime",
]

Orientation = Literal["Chiral", "Regular", "Invalid"]


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class RotationPair:
    group: ConcreteGroup
    sigma1: GroupElement
    sigma2: GroupElement

    def __post_init__(self):
        if self.sigma1.group is not self.group or self.sigma2.group is not self.group:
            raise MixedGroupError("pair elements must belong to the pair's group")

    @classmethod
    def of(cls, group: ConcreteGroup, s1: int, s2: int) -> "RotationPair":
        return cls(group, group.element(s1), group.element(s2))

    @property
    def indices(self) -> tuple[int, int]:
        return self.sigma1.index, self.sigma2.index

    def words(self) -> tuple[str, str]:
        return format_word(self.sigma1.word()), format_word(self.sigma2.word())


def sylow_prime(order: int) -> tuple[int, int] | None:
    """``(p, m)`` when ``order = 2 p^m`` for an odd prime ``p`` and ``m >= 1``."""
    if order % 2 or order < 6:
        return None
    return pgroup.prime_power(order // 2) if (order // 2) % 2 else None


@dataclass
class PolyhedronReport:
    order: int
    generates: bool
    rotation_relation_holds: bool
    intersection_trivial: bool
    schlafli: tuple[int, int]
    tight: bool
    orientation: Orientation
    sylow_profile: pgroup.PGroupProfile | None = None
    evidence: dict = field(default_factory=dict)
    clauses: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "schlafli": list(self.schlafli),
            "tight": self.tight,
            "orientation": self.orientation,
            "clauses": self.clauses,
            "evidence": self.evidence,
            "generates": self.generates,
            "rotation_relation_holds": self.rotation_relation_holds,
            "intersection_trivial": self.intersection_trivial,
            "sylow_profile": self.sylow_profile.to_json() if self.sylow_profile else None,
        }

    @classmethod
    def from_json(cls, d: dict) -> "PolyhedronReport":
        prof = d.get("sylow_profile")
        return cls(
            order=d["order"],
            generates=d["generates"],
            rotation_relation_holds=d["rotation_relation_holds"],
            intersection_trivial=d["intersection_trivial"],
            schlafli=tuple(d["schlafli"]),
            tight=d["tight"],
            orientation=d["orientation"],
            sylow_profile=pgroup.PGroupProfile(**prof) if prof else None,
            evidence=d.get("evidence", {}),
            clauses=d.get("clauses", {}),
        )

    def invariant_errors(self) -> list[str]:
        errs = []
        k1, k2 = self.schlafli
        valid = self.generates and self.rotation_relation_holds and self.intersection_trivial and k1 >= 3 and k2 >= 3
        if (self.orientation == "Invalid") == valid:
            errs.append("orientation disagrees with validity flags")
        if self.tight != (k1 * k2 == self.order):
            errs.append("tight flag disagrees with k1*k2 == order")
        if self.orientation not in ("Chiral", "Regular", "Invalid"):
            errs.append(f"unknown orientation {self.orientation!r}")
        return errs

    def core(self) -> tuple:
        """Fields compared by the invariance properties."""
        return (
            self.order,
            self.generates,
            self.rotation_relation_holds,
            self.intersection_trivial,
            self.schlafli,
            self.tight,
            self.orientation,
        )


def classify(pair: RotationPair, *, with_profile: bool = True) -> PolyhedronReport:
    G = pair.group
    a, b = pair.indices
    n = G.order
    generates = bool(G.closure_mask([a, b]).all())
    ab = G.mul(a, b)
    rot = G.mul(ab, ab) == 0
    common = intersect(cyclic_subgroup(pair.sigma1), cyclic_subgroup(pair.sigma2))
    inter = common.size == 1
    k1, k2 = G.element_order(a), G.element_order(b)
    evidence: dict = {}
    if not inter:
        w = int(common[common != 0][0])
        evidence["intersection_element"] = format_word(G.word_of(w))
    valid = generates and rot and inter and k1 >= 3 and k2 >= 3
    if not valid:
        orientation = "Invalid"
        reasons = []
        if not generates:
            reasons.append("pair does not generate")
        if not rot:
            reasons.append("(sigma1*sigma2)^2 != 1")
        if not inter:
            reasons.append("<sigma1> and <sigma2> meet nontrivially")
        if k1 < 3 or k2 < 3:
            reasons.append("a type entry is below 3")
        evidence["invalid"] = reasons
    else:
        alpha = hom_extends(G, {pair.sigma1: ~pair.sigma1, pair.sigma2: ~pair.sigma2})
        if alpha is None:
            orientation = "Chiral"
            evidence["inverting_map"] = "does not extend"
        else:
            orientation = "Regular"
            inv_ok = alpha(alpha(pair.sigma1)) == pair.sigma1 and alpha(alpha(pair.sigma2)) == pair.sigma2
            evidence["inverting_map"] = "extends"
            evidence["automorphism"] = alpha.is_automorphism()
            evidence["involution_on_generators"] = bool(inv_ok)
    prof = None
    if with_profile and generates:
        sp = sylow_prime(n)
        if sp is not None and n <= pgroup.PGROUP_CAP:
            P = pgroup.sylow_p(G, sp[0])
            prof = pgroup.profile(G, P, sp[0])
    return PolyhedronReport(
        order=n,
        generates=generates,
        rotation_relation_holds=bool(rot),
        intersection_trivial=inter,
        schlafli=(k1, k2),
        tight=k1 * k2 == n,
        orientation=orientation,
        sylow_profile=prof,
        evidence=evidence,
    )


def enantiomorph(pair: RotationPair) -> RotationPair:
    """``(sigma1^-1, sigma1^2 sigma2)``."""
    s1, s2 = pair.sigma1, pair.sigma2
    return RotationPair(pair.group, ~s1, s1 * s1 * s2)


def dual(pair: RotationPair) -> RotationPair:
    """``(sigma2^-1, sigma1^-1)``; swaps the type."""
    return RotationPair(pair.group, ~pair.sigma2, ~pair.sigma1)


def quotient_criterion(G_pair: RotationPair, hom: Homomorphism, H_pair: RotationPair) -> bool:
    """Certify ``<s1> & <s2> = 1`` in ``G`` from an image pair that is a valid chiral pair.

    True iff ``hom`` is injective on ``<sigma1>`` or on ``<sigma2>`` and the
    image pair classifies as Chiral.  A certified result is rechecked
    directly; disagreement raises ``AssertionError``.
    """
    if hom.source is not G_pair.group or hom.target is not H_pair.group:
        raise ValueError("homomorphism does not connect the two pairs' groups")
    if hom(G_pair.sigma1) != H_pair.sigma1 or hom(G_pair.sigma2) != H_pair.sigma2:
        raise ValueError("homomorphism does not map the pair onto the image pair")
    G = G_pair.group
    ab = G.mul(*G_pair.indices)
    if G.mul(ab, ab) != 0:
        raise ValueError("(sigma1*sigma2)^2 != 1 in the source group")
    inj = hom.injective_on(cyclic_subgroup(G_pair.sigma1)) or hom.injective_on(cyclic_subgroup(G_pair.sigma2))
    ok = bool(inj) and classify(H_pair, with_profile=False).orientation == "Chiral"
    if ok:
        direct = intersect(cyclic_subgroup(G_pair.sigma1), cyclic_subgroup(G_pair.sigma2))
        if direct.size != 1:
            raise AssertionError("criterion certified the intersection but it is nontrivial")
    return ok


@dataclass
class Theorem1Verdict:
    p: int
    m: int
    clauses: dict

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.clauses.values())

    def failures(self) -> list[str]:
        return [k for k, c in self.clauses.items() if not c["pass"]]

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "passed": self.passed, "clauses": self.clauses}


def _log_p(n: int, p: int) -> int | None:
    k = 0
    while n > 1 and n % p == 0:
        n //= p
        k += 1
    return k if n == 1 else None


def verify_theorem1(pair: RotationPair, report: PolyhedronReport | None = None) -> Theorem1Verdict:
    """Check the four structural clauses for a chiral pair in a group of order ``2 p^m``."""
    G = pair.group
    report = report or classify(pair)
    if report.orientation != "Chiral":
        raise PreconditionError(f"pair is {report.orientation}, not chiral")
    sp = sylow_prime(G.order)
    if sp is None:
        raise PreconditionError(f"order {G.order} is not 2*p^m for an odd prime p")
    p, m = sp
    a, b = pair.indices
    P = pgroup.sylow_p(G, p)
    Pmask = np.zeros(G.order, dtype=np.bool_)
    Pmask[P] = True
    clauses: dict = {}

    # (1) semidirect decomposition
    ab = G.element(G.mul(a, b))
    C = cyclic_subgroup(ab)
    c1 = {
        "normal": bool(is_normal(G, P)),
        "meet_trivial": intersect(P, C).size == 1,
        "product_is_G": product_set(G, P, C).size == G.order,
    }
    c1["pass"] = all(c1.values())
    clauses["1"] = c1

    # (2) type {p^l1, 2p^l2}, recording the orientation that matches
    k1, k2 = report.schlafli
    l1, l2 = _log_p(k1, p), (_log_p(k2 // 2, p) if k2 % 2 == 0 else None)
    d1, d2 = _log_p(k2, p), (_log_p(k1 // 2, p) if k1 % 2 == 0 else None)
    if l1 and l2:
        match = "as_given"
        ls = (l1, l2)
    elif d1 and d2:
        match = "dual"
        ls = (d1, d2)
    else:
        match = None
        ls = None
    clauses["2"] = {"pass": match is not None, "match": match, "l1_l2": list(ls) if ls else None}

    # (3) P = <odd generator, even generator squared>, d = 2, nonabelian, m >= 3
    odd, even = (a, b) if match != "dual" else (b, a)
    H = G.closure([odd, G.mul(even, even)])
    prof = pgroup.profile(G, P, p)
    c3 = {
        "P_generated": bool(np.array_equal(H, P)),
        "d_is_2": prof.d == 2,
        "nonabelian": not prof.is_abelian,
        "m_at_least_3": m >= 3,
    }
    c3["pass"] = all(c3.values())
    clauses["3"] = c3

    # (4) tight iff metacyclic
    c4 = {"tight": report.tight, "metacyclic": prof.is_metacyclic}
    c4["pass"] = report.tight == prof.is_metacyclic
    if report.tight:
        ps = product_set(G, cyclic_subgroup(G.element(odd)), cyclic_subgroup(G.element(G.mul(even, even))))
        c4["product_set_is_P"] = ps.size == P.size
        c4["pass"] = c4["pass"] and c4["product_set_is_P"]
    clauses["4"] = c4
    return Theorem1Verdict(p, m, clauses)
