"""Explicit presentations: maximal-class p-groups, their chiral extensions,
the tight family and the order-2p^3 / 2p^4 candidates; plus lemma checks.

Generator names: ``s1 .. s{p-1}``, ``beta``, ``sigma``, ``x`` for the
maximal-class family and ``sigma1``, ``sigma2`` for two-generator families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .coset_enum import EnumLimits, default_max_cosets
from .group_engine import (
    ConcreteGroup,
    GroupElement,
    Homomorphism,
    center,
    hom_extends,
    is_normal,
    nilpotency_class,
    quotient,
    subgroup_closure,
)
from .pgroup import is_prime
from .polytope import RotationPair
from .words import Presentation, Word, commutator

__all__ = [
    "binomial",
    "MaximalClassParams",
    "TightParams",
    "TheoremTwoParams",
    "MaximalClassGroup",
    "presentation_P",
    "presentation_G",
    "presentation_G_star",
    "build_P",
    "build_G_case1",
    "build_G_case1_semidirect",
    "build_G_star",
    "build_tight",
    "build_theorem2",
    "verify_lemma_3_1",
    "verify_lemma_3_2",
    "verify_lemma_3_3",
    "lemma_3_2_failures",
    "table1_exponents",
    "table1_triangular",
    "theorem2_parameter_sweep",
    "lemma_parameter_points",
]


def binomial(n: int, m: int) -> int:
    if n < 0:
        raise ValueError("binomial needs n >= 0")
    if m < 0 or m > n:
        return 0
    return math.comb(n, m)


def _check_odd_prime(p: int) -> None:
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"p = {p} is not an odd prime")


@dataclass(frozen=True)
class MaximalClassParams:
    p: int
    e: int
    r: int

    def __post_init__(self):
        _check_odd_prime(self.p)
        if self.e < 1:
            raise ValueError("e must be at least 1")
        if not 1 <= self.r <= self.p - 1:
            raise ValueError(f"r must lie in 1..{self.p - 1}")
        if self.m < 3:
            raise ValueError(f"m = (p-1)(e-1)+r+1 = {self.m} is below 3")

    @property
    def m(self) -> int:
        return (self.p - 1) * (self.e - 1) + self.r + 1

    @property
    def order(self) -> int:
        return self.p**self.m

    def __str__(self) -> str:
        return f"({self.p},{self.e},{self.r})"


@dataclass(frozen=True)
class TightParams:
    p: int
    l1: int
    l2: int

    def __post_init__(self):
        _check_odd_prime(self.p)
        if self.l1 < 1 or self.l2 < 1:
            raise ValueError("l1 and l2 must be at least 1")

    @property
    def order(self) -> int:
        return 2 * self.p ** (self.l1 + self.l2)


@dataclass(frozen=True)
class TheoremTwoParams:
    p: int
    variant: int
    i: int | None = None
    j: int | None = None

    def __post_init__(self):
        _check_odd_prime(self.p)
        if self.variant not in range(1, 7):
            raise ValueError("variant must be 1..6")
        if self.variant >= 4:
            if self.i is None or self.j is None:
                raise ValueError(f"variant {self.variant} needs i and j")
            object.__setattr__(self, "i", self.i % self.p)
            object.__setattr__(self, "j", self.j % self.p)

    @property
    def bound(self) -> int:
        return 2 * self.p**3 if self.variant == 1 else 2 * self.p**4

    def __str__(self) -> str:
        tail = f", i={self.i}, j={self.j}" if self.variant >= 4 else ""
        return f"G{self.variant}(p={self.p}{tail})"


# ---------------------------------------------------------------------------
# presentations


class _Alpha:
    """Word helpers over a fixed alphabet."""

    def __init__(self, names):
        self.names = tuple(names)

    def g(self, name: str, e: int = 1) -> Word:
        return Word.gen(self.names, name, e)

    def one(self) -> Word:
        return Word.identity(self.names)

    def prod(self, *ws: Word) -> Word:
        out = self.one()
        for w in ws:
            out = out * w
        return out

    def comm(self, *ws: Word) -> Word:
        out = ws[0]
        for w in ws[1:]:
            out = commutator(out, w)
        return out

    def eq(self, lhs: Word, rhs: Word) -> Word:
        """Relator for ``lhs = rhs``."""
        return lhs * ~rhs


def _s_names(p: int) -> list[str]:
    return [f"s{i}" for i in range(1, p)]


def _maximal_class_relators(A: _Alpha, q: MaximalClassParams) -> list[Word]:
    p, e, r = q.p, q.e, q.r
    s = {i: A.g(f"s{i}") for i in range(1, p)}
    beta = A.g("beta")
    rels = []
    for i in range(1, p):
        rels.append(s[i] ** (p**e if i <= r else p ** (e - 1)))
    rels.append(beta ** (p * p))
    rels.append(A.eq(beta**p, s[r] ** (p ** (e - 1))))
    for i in range(1, p):
        for j in range(i + 1, p):
            rels.append(A.comm(s[i], s[j]))
    for k in range(1, p - 1):
        rels.append(A.eq(s[k + 1], A.comm(s[k], beta)))
    return rels


def _sp_product(A: _Alpha, p: int) -> Word:
    """``s1^-C(p,1) s2^-C(p,2) ... s_{p-1}^-C(p,p-1)``."""
    return A.prod(*[A.g(f"s{i}", -binomial(p, i)) for i in range(1, p)])


def presentation_P(q: MaximalClassParams) -> Presentation:
    A = _Alpha(_s_names(q.p) + ["beta"])
    rels = _maximal_class_relators(A, q)
    rels.append(A.eq(A.comm(A.g(f"s{q.p - 1}"), A.g("beta")), _sp_product(A, q.p)))
    return Presentation.from_words(A.names, rels, f"P{q}")


def _sigma_relators(A: _Alpha) -> list[Word]:
    sigma = A.g("sigma")
    return [
        sigma**2,
        A.eq(~sigma * A.g("s1") * sigma, A.g("s1")),
        A.eq(~sigma * A.g("beta") * sigma, A.g("beta", -1)),
    ]


def presentation_G(q: MaximalClassParams) -> Presentation:
    """P extended by the involution ``sigma``: ``s1^sigma = s1``, ``beta^sigma = beta^-1``."""
    A = _Alpha(_s_names(q.p) + ["beta", "sigma"])
    rels = _maximal_class_relators(A, q)
    rels.append(A.eq(A.comm(A.g(f"s{q.p - 1}"), A.g("beta")), _sp_product(A, q.p)))
    rels += _sigma_relators(A)
    return Presentation.from_words(A.names, rels, f"G{q}")


def presentation_G_star(q: MaximalClassParams, *, sigma_order: bool = True) -> Presentation:
    """Central extension by ``x``.  ``sigma_order=False`` drops ``sigma^2`` (the list as printed)."""
    A = _Alpha(_s_names(q.p) + ["beta", "sigma", "x"])
    x = A.g("x")
    rels = _maximal_class_relators(A, q)
    rels.insert(q.p + 1, x**q.p)
    rels.append(A.eq(x, _sp_product(A, q.p) * ~A.comm(A.g(f"s{q.p - 1}"), A.g("beta"))))
    sig = _sigma_relators(A)
    rels += sig if sigma_order else sig[1:]
    rels += [A.comm(A.g("s1"), x), A.comm(A.g("beta"), x), A.comm(A.g("sigma"), x)]
    return Presentation.from_words(A.names, rels, f"G*{q}" + ("" if sigma_order else " (no sigma^2)"))


def build_tight(q: TightParams) -> Presentation:
    A = _Alpha(["sigma1", "sigma2"])
    s1, s2 = A.g("sigma1"), A.g("sigma2")
    rels = [s1 ** (q.p**q.l1), s2 ** (2 * q.p**q.l2), (s1 * s2) ** 2, A.comm(s1, s2 * s2)]
    return Presentation.from_words(A.names, rels, f"tight(p={q.p},l1={q.l1},l2={q.l2})")


def build_theorem2(q: TheoremTwoParams) -> Presentation:
    A = _Alpha(["sigma1", "sigma2"])
    p = q.p
    s1, s2 = A.g("sigma1"), A.g("sigma2")
    t = s2 * s2
    c = A.comm(s1, t)
    v = q.variant
    o1 = p * p if v in (3, 6) else p
    o2 = 2 * p * p if v in (2, 5) else 2 * p
    rels = [s1**o1, s2**o2, (s1 * s2) ** 2, c**p]
    if v <= 3:
        rels += [A.comm(c, s1), A.comm(c, t)]
    else:
        c1, c2 = A.comm(c, s1), A.comm(c, t)
        rels += [c1**p, c2**p]
        if v == 4:
            rels.append(c1**q.i * c2**q.j)
        elif v == 5:
            rels += [A.eq(c1, s2 ** (2 * p * q.i)), A.eq(c2, s2 ** (2 * p * q.j))]
        else:
            rels += [A.eq(c1, s1 ** (p * q.i)), A.eq(c2, s1 ** (p * q.j))]
        rels += [A.comm(c1, s1), A.comm(c1, t)]
    return Presentation.from_words(A.names, rels, str(q))


def theorem2_parameter_sweep(p: int) -> list[TheoremTwoParams]:
    """All (i, j) for p = 3, the sample {(0,0),(1,0),(0,1),(1,1)} otherwise."""
    ij = [(i, j) for i in range(p) for j in range(p)] if p == 3 else [(0, 0), (1, 0), (0, 1), (1, 1)]
    out = [TheoremTwoParams(p, v) for v in (1, 2, 3)]
    for v in (4, 5, 6):
        out += [TheoremTwoParams(p, v, i, j) for i, j in ij]
    return out


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True, eq=False)
class MaximalClassGroup:
    params: MaximalClassParams
    presentation: Presentation
    group: ConcreteGroup

    def __iter__(self):
        return iter((self.presentation, self.group))

    def s(self, k: int) -> GroupElement:
        """``s_k`` for ``1 <= k <= p+1`` (``s_p``, ``s_{p+1}`` as iterated commutators)."""
        G = self.group
        p = self.params.p
        if 1 <= k <= p - 1:
            return G.gen(f"s{k}")
        if k in (p, p + 1):
            return self.s(k - 1).comm(G.gen("beta"))
        raise ValueError(f"s_{k} undefined")

    @property
    def beta(self) -> GroupElement:
        return self.group.gen("beta")

    def A(self) -> np.ndarray:
        return subgroup_closure(self.group, [self.s(k) for k in range(1, self.params.p)])


def _enumerate(pres: Presentation, expected: int) -> ConcreteGroup:
    limits = EnumLimits(default_max_cosets(expected), "hlt")
    return ConcreteGroup.from_presentation(pres, limits)


@lru_cache(maxsize=32)
def build_P(q: MaximalClassParams) -> MaximalClassGroup:
    pres = presentation_P(q)
    G = _enumerate(pres, q.order)
    if G.order != q.order:
        raise AssertionError(f"P{q} has order {G.order}, expected {q.order}")
    out = MaximalClassGroup(q, pres, G)
    A = out.A()
    if A.size * q.p != G.order:
        raise AssertionError("A does not have index p")
    gensA = [out.s(k).index for k in range(1, q.p)]
    if any(G.comm(a, b) != 0 for a in gensA for b in gensA):
        raise AssertionError("A is not abelian")
    if not is_normal(G, A):
        raise AssertionError("A is not normal")
    cls = nilpotency_class(G)
    if cls != q.m - 1:
        raise AssertionError(f"P{q} has class {cls}, expected {q.m - 1}")
    return out


def _case1_pair(G: ConcreteGroup) -> RotationPair:
    s1, beta, sigma = G.gen("s1"), G.gen("beta"), G.gen("sigma")
    pair = RotationPair(G, beta * s1, ~s1 * sigma)
    if pair.sigma2 * pair.sigma2 != ~s1 * ~s1:
        raise AssertionError("sigma2^2 != s1^-2")
    return pair


def _require_case1(q: MaximalClassParams) -> None:
    if q.r % 2:
        raise ValueError(f"r = {q.r} is odd; the construction needs r even")
    if q.m % 2 == 0 or q.m < 5:
        raise ValueError(f"m = {q.m} must be odd and at least 5")


def build_G_case1_semidirect(q: MaximalClassParams) -> ConcreteGroup:
    """``P x| <sigma>`` built directly from the automorphism of P; elements are ``(x, eps) = x sigma^eps``."""
    P = build_P(q).group
    f = sigma_automorphism(q)
    if f is None:
        raise AssertionError("sigma does not extend to an automorphism of P")
    n = P.order
    idx = np.arange(2 * n)
    xs, eps = idx % n, idx // n
    rows = []
    for nm in P.names:
        g = P.generator_map[nm]
        right = P.rperm(g)
        right_sig = P.rperm(int(f.images[g]))
        # x sigma^eps g = x (g^sigma^eps) sigma^eps
        rows.append(np.where(eps == 0, right[xs], right_sig[xs]) + eps * n)
    rows.append(xs + (1 - eps) * n)
    G, _ = ConcreteGroup.from_regular_action(list(P.names) + ["sigma"], np.stack(rows), label=f"G{q} semidirect")
    return G


@lru_cache(maxsize=32)
def build_G_case1(q: MaximalClassParams, *, cross_check: bool = True) -> tuple[ConcreteGroup, RotationPair]:
    _require_case1(q)
    if not verify_lemma_3_3(q):
        raise AssertionError(f"sigma is not an involutory automorphism of P{q}")
    pres = presentation_G(q)
    G = _enumerate(pres, 2 * q.order)
    if G.order != 2 * q.order:
        raise AssertionError(f"G{q} has order {G.order}, expected {2 * q.order}")
    if cross_check:
        S = build_G_case1_semidirect(q)
        iso = hom_extends(G, {nm: S.gen(nm) for nm in G.names}, S)
        if S.order != G.order or iso is None or not iso.is_bijective():
            raise AssertionError("presentation and semidirect constructions disagree")
    return G, _case1_pair(G)


@lru_cache(maxsize=32)
def build_G_star(q: MaximalClassParams) -> tuple[ConcreteGroup, RotationPair]:
    if q.e < 2:
        raise ValueError("the central extension needs e >= 2")
    if q.r % 2:
        raise ValueError(f"r = {q.r} is odd; the construction needs r even")
    pres = presentation_G_star(q)
    expected = 2 * q.p ** (q.m + 1)
    G = _enumerate(pres, expected)
    if G.order != expected:
        raise AssertionError(f"G*{q} has order {G.order}, expected {expected}")
    x = G.gen("x")
    if x.order != q.p:
        raise AssertionError(f"o(x) = {x.order}, expected {q.p}")
    if x.index not in set(center(G).tolist()):
        raise AssertionError("x is not central")
    return G, _case1_pair(G)


def star_quotient(q: MaximalClassParams) -> tuple[ConcreteGroup, Homomorphism]:
    """``G* / <x>`` with its projection."""
    G, _ = build_G_star(q)
    return quotient(G, subgroup_closure(G, [G.gen("x")]))


# ---------------------------------------------------------------------------
# lemmas


def _P_images(q: MaximalClassParams, s1_img: str, beta_img: str) -> Homomorphism | None:
    mc = build_P(q)
    G = mc.group
    return hom_extends(G, {"s1": G.evaluate(s1_img), "beta": G.evaluate(beta_img)})


def verify_lemma_3_1(q: MaximalClassParams) -> bool:
    """True iff ``s1 -> s1^-1, beta -> beta`` does not extend to P."""
    return _P_images(q, "s1^-1", "beta") is None


@lru_cache(maxsize=64)
def sigma_automorphism(q: MaximalClassParams) -> Homomorphism | None:
    """``s1 -> s1, beta -> beta^-1`` on P, if it extends."""
    return _P_images(q, "s1", "beta^-1")


def lemma_3_2_failures(q: MaximalClassParams) -> list[str]:
    """Every k where the conjugation identities fail (empty when they all hold)."""
    mc = build_P(q)
    G = mc.group
    p = q.p
    beta = mc.beta
    f = sigma_automorphism(q) if q.m % 2 else None
    bad = []
    for k in range(1, p + 1):
        lhs = mc.s(k).conj(beta ** (1 - k))
        rhs = G.identity
        for i in range(k, p + 2):
            rhs = rhs * mc.s(i) ** binomial(p + 1 - k, i - k)
        if lhs != rhs:
            bad.append(f"(1) k={k}")
        if f is not None:
            want = rhs if k % 2 else ~rhs
            if f(mc.s(k)) != want:
                bad.append(f"(2) k={k}")
    return bad


def verify_lemma_3_2(q: MaximalClassParams) -> bool:
    return not lemma_3_2_failures(q)


def table1_exponents(p: int) -> list[int]:
    """``u_1 .. u_{p+1}`` from the closed forms."""
    _check_odd_prime(p)
    u = [-binomial(p, 1)]
    for i in range(2, p):
        u.append(-binomial(p, i) + (p - 1) * binomial(p, i - 1))
    u.append((p - 1) * binomial(p, p - 1))
    u.append(p)
    return u


def table1_triangular(p: int) -> list[int]:
    """``u_i`` summed column by column: ``sum_{j=2}^{min(i,p-1)} (-1)^j C(p+1-j, i-j) C(p, j)``."""
    _check_odd_prime(p)
    u = [-binomial(p, 1)]
    for i in range(2, p + 2):
        u.append(sum((-1) ** j * binomial(p + 1 - j, i - j) * binomial(p, j) for j in range(2, min(i, p - 1) + 1)))
    return u


def verify_lemma_3_3(q: MaximalClassParams) -> bool:
    """sigma is an automorphism of order 2 and ``prod s_i^{u_i} = s_p^sigma``."""
    if q.m % 2 == 0 or q.r % 2:
        raise ValueError(f"needs m odd and r even, got m={q.m}, r={q.r}")
    f = sigma_automorphism(q)
    if f is None or not f.is_automorphism():
        return False
    mc = build_P(q)
    G = mc.group
    if not np.array_equal(f.images[f.images], np.arange(G.order)) or np.array_equal(f.images, np.arange(G.order)):
        return False
    u = table1_exponents(q.p)
    prod = G.identity
    for i, ui in enumerate(u, start=1):
        prod = prod * mc.s(i) ** ui
    return prod == f(mc.s(q.p))


def lemma_parameter_points(limit: int = 10**5) -> list[MaximalClassParams]:
    """Every valid (p, e, r) with m odd, r even and p^m <= limit."""
    out = []
    p = 3
    while p**3 <= limit:
        if is_prime(p):
            e = 1
            while p ** ((p - 1) * (e - 1) + 3) <= limit:
                for r in range(2, p, 2):
                    m = (p - 1) * (e - 1) + r + 1
                    if m >= 3 and p**m <= limit:
                        out.append(MaximalClassParams(p, e, r))
                e += 1
        p += 2
    return out
