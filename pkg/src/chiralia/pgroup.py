"""Structure of the Sylow p-subgroup: Frattini rank, exponent, Omega/Mho, metacyclicity."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .group_engine import (
    ConcreteGroup,
    GroupTooLarge,
    _indices,
    cyclic_subgroup,
    derived_subgroup,
    lower_central_series,
)

__all__ = [
    "PGroupProfile",
    "NotAPGroupError",
    "PGROUP_CAP",
    "is_prime",
    "prime_power",
    "sylow_p",
    "frattini",
    "rank",
    "omega1",
    "mho1",
    "exponent",
    "is_metacyclic",
    "profile",
]

PGROUP_CAP = 2 * 10**6


class NotAPGroupError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def prime_power(n: int) -> tuple[int, int] | None:
    """``(p, m)`` with ``n = p**m`` and ``m >= 1``, or ``None``."""
    if n < 2:
        return None
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            m = 0
            while n % d == 0:
                n //= d
                m += 1
            return (d, m) if n == 1 else None
    return n, 1


def _check_size(G: ConcreteGroup) -> None:
    if G.order > PGROUP_CAP:
        raise GroupTooLarge(f"refusing p-group analysis above {PGROUP_CAP} elements")


def _as_pgroup(G: ConcreteGroup, P, p: int | None = None) -> tuple[np.ndarray, int, int]:
    _check_size(G)
    P = G.all() if P is None else np.unique(_indices(G, P))
    n = P.size
    if n == 1:
        return P, (p or 1), 0
    pm = prime_power(n)
    if pm is None or (p is not None and pm[0] != p):
        raise NotAPGroupError(f"subgroup of order {n} is not a p-group")
    return P, pm[0], pm[1]


def sylow_p(G: ConcreteGroup, p: int) -> np.ndarray:
    """The unique Sylow p-subgroup of a group of order ``2 p^m``."""
    _check_size(G)
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    n = G.order
    half = n // 2
    if n % 2 or (half > 1 and (prime_power(half) or (0,))[0] != p):
        raise ValueError(f"group order {n} is not of the form 2*{p}^m")
    orders = G.orders
    mask = np.zeros(n, dtype=np.bool_)
    for k in range(0, 64):
        mask |= orders == p**k
        if p**k >= n:
            break
    P = np.flatnonzero(mask).astype(np.int64)
    if P.size != n // 2:
        raise AssertionError("p-elements do not form a subgroup of index 2")
    if not np.array_equal(G.closure(G.generating_set(P)), P):
        raise AssertionError("p-elements are not closed under products")
    return P


def omega1(G: ConcreteGroup, P=None, p: int | None = None) -> np.ndarray:
    P, p, _ = _as_pgroup(G, P, p)
    return G.closure(P[G.orders[P] <= p])


def mho1(G: ConcreteGroup, P=None, p: int | None = None) -> np.ndarray:
    P, p, _ = _as_pgroup(G, P, p)
    if P.size == 1:
        return P
    return G.closure(np.unique(G.power_map(p, P)))


def exponent(G: ConcreteGroup, P=None) -> int:
    P, _, _ = _as_pgroup(G, P)
    return int(np.lcm.reduce(G.orders[P]))


def frattini(G: ConcreteGroup, P=None, p: int | None = None) -> np.ndarray:
    """``Phi(P) = P' * mho_1(P)``."""
    P, p, _ = _as_pgroup(G, P, p)
    if P.size == 1:
        return P
    D = derived_subgroup(G, P)
    M = mho1(G, P, p)
    return G.closure(np.union1d(G.generating_set(D), G.generating_set(M)).astype(np.int64))


def rank(G: ConcreteGroup, P=None, p: int | None = None) -> int:
    """Minimal number of generators: ``log_p [P : Phi(P)]``."""
    P, p, _ = _as_pgroup(G, P, p)
    if P.size == 1:
        return 0
    q = P.size // frattini(G, P, p).size
    return round(math.log(q, p))


def _pth_power_map(G: ConcreteGroup, p: int) -> np.ndarray:
    cache = G.__dict__.setdefault("_pgroup_cache", {})
    key = ("pow", p)
    if key not in cache:
        cache[key] = G.power_map(p)
    return cache[key]


def is_metacyclic(G: ConcreteGroup, P=None, p: int | None = None) -> tuple[bool, tuple[int, int] | None]:
    """Search cyclic normal N with P/N cyclic; witness is ``(generator of N, lift of a quotient generator)``.

    Cyclic subgroups are tried largest first.
    """
    P, p, m = _as_pgroup(G, P, p)
    if P.size == 1:
        return True, (0, 0)
    pgens = G.generating_set(P)
    pw = _pth_power_map(G, p)
    orders = G.orders
    covered = np.zeros(G.order, dtype=np.bool_)
    for x in P[np.argsort(-orders[P], kind="stable")]:
        x = int(x)
        if covered[x]:
            continue
        o = int(orders[x])
        C = cyclic_subgroup(G.element(x))
        gen_powers = [k for k in range(1, o) if math.gcd(k, o) == 1]
        for k in gen_powers:
            covered[G.power(x, k)] = True
        cmask = np.zeros(G.order, dtype=np.bool_)
        cmask[C] = True
        if not all(cmask[G.conj(x, g)] for g in pgens):
            continue
        q = P.size // C.size
        if q == 1:
            return True, (x, 0)
        # P/C is cyclic iff some y has y^(q/p) outside C
        y = P.copy()
        for _ in range(round(math.log(q, p)) - 1):
            y = pw[y]
        outside = np.flatnonzero(~cmask[y])
        if outside.size:
            return True, (x, int(P[outside[0]]))
    return False, None


@dataclass(frozen=True)
class PGroupProfile:
    p: int
    m: int
    d: int
    nilpotency_class: int
    is_abelian: bool
    is_metacyclic: bool
    exponent: int
    derived_exponent: int

    def to_json(self) -> dict:
        return asdict(self)


def profile(G: ConcreteGroup, P=None, p: int | None = None) -> PGroupProfile:
    P, p, m = _as_pgroup(G, P, p)
    cache = G.__dict__.setdefault("_pgroup_cache", {})
    key = ("profile", P.tobytes())
    if key in cache:
        return cache[key]
    if P.size == 1:
        prof = PGroupProfile(p, 0, 0, 0, True, True, 1, 1)
    else:
        series = lower_central_series(G, P)
        if series[-1].size != 1:
            raise NotAPGroupError("lower central series does not reach the identity")
        D = series[1] if len(series) > 1 else np.zeros(1, dtype=np.int64)
        prof = PGroupProfile(
            p=p,
            m=m,
            d=rank(G, P, p),
            nilpotency_class=len(series) - 1,
            is_abelian=D.size == 1,
            is_metacyclic=is_metacyclic(G, P, p)[0],
            exponent=exponent(G, P),
            derived_exponent=int(np.lcm.reduce(G.orders[D])),
        )
    cache[key] = prof
    return prof
