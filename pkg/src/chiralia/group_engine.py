"""Finite groups held as a regular right action on element indices.

Every group stores, for each generator ``g`` and its inverse, the map
``x -> x * g`` on indices ``0..n-1`` (index 0 is the identity).  Products
of arbitrary elements walk a breadth-first spanning tree; for small groups
a full table of right-multiplication permutations is built on first use.

Conventions: ``x^g = g^-1 x g`` and ``[x, y] = x^-1 y^-1 x y``.
Permutations compose left to right: ``(p * q)(i) = q(p(i))``.

Element sets are sorted ``int64`` index arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _group_kernels as GK
from .words import Word

__all__ = [
    "Permutation",
    "ConcreteGroup",
    "GroupElement",
    "Homomorphism",
    "GroupTooLarge",
    "MixedGroupError",
    "NotASubgroupError",
    "NotNormalError",
    "ELEMENT_CAP",
    "TABLE_LIMIT",
    "element_order",
    "cyclic_subgroup",
    "subgroup_closure",
    "intersect",
    "is_subgroup",
    "is_normal",
    "normal_closure",
    "center",
    "centralizer",
    "derived_subgroup",
    "commutator_subgroup",
    "lower_central_series",
    "nilpotency_class",
    "hom_extends",
    "direct_square",
    "quotient",
    "product_set",
]

ELEMENT_CAP = 10**6
TABLE_LIMIT = 4096


class GroupTooLarge(RuntimeError):
    pass


class MixedGroupError(ValueError):
    pass


class NotASubgroupError(ValueError):
    pass


class NotNormalError(ValueError):
    pass


# ---------------------------------------------------------------------------
# permutations


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __init__(self, images):
        imgs = tuple(int(i) for i in images)
        n = len(imgs)
        if sorted(imgs) != list(range(n)):
            raise ValueError("images do not form a bijection of {0..n-1}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation(other.images[i] for i in self.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        seen = [False] * self.degree
        out = 1
        for s in range(self.degree):
            if seen[s]:
                continue
            length = 0
            x = s
            while not seen[x]:
                seen[x] = True
                x = self.images[x]
                length += 1
            out = math.lcm(out, length)
        return out

    def array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.int64)


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True, eq=False)
class GroupElement:
    group: "ConcreteGroup"
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.group.order:
            raise IndexError(f"element index {self.index} outside group of order {self.group.order}")

    def _same(self, other: "GroupElement") -> None:
        if other.group is not self.group:
            raise MixedGroupError("elements belong to different groups")

    def __eq__(self, other):
        return isinstance(other, GroupElement) and other.group is self.group and other.index == self.index

    def __hash__(self):
        return hash((id(self.group), self.index))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        self._same(other)
        return GroupElement(self.group, self.group.mul(self.index, other.index))

    def __invert__(self) -> "GroupElement":
        return GroupElement(self.group, self.group.inv(self.index))

    def __pow__(self, e: int) -> "GroupElement":
        return GroupElement(self.group, self.group.power(self.index, e))

    def conj(self, g: "GroupElement") -> "GroupElement":
        """``self^g``."""
        self._same(g)
        return ~g * self * g

    def comm(self, other: "GroupElement") -> "GroupElement":
        self._same(other)
        return GroupElement(self.group, self.group.comm(self.index, other.index))

    def is_identity(self) -> bool:
        return self.index == 0

    @property
    def order(self) -> int:
        return self.group.element_order(self.index)

    def word(self) -> Word:
        return self.group.word_of(self.index)

    def __repr__(self) -> str:
        return f"<{self.group.label or 'group'}[{self.index}] = {self.word()}>"


class ConcreteGroup:
    """A finite group given by the regular right action of its generators.

    ``act`` has shape ``(2k, n)``: row ``2i`` is ``x -> x * g_i`` and row
    ``2i + 1`` is ``x -> x * g_i^-1``.
    """

    def __init__(
        self,
        names: Sequence[str],
        act: np.ndarray,
        *,
        label: str = "",
        perms: np.ndarray | None = None,
    ):
        act = np.ascontiguousarray(act, dtype=np.int32)
        names = tuple(names)
        if act.shape[0] != 2 * len(names):
            raise ValueError("action needs two rows per generator")
        n = act.shape[1] if act.shape[0] else 1
        if act.shape[0] == 0:
            act = np.zeros((0, 1), dtype=np.int32)
        for i in range(len(names)):
            if not np.array_equal(act[2 * i + 1][act[2 * i]], np.arange(n)):
                raise ValueError(f"rows for {names[i]} are not mutually inverse")
        self.names = names
        self.act = act
        self.label = label
        self._perms = perms
        order, parent, pcol, depth = GK.bfs_tree(act)
        if order.shape[0] != n:
            raise ValueError("generators do not act transitively; not a regular action")
        self._bfs = order
        self._parent = parent
        self._pcol = pcol
        self._depth = depth
        self._maxdepth = int(depth.max()) if n else 0
        self.generator_map = {nm: int(act[2 * i, 0]) for i, nm in enumerate(names)}

    # --- constructors ---------------------------------------------------

    @classmethod
    def from_regular_action(
        cls, names: Sequence[str], gen_act: np.ndarray, label: str = ""
    ) -> tuple["ConcreteGroup", np.ndarray]:
        """Build from forward actions only; elements are renumbered breadth-first.

        Returns the group and ``num`` with ``num[old] = new``.
        """
        gen_act = np.asarray(gen_act, dtype=np.int64)
        k = len(names)
        if k == 0:
            return cls((), np.zeros((0, 1), dtype=np.int32), label=label), np.zeros(1, dtype=np.int64)
        n = gen_act.shape[1]
        num, count = GK.renumber_bfs(np.ascontiguousarray(gen_act))
        if count != n:
            raise ValueError("action is not transitive")
        num = num.astype(np.int64)
        act = np.empty((2 * k, n), dtype=np.int32)
        for i in range(k):
            fwd = np.empty(n, dtype=np.int64)
            fwd[num] = num[gen_act[i]]
            if not np.array_equal(np.sort(fwd), np.arange(n)):
                raise ValueError(f"action of {names[i]} is not a permutation")
            act[2 * i] = fwd
            act[2 * i + 1] = np.argsort(fwd)
        return cls(names, act, label=label), num

    @classmethod
    def from_coset_table(cls, table, label: str | None = None) -> "ConcreteGroup":
        """The group of a closed enumeration over the trivial subgroup."""
        from .coset_enum import TableNotClosedError

        if not table.closed:
            raise TableNotClosedError(f"table is {table.status}")
        if table.subgroup_gens:
            raise ValueError("coset table over a nontrivial subgroup is not a regular action")
        act = np.ascontiguousarray(table.actions.T)
        return cls(table.presentation.names, act, label=table.presentation.label if label is None else label)

    @classmethod
    def from_presentation(cls, pres, limits=None, *, expected_order: int | None = None) -> "ConcreteGroup":
        from .coset_enum import EnumerationExceeded, enumerate_cosets

        table = enumerate_cosets(pres, (), limits, expected_order=expected_order)
        if not table.closed:
            raise EnumerationExceeded(
                f"{pres.label or 'presentation'}: exceeded {table.max_cosets} cosets"
            )
        return cls.from_coset_table(table)

    @classmethod
    def from_generators(
        cls,
        degree: int,
        gens: Mapping[str, Permutation] | Sequence[Permutation] | Sequence[tuple[str, Permutation]],
        *,
        cap: int = ELEMENT_CAP,
        label: str = "",
    ) -> "ConcreteGroup":
        """Close a set of permutations; elements sorted lexicographically by images."""
        if isinstance(gens, Mapping):
            items = list(gens.items())
        else:
            items = []
            for i, g in enumerate(gens):
                items.append(g if isinstance(g, tuple) else (f"g{i + 1}", g))
        names = tuple(nm for nm, _ in items)
        garr = []
        for nm, g in items:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != degree:
                raise ValueError(f"generator {nm} has degree {g.degree}, expected {degree}")
            garr.append(np.asarray(g.images, dtype=np.int64))
        ident = np.arange(degree, dtype=np.int64)
        if not garr:
            return cls((), np.zeros((0, 1), dtype=np.int32), label=label, perms=ident[None, :])
        elems = [ident]
        index = {ident.tobytes(): 0}
        head = 0
        while head < len(elems):
            e = elems[head]
            head += 1
            for g in garr:
                h = g[e]
                key = h.tobytes()
                if key not in index:
                    if len(elems) >= cap:
                        raise GroupTooLarge(f"closure exceeds the element cap of {cap}")
                    index[key] = len(elems)
                    elems.append(h)
        mat = np.stack(elems)
        perm_order = np.lexsort(mat.T[::-1])
        mat = mat[perm_order]
        pos = {row.tobytes(): i for i, row in enumerate(mat)}
        n = mat.shape[0]
        act = np.empty((2 * len(garr), n), dtype=np.int32)
        for i, g in enumerate(garr):
            fwd = np.fromiter((pos[g[row].tobytes()] for row in mat), dtype=np.int64, count=n)
            act[2 * i] = fwd
            act[2 * i + 1] = np.argsort(fwd)
        return cls(names, act, label=label, perms=mat)

    # --- basic data -----------------------------------------------------

    @property
    def order(self) -> int:
        return int(self.act.shape[1])

    def __len__(self) -> int:
        return self.order

    @property
    def degree(self) -> int:
        """Degree of the permutation representation (the regular one if none was given)."""
        return int(self._perms.shape[1]) if self._perms is not None else self.order

    def __repr__(self) -> str:
        return f"ConcreteGroup({self.label or '?'}, order={self.order}, gens={list(self.names)})"

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self, 0)

    def element(self, i: int) -> GroupElement:
        return GroupElement(self, int(i))

    def gen(self, name: str) -> GroupElement:
        return GroupElement(self, self.generator_map[name])

    def gens(self) -> list[GroupElement]:
        return [self.gen(nm) for nm in self.names]

    def gen_indices(self) -> np.ndarray:
        return np.asarray([self.generator_map[nm] for nm in self.names], dtype=np.int64)

    def elements(self) -> list[GroupElement]:
        return [GroupElement(self, i) for i in range(self.order)]

    def all(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def permutation(self, i: int) -> Permutation:
        if self._perms is not None:
            return Permutation(self._perms[i])
        return Permutation(self.rperm(i))

    # --- arithmetic -----------------------------------------------------

    @cached_property
    def table(self) -> np.ndarray:
        """``table[b, a] = a * b``; only for groups up to ``TABLE_LIMIT`` elements."""
        if self.order > TABLE_LIMIT:
            raise GroupTooLarge(f"no full table above {TABLE_LIMIT} elements")
        return GK.right_table(self.act, self._bfs, self._parent, self._pcol)

    @property
    def has_table(self) -> bool:
        return self.order <= TABLE_LIMIT

    def path(self, b: int) -> list[int]:
        """Action rows spelling ``b`` from the identity."""
        cols = []
        while b != 0:
            cols.append(int(self._pcol[b]))
            b = int(self._parent[b])
        return cols[::-1]

    def rperm(self, b: int) -> np.ndarray:
        """``x -> x * b`` for all x."""
        if self.has_table:
            return self.table[b].astype(np.int64)
        x = np.arange(self.order, dtype=np.int64)
        for c in self.path(int(b)):
            x = self.act[c][x]
        return x.astype(np.int64)

    def lperm(self, a: int) -> np.ndarray:
        """``x -> a * x`` for all x."""
        if self.has_table:
            return self.table[:, a].astype(np.int64)
        return GK.left_perm(self.act, self._bfs, self._parent, self._pcol, int(a))

    def mul(self, a: int, b: int) -> int:
        if self.has_table:
            return int(self.table[b, a])
        x = int(a)
        for c in self.path(int(b)):
            x = int(self.act[c, x])
        return x

    def mul_many(self, a, b) -> np.ndarray:
        a = np.ascontiguousarray(a, dtype=np.int64)
        b = np.ascontiguousarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        if self.has_table:
            return self.table[b, a].astype(np.int64)
        return GK.mul_many(self.act, self._parent, self._pcol, self._maxdepth, np.ascontiguousarray(a), np.ascontiguousarray(b))

    @cached_property
    def inverse(self) -> np.ndarray:
        return GK.inverses(self.act, self._parent, self._pcol, self._maxdepth)

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    @cached_property
    def orders(self) -> np.ndarray:
        return GK.element_orders(self.act, self._parent, self._pcol, self._maxdepth)

    def element_order(self, a: int) -> int:
        return int(self.orders[a])

    def power(self, a: int, e: int) -> int:
        e = int(e) % self.element_order(a)
        out, base = 0, int(a)
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def power_map(self, e: int, elems=None) -> np.ndarray:
        """``x ** e`` for every x (or for ``elems``)."""
        elems = self.all() if elems is None else np.asarray(elems, dtype=np.int64)
        if e < 0:
            elems = self.inverse[elems]
            e = -e
        return GK.powers(self.act, self._parent, self._pcol, self._maxdepth, np.ascontiguousarray(elems), int(e))

    def conj(self, x: int, g: int) -> int:
        return self.mul(self.mul(self.inv(g), x), g)

    def comm(self, x: int, y: int) -> int:
        return self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))

    def word_of(self, i: int) -> Word:
        return Word.build(self.names, [(c // 2, 1 if c % 2 == 0 else -1) for c in self.path(int(i))])

    def evaluate(self, word: Word | str) -> GroupElement:
        """Value of a word over this group's generator names."""
        if isinstance(word, str):
            from .words import parse_word

            word = parse_word(word, self.names)
        if word.alphabet != self.names:
            raise MixedGroupError("word alphabet differs from the group's generators")
        x = 0
        for g, e in word.syllables:
            o = self.element_order(self.generator_map[self.names[g]])
            e %= o
            if e > o // 2:
                e -= o
            row = self.act[2 * g] if e > 0 else self.act[2 * g + 1]
            for _ in range(abs(e)):
                x = int(row[x])
        return GroupElement(self, x)

    # --- subgroup plumbing ----------------------------------------------

    def closure_mask(self, gens, seed: np.ndarray | None = None) -> np.ndarray:
        gens = [int(g) for g in gens]
        if seed is None:
            seed = np.zeros(self.order, dtype=np.bool_)
            seed[0] = True
        if not gens:
            return seed.copy()
        perms = np.stack([self.rperm(g) for g in gens])
        return GK.closure_mask(perms, seed)

    def closure(self, gens) -> np.ndarray:
        return np.flatnonzero(self.closure_mask(gens)).astype(np.int64)

    def generating_set(self, subset) -> list[int]:
        """Greedy generators of ``<subset>`` taken from ``subset`` itself."""
        subset = np.asarray(subset, dtype=np.int64)
        mask = np.zeros(self.order, dtype=np.bool_)
        mask[0] = True
        gens: list[int] = []
        while True:
            rest = subset[~mask[subset]]
            if rest.size == 0:
                return gens
            # prefer high-order elements: fewer generators
            x = int(rest[np.argmax(self.orders[rest])])
            gens.append(x)
            mask = self.closure_mask([x] + gens[:-1], seed=mask)

    def verify_axioms(self, samples: int = 1000, seed: int = 0) -> bool:
        """Identity and inverse axioms on all elements, associativity on random triples."""
        n = self.order
        all_ = self.all()
        if not np.array_equal(self.mul_many(all_, 0), all_) or not np.array_equal(self.mul_many(0, all_), all_):
            return False
        if not np.all(self.mul_many(all_, self.inverse) == 0):
            return False
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, samples))
        left = self.mul_many(self.mul_many(a, b), c)
        right = self.mul_many(a, self.mul_many(b, c))
        return bool(np.array_equal(left, right))


# ---------------------------------------------------------------------------
# element-set operations


def _indices(G: ConcreteGroup, S) -> np.ndarray:
    if isinstance(S, GroupElement):
        S = [S]
    if isinstance(S, np.ndarray):
        out = S.astype(np.int64)
    else:
        vals = []
        for s in S:
            if isinstance(s, GroupElement):
                if s.group is not G:
                    raise MixedGroupError("element from a different group")
                vals.append(s.index)
            else:
                vals.append(int(s))
        out = np.asarray(vals, dtype=np.int64)
    if out.size and (out.min() < 0 or out.max() >= G.order):
        raise IndexError("element index out of range")
    return out


def _mask(G: ConcreteGroup, S) -> np.ndarray:
    m = np.zeros(G.order, dtype=np.bool_)
    m[_indices(G, S)] = True
    return m


def element_order(g: GroupElement) -> int:
    return g.group.element_order(g.index)


def cyclic_subgroup(g: GroupElement) -> np.ndarray:
    G = g.group
    out = [0]
    x = g.index
    while x != 0:
        out.append(x)
        x = G.mul(x, g.index)
    return np.sort(np.asarray(out, dtype=np.int64))


def subgroup_closure(G: ConcreteGroup, S) -> np.ndarray:
    return G.closure(_indices(G, S))


def intersect(A, B) -> np.ndarray:
    return np.intersect1d(np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64))


def product_set(G: ConcreteGroup, A, B) -> np.ndarray:
    """``{a * b}`` as a sorted set."""
    A = _indices(G, A)
    B = _indices(G, B)
    aa, bb = np.meshgrid(A, B, indexing="ij")
    return np.unique(G.mul_many(aa.ravel(), bb.ravel()))


def is_subgroup(G: ConcreteGroup, H) -> bool:
    H = _indices(G, H)
    if H.size == 0 or 0 not in H:
        return False
    hmask = _mask(G, H)
    gens = G.generating_set(H)
    return bool(np.array_equal(G.closure_mask(gens), hmask))


def _subgroup_gens(G: ConcreteGroup, H) -> tuple[np.ndarray, list[int]]:
    H = np.unique(_indices(G, H))
    if not is_subgroup(G, H):
        raise NotASubgroupError("set is not a subgroup")
    return H, G.generating_set(H)


def is_normal(G: ConcreteGroup, H, within=None) -> bool:
    """Is ``H`` normal in ``G`` (or in the subgroup ``within``)?"""
    H, hgens = _subgroup_gens(G, H)
    hmask = _mask(G, H)
    ambient = G.gen_indices() if within is None else G.generating_set(np.unique(_indices(G, within)))
    for g in ambient:
        for h in hgens:
            if not hmask[G.conj(h, int(g))]:
                return False
    return True


def normal_closure(G: ConcreteGroup, S, within=None) -> np.ndarray:
    """Smallest subgroup containing ``S`` and normalized by ``within`` (default ``G``)."""
    S = [int(s) for s in _indices(G, S)]
    ambient = G.gen_indices().tolist() if within is None else G.generating_set(np.unique(_indices(G, within)))
    gens: list[int] = []
    mask = np.zeros(G.order, dtype=np.bool_)
    mask[0] = True
    queue = list(S)
    while queue:
        h = queue.pop()
        if mask[h]:
            continue
        gens.append(h)
        mask = G.closure_mask(gens, seed=mask)
        queue.extend(G.conj(h, g) for g in ambient)
    return np.flatnonzero(mask).astype(np.int64)


def centralizer(G: ConcreteGroup, S, within=None) -> np.ndarray:
    """Elements of ``within`` (default ``G``) commuting with every element of ``S``."""
    S = _indices(G, S)
    gens = G.generating_set(np.unique(S)) if S.size else []
    mask = np.ones(G.order, dtype=np.bool_)
    for s in gens:
        mask &= G.rperm(s) == G.lperm(s)
    if within is not None:
        mask &= _mask(G, within)
    return np.flatnonzero(mask).astype(np.int64)


def center(G: ConcreteGroup, H=None) -> np.ndarray:
    """``Z(G)``, or ``Z(H)`` for a subgroup ``H``."""
    if H is None:
        return centralizer(G, G.gen_indices())
    H, hgens = _subgroup_gens(G, H)
    return centralizer(G, hgens, within=H)


def commutator_subgroup(G: ConcreteGroup, A, B, within=None) -> np.ndarray:
    """``[A, B]`` for subgroups normal in ``within``: normal closure of generator commutators."""
    agens = G.generating_set(np.unique(_indices(G, A)))
    bgens = G.generating_set(np.unique(_indices(G, B)))
    comms = [G.comm(a, b) for a in agens for b in bgens]
    return normal_closure(G, comms, within=within)


def derived_subgroup(G: ConcreteGroup, H=None) -> np.ndarray:
    if H is None:
        gens = G.gen_indices().tolist()
        return normal_closure(G, [G.comm(a, b) for a in gens for b in gens])
    H, hgens = _subgroup_gens(G, H)
    return normal_closure(G, [G.comm(a, b) for a in hgens for b in hgens], within=H)


def lower_central_series(G: ConcreteGroup, H=None) -> list[np.ndarray]:
    """``[H, [H,H], [[H,H],H], ...]`` stopping once a term repeats."""
    if H is None:
        top = G.all()
    else:
        top, _ = _subgroup_gens(G, H)
    series = [top]
    while True:
        nxt = commutator_subgroup(G, series[-1], top, within=None if H is None else top)
        if np.array_equal(nxt, series[-1]):
            return series
        series.append(nxt)


def nilpotency_class(G: ConcreteGroup, H=None) -> int | None:
    """Class of ``H`` (default ``G``); ``None`` if the series stalls above the identity."""
    series = lower_central_series(G, H)
    if series[-1].size != 1:
        return None
    return len(series) - 1


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True, eq=False)
class Homomorphism:
    source: ConcreteGroup
    target: ConcreteGroup
    images: np.ndarray

    def __call__(self, g: GroupElement | int) -> GroupElement:
        if isinstance(g, GroupElement):
            if g.group is not self.source:
                raise MixedGroupError("element is not in the source group")
            g = g.index
        return GroupElement(self.target, int(self.images[g]))

    def kernel(self) -> np.ndarray:
        return np.flatnonzero(self.images == 0).astype(np.int64)

    def image(self) -> np.ndarray:
        return np.unique(self.images)

    def is_injective(self) -> bool:
        return self.kernel().size == 1

    def is_surjective(self) -> bool:
        return self.image().size == self.target.order

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def is_automorphism(self) -> bool:
        return self.source is self.target and self.is_bijective()

    def injective_on(self, H) -> bool:
        H = _indices(self.source, H)
        return np.unique(self.images[H]).size == np.unique(H).size

    def compose(self, other: "Homomorphism") -> "Homomorphism":
        """``self`` then ``other``."""
        if other.source is not self.target:
            raise MixedGroupError("composition across different groups")
        return Homomorphism(self.source, other.target, other.images[self.images])

    def is_homomorphism(self, samples: int = 1000, seed: int = 0) -> bool:
        """Spot check ``f(ab) = f(a) f(b)`` on random pairs plus all generator pairs."""
        G, H = self.source, self.target
        rng = np.random.default_rng(seed)
        a, b = rng.integers(0, G.order, size=(2, samples))
        lhs = self.images[G.mul_many(a, b)]
        rhs = H.mul_many(self.images[a], self.images[b])
        return bool(np.array_equal(lhs, rhs))


def hom_extends(G: ConcreteGroup, images: Mapping, H: ConcreteGroup | None = None) -> Homomorphism | None:
    """The homomorphism extending ``images`` if one exists, else ``None``.

    ``images`` maps generator names of ``G`` (or elements of ``G``) to
    elements of ``H``; the keys must generate ``G``.  The assignment is
    propagated along the Cayley graph of ``G``; a clash means no extension.
    """
    src: list[int] = []
    dst: list[int] = []
    for key, val in images.items():
        if isinstance(key, str):
            src.append(G.generator_map[key])
        else:
            src.append(_indices(G, [key])[0])
        if isinstance(val, GroupElement):
            if H is None:
                H = val.group
            elif val.group is not H:
                raise MixedGroupError("image elements from different groups")
            dst.append(val.index)
        else:
            dst.append(int(val))
    if H is None:
        H = G
    if not src:
        if G.order != 1:
            raise ValueError("images do not cover a generating set")
        return Homomorphism(G, H, np.zeros(1, dtype=np.int64))
    if G.closure_mask(src).sum() != G.order:
        raise ValueError("images do not cover a generating set")
    gp = np.stack([G.rperm(s) for s in src])
    hp = np.stack([H.rperm(d) for d in dst])
    ok, f, _ = GK.pair_closure(gp, hp)
    if not ok:
        return None
    return Homomorphism(G, H, f)


# ---------------------------------------------------------------------------
# products and quotients


def direct_square(G: ConcreteGroup, cap: int = ELEMENT_CAP) -> ConcreteGroup:
    n = G.order
    if n * n > cap:
        raise GroupTooLarge(f"G x G has {n * n} elements, above the cap of {cap}")
    k = len(G.names)
    a = np.repeat(np.arange(n), n)
    b = np.tile(np.arange(n), n)
    rows = []
    for i in range(k):
        rows.append(G.act[2 * i][a] * n + b)
    for i in range(k):
        rows.append(a * n + G.act[2 * i][b])
    names = [f"{nm}_1" for nm in G.names] + [f"{nm}_2" for nm in G.names]
    if k == 0:
        return ConcreteGroup((), np.zeros((0, 1), dtype=np.int32), label=f"{G.label}^2")
    out, _ = ConcreteGroup.from_regular_action(names, np.stack(rows), label=f"{G.label} x {G.label}")
    return out


def quotient(G: ConcreteGroup, N) -> tuple[ConcreteGroup, Homomorphism]:
    """``G/N`` and the projection; ``N`` must be normal."""
    N, ngens = _subgroup_gens(G, N)
    if not is_normal(G, N):
        raise NotNormalError("subgroup is not normal")
    if ngens:
        # right coset N x is the orbit of x under left multiplication by N
        lab, nlab = GK.orbit_labels(np.stack([G.lperm(g) for g in ngens]))
    else:
        lab, nlab = np.arange(G.order, dtype=np.int64), G.order
    k = len(G.names)
    label = f"{G.label}/N" if G.label else "quotient"
    if k == 0 or nlab == 1:
        Q = ConcreteGroup((), np.zeros((0, 1), dtype=np.int32), label=label)
        return Q, Homomorphism(G, Q, np.zeros(G.order, dtype=np.int64))
    reps = np.zeros(nlab, dtype=np.int64)
    reps[lab[::-1]] = np.arange(G.order)[::-1]
    qact = np.stack([lab[G.act[2 * i][reps]] for i in range(k)])
    Q, num = ConcreteGroup.from_regular_action(G.names, qact, label=label)
    return Q, Homomorphism(G, Q, num[lab])
