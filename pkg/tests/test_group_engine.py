from __future__ import annotations

import numpy as np
import pytest
from _suite import SUITE, small
from conftest import group
from hypothesis import given, settings
from hypothesis import strategies as st

from chiralia.group_engine import (
    ConcreteGroup,
    GroupTooLarge,
    MixedGroupError,
    NotASubgroupError,
    NotNormalError,
    Permutation,
    center,
    centralizer,
    cyclic_subgroup,
    derived_subgroup,
    direct_square,
    hom_extends,
    intersect,
    is_normal,
    is_subgroup,
    lower_central_series,
    nilpotency_class,
    quotient,
    subgroup_closure,
)
from chiralia.words import Word


@pytest.fixture(scope="module")
def heis():
    return group(SUITE["heisenberg27"][0], "heis")


@pytest.fixture(scope="module")
def s4():
    return group(SUITE["s4"][0], "s4")


def test_permutation_basics():
    a = Permutation.from_cycles(5, [(0, 1, 2, 3, 4)])
    b = Permutation.from_cycles(5, [(0, 1)])
    assert a.order() == 5 and b.order() == 2
    # left factor acts first
    assert (a * b)(0) == b(a(0))
    assert (a * a.inverse()).is_identity()
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


def test_from_generators_examples(tight311):
    assert ConcreteGroup.from_generators(3, [Permutation.identity(3)]).order == 1
    assert ConcreteGroup.from_generators(5, [Permutation.from_cycles(5, [(0, 1, 2, 3, 4)])]).order == 5
    assert ConcreteGroup.from_generators(0, []).order == 1
    perms = [tight311.permutation(g) for g in tight311.gen_indices()]
    assert ConcreteGroup.from_generators(18, perms).order == 18


def test_element_cap():
    s = Permutation.from_cycles(6, [(0, 1)])
    t = Permutation.from_cycles(6, [(0, 1, 2, 3, 4, 5)])
    with pytest.raises(GroupTooLarge):
        ConcreteGroup.from_generators(6, [s, t], cap=100)


def test_from_generators_lexicographic():
    G = ConcreteGroup.from_generators(4, [Permutation.from_cycles(4, [(0, 1, 2, 3)])])
    imgs = [tuple(G.permutation(i).images) for i in range(G.order)]
    assert imgs == sorted(imgs)


def test_orders_in_G322(G322):
    G, pair = G322
    assert G.identity.order == 1
    assert pair.sigma2.order == 18
    assert (pair.sigma1 * pair.sigma2).order == 2
    assert intersect(cyclic_subgroup(pair.sigma1), cyclic_subgroup(pair.sigma2)).size == 1
    assert intersect(cyclic_subgroup(pair.sigma1), cyclic_subgroup(pair.sigma1)).size == 9
    assert cyclic_subgroup(G.identity).tolist() == [0]


def test_mixed_groups_rejected(heis, s4):
    with pytest.raises(MixedGroupError):
        heis.gen("x") * s4.gen("s")
    with pytest.raises(MixedGroupError):
        subgroup_closure(heis, [s4.gen("s")])


def test_heisenberg_structure(heis):
    D = derived_subgroup(heis)
    Z = center(heis)
    assert D.size == 3 and np.array_equal(D, Z)
    assert nilpotency_class(heis) == 2


def test_center_of_abelian():
    A = group(SUITE["z9xz3"][0])
    assert center(A).size == A.order
    assert centralizer(A, [A.gen("a")]).size == A.order


def test_not_a_subgroup(s4):
    with pytest.raises(NotASubgroupError):
        is_normal(s4, [0, int(s4.gen("s").index), int(s4.gen("t").index)])


def test_x_central_in_Gstar(Gstar322):
    G, _ = Gstar322
    assert set(cyclic_subgroup(G.gen("x")).tolist()) <= set(center(G).tolist())


def test_nonnilpotent_series(s4):
    series = lower_central_series(s4)
    assert series[-1].size == 12
    assert nilpotency_class(s4) is None


def test_hom_extends_identity(s4):
    f = hom_extends(s4, {n: s4.gen(n) for n in s4.names})
    assert f is not None and f.is_automorphism()
    assert np.array_equal(f.images, np.arange(s4.order))


def test_hom_extends_needs_generators(s4):
    with pytest.raises(ValueError, match="generating set"):
        hom_extends(s4, {"s": s4.gen("s")})


def test_inverting_map_tight(tight311):
    s1, s2 = tight311.gen("sigma1"), tight311.gen("sigma2")
    f = hom_extends(tight311, {s1: ~s1, s2: ~s2})
    assert f is not None and f.is_automorphism()


def test_inverting_map_G322(G322):
    G, pair = G322
    assert hom_extends(G, {pair.sigma1: ~pair.sigma1, pair.sigma2: ~pair.sigma2}) is None


def test_maps_onto_z9_x_z3(Gstar322):
    """Into Z9 x Z3: only b = 1 is compatible with beta^sigma = beta^-1."""
    G, _ = Gstar322
    H = group("gens a, b; rels a^9, b^3, [a, b];", "H")
    a, b = H.gen("a"), H.gen("b")
    one = H.identity
    others = [n for n in G.names if n not in ("s1", "beta", "sigma", "x")]

    def extension(s1, beta):
        base = {"s1": s1, "beta": beta, "sigma": one, **{n: one for n in others}}
        for img in H.elements():
            f = hom_extends(G, {**base, "x": img}, H)
            if f is not None:
                return f
        return None

    assert extension(a, b) is None
    f = extension(a, one)
    assert f is not None and f(G.gen("x")) == a ** -3 != one
    assert f.is_homomorphism()


def test_hom_is_automorphism_iff_bijective(s4):
    s, t = s4.gen("s"), s4.gen("t")
    for g in s4.elements()[:8]:
        f = hom_extends(s4, {s: s.conj(g), t: t.conj(g)})
        assert f is not None and f.is_automorphism() == f.is_bijective() == (f.image().size == s4.order)


def test_quotients(G322, Gstar322, P322):
    G, _ = G322
    Q, proj = quotient(G, G.all())
    assert Q.order == 1
    from chiralia.pgroup import sylow_p

    Q, proj = quotient(G, sylow_p(G, 3))
    assert Q.order == 2 and proj.is_homomorphism()
    Gs, _ = Gstar322
    Q, proj = quotient(Gs, cyclic_subgroup(Gs.gen("x")))
    assert Q.order == 486 and proj.is_surjective()
    with pytest.raises(NotNormalError):
        quotient(G, cyclic_subgroup(G.gen("sigma")))


def test_direct_square(s4):
    D = direct_square(group(SUITE["dihedral6"][0], "d6"))
    assert D.order == 36
    with pytest.raises(GroupTooLarge):
        direct_square(s4, cap=100)


@pytest.mark.parametrize("name", sorted(small(2000)))
def test_axioms_lagrange_orders(name):
    G = group(SUITE[name][0], name)
    assert G.verify_axioms(1000, seed=1)
    assert np.all(G.order % G.orders == 0)
    for H in [derived_subgroup(G), center(G), *lower_central_series(G)]:
        assert G.order % H.size == 0 and is_subgroup(G, H)


def _term(series, k):
    return series[min(k - 1, len(series) - 1)]


@pytest.mark.parametrize("name", sorted(small(100)))
def test_commutator_identities_all_triples(name):
    G = group(SUITE[name][0], name)
    n = G.order
    x, y, z = (a.ravel() for a in np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij"))
    mul, inv = G.mul_many, G.inverse

    def comm(a, b):
        return mul(mul(inv[a], inv[b]), mul(a, b))

    def conj(a, b):
        return mul(mul(inv[b], a), b)

    # (1)
    assert np.array_equal(comm(mul(x, y), z), mul(conj(comm(x, z), y), comm(y, z)))
    assert np.array_equal(comm(x, mul(y, z)), mul(comm(x, z), conj(comm(x, y), z)))
    # (2)
    assert np.array_equal(conj(comm(x, inv[y]), y), inv[comm(x, y)])
    assert np.array_equal(conj(comm(inv[x], y), x), inv[comm(x, y)])
    # (3)
    assert np.array_equal(conj(comm(inv[x], inv[y]), mul(x, y)), comm(x, y))
    # (4) modulo G_4, exponents from a small range
    G4 = np.zeros(n, dtype=bool)
    G4[_term(lower_central_series(G), 4)] = True
    for i1, i2, i3 in [(2, 1, 1), (1, -1, 2), (-1, 2, -1), (3, 2, 1)]:
        px, py, pz = G.power_map(i1, x), G.power_map(i2, y), G.power_map(i3, z)
        lhs = comm(comm(px, py), pz)
        rhs = G.power_map(i1 * i2 * i3, comm(comm(x, y), z))
        assert G4[mul(lhs, inv[rhs])].all()


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.tuples(st.integers(0, 1), st.integers(-3, 3).filter(bool)), max_size=8),
    st.lists(st.tuples(st.integers(0, 1), st.integers(-3, 3).filter(bool)), max_size=8),
    st.lists(st.tuples(st.integers(0, 1), st.integers(-3, 3).filter(bool)), max_size=8),
)
def test_word_identities_evaluate_equal(u, v, w):
    G = _S4()
    names = G.names
    U, V, W = (Word.build(names, s) for s in (u, v, w))
    ev = G.evaluate
    from chiralia.words import commutator as c, conjugate as cj

    assert ev(c(U * V, W)) == ev(cj(c(U, W), V) * c(V, W))
    assert ev(cj(c(U, ~V), V)) == ev(~c(U, V))
    assert ev(cj(c(~U, ~V), U * V)) == ev(c(U, V))


_CACHE = {}


def _S4():
    if "s4" not in _CACHE:
        _CACHE["s4"] = group(SUITE["s4"][0], "s4")
    return _CACHE["s4"]


def test_large_group_path_arithmetic():
    G = group(SUITE["coxeter_2_3_7_8"][0], "big")
    assert not G.has_table
    assert G.verify_axioms(500, seed=3)
    s, t = G.gen("s"), G.gen("t")
    assert (s * t).order == 7 and s.comm(t).order == 8
