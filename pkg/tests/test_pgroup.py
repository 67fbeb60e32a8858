from __future__ import annotations

import itertools

import numpy as np
import pytest
from _suite import SUITE
from conftest import group

from chiralia.group_engine import center, derived_subgroup, is_normal, product_set, cyclic_subgroup
from chiralia.pgroup import (
    NotAPGroupError,
    exponent,
    frattini,
    is_metacyclic,
    is_prime,
    mho1,
    omega1,
    prime_power,
    profile,
    rank,
    sylow_p,
)


def g(name):
    return group(SUITE[name][0], name)


def test_prime_helpers():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert prime_power(243) == (3, 5)
    assert prime_power(1) is None and prime_power(12) is None


def test_sylow_of_heis_x_z2():
    G = g("heis_x_z2")
    P = sylow_p(G, 3)
    assert P.size == 27 and is_normal(G, P)
    assert np.all(G.orders[P] % 2 == 1)


def test_sylow_G322_is_sigma_subgroup(G322):
    G, pair = G322
    P = sylow_p(G, 3)
    H = G.closure([pair.sigma1.index, (pair.sigma2 * pair.sigma2).index])
    assert P.size == 243 and np.array_equal(P, H)


def test_sylow_trivial_part():
    G = group("gens t; rels t^2;")
    assert sylow_p(G, 3).tolist() == [0]


def test_sylow_bad_order():
    with pytest.raises(ValueError):
        sylow_p(g("s4"), 3)


def test_frattini_rank_examples(G322):
    Z9 = group("gens a; rels a^9;")
    assert frattini(Z9).size == 3 and rank(Z9) == 1
    E = g("z3cubed")
    assert frattini(E).size == 1 and rank(E) == 3
    G, _ = G322
    assert rank(G, sylow_p(G, 3), 3) == 2


def test_frattini_matches_maximal_intersection():
    """Cross-check the algebraic Frattini against the intersection of index-p subgroups."""
    for name in ("z9xz3", "heisenberg27", "metacyclic27", "z3cubed", "cyclic27"):
        G = g(name)
        maximal = set()
        for a, b in itertools.combinations_with_replacement(range(G.order), 2):
            H = G.closure([a, b])
            if H.size * 3 == G.order:
                maximal.add(H.tobytes())
        inter = set(range(G.order))
        for m in maximal:
            inter &= set(np.frombuffer(m, dtype=np.int64).tolist())
        assert sorted(inter) == frattini(G).tolist(), name


def test_metacyclic_examples(G322):
    assert is_metacyclic(g("cyclic27"))[0]
    assert is_metacyclic(g("metacyclic27"))[0]
    assert not is_metacyclic(g("heisenberg27"))[0]
    assert not is_metacyclic(g("z3cubed"))[0]
    G, _ = G322
    assert not is_metacyclic(G, sylow_p(G, 3), 3)[0]


def test_metacyclic_witness_factorizes():
    for name in ("cyclic27", "metacyclic27", "z9xz3"):
        G = g(name)
        ok, (n, h) = is_metacyclic(G)
        assert ok
        ps = product_set(G, cyclic_subgroup(G.element(n)), cyclic_subgroup(G.element(h)))
        assert ps.size == G.order


def test_omega_mho_exponent():
    E = g("z3cubed")
    assert omega1(E).size == 27 and mho1(E).size == 1
    assert mho1(g("z9xz3")).size == 3
    H = g("heisenberg27")
    assert exponent(H) == 3


def test_not_a_pgroup():
    with pytest.raises(NotAPGroupError):
        rank(g("s4"))


def test_order_p3_nonmetacyclic_has_derived_equal_center():
    for name in ("heisenberg27", "metacyclic27"):
        G = g(name)
        if not is_metacyclic(G)[0]:
            D = derived_subgroup(G)
            assert np.array_equal(D, center(G)) and D.size == 3


def test_burnside_basis(P322):
    """Every pair whose Frattini images generate the quotient generates P (exhaustive)."""
    from chiralia.group_engine import quotient

    G = P322.group
    Q, proj = quotient(G, frattini(G))
    assert Q.order == 9
    img = proj.images
    qgen = np.zeros((Q.order, Q.order), dtype=bool)
    for u in range(Q.order):
        for v in range(Q.order):
            qgen[u, v] = Q.closure([u, v]).size == Q.order
    for a in range(G.order):
        for b in range(a + 1, G.order):
            if qgen[img[a], img[b]]:
                assert G.closure_mask([a, b]).all()


def test_profile_of_P322(P322):
    prof = profile(P322.group)
    assert (prof.m, prof.d, prof.nilpotency_class) == (5, 2, 4)
    assert not prof.is_abelian and not prof.is_metacyclic
    assert prof.to_json()["p"] == 3
