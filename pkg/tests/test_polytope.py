from __future__ import annotations

import json

import numpy as np
import pytest

from chiralia.group_engine import MixedGroupError, cyclic_subgroup, hom_extends, quotient
from chiralia.polytope import (
    PolyhedronReport,
    PreconditionError,
    RotationPair,
    classify,
    dual,
    enantiomorph,
    quotient_criterion,
    sylow_prime,
    verify_theorem1,
)


def tight_pair(G):
    return RotationPair(G, G.gen("sigma1"), G.gen("sigma2"))


def test_tight_regular(tight311):
    rep = classify(tight_pair(tight311))
    assert rep.schlafli == (3, 6) and rep.tight and rep.orientation == "Regular"
    assert rep.evidence["automorphism"] and rep.evidence["involution_on_generators"]
    assert rep.invariant_errors() == []


def test_G322_chiral(G322):
    G, pair = G322
    rep = classify(pair)
    assert rep.schlafli == (9, 18) and not rep.tight and rep.orientation == "Chiral"
    assert rep.sylow_profile.d == 2


def test_identity_pair_invalid(tight311):
    e = tight311.identity
    rep = classify(RotationPair(tight311, e, e))
    assert not rep.generates and rep.orientation == "Invalid"
    assert rep.invariant_errors() == []


def test_small_type_is_invalid(tight311):
    # generating pair with a type entry of 2
    s1, s2 = tight311.gen("sigma1"), tight311.gen("sigma2")
    rep = classify(RotationPair(tight311, s1 * s2, s2))
    assert rep.schlafli[0] == 2 and rep.orientation == "Invalid"


def test_pair_group_mismatch(tight311, G322):
    with pytest.raises(MixedGroupError):
        RotationPair(tight311, tight311.identity, G322[0].identity)


def test_enantiomorph(tight311, G322):
    for pair in (tight_pair(tight311), G322[1]):
        e = enantiomorph(pair)
        ab = e.sigma1 * e.sigma2
        assert (ab * ab).is_identity()
        ee = enantiomorph(e)
        assert ee.indices == pair.indices
        assert classify(e).core() == classify(pair).core()


def test_dual(G322):
    _, pair = G322
    d = dual(pair)
    rep = classify(d)
    assert rep.schlafli == (18, 9) and rep.orientation == "Chiral"
    assert dual(d).indices == pair.indices


def test_conjugation_invariance(G322):
    G, pair = G322
    base = classify(pair).core()
    for g in G.elements()[::37]:
        conj = RotationPair(G, pair.sigma1.conj(g), pair.sigma2.conj(g))
        assert classify(conj).core() == base


def test_quotient_criterion_star(Gstar322, q322):
    from chiralia.constructions import star_quotient

    Gs, spair = Gstar322
    Q, proj = star_quotient(q322)
    hpair = RotationPair(Q, proj(spair.sigma1), proj(spair.sigma2))
    assert proj.injective_on(cyclic_subgroup(spair.sigma1))
    assert quotient_criterion(spair, proj, hpair)


def test_quotient_criterion_identity(G322):
    G, pair = G322
    ident = hom_extends(G, {n: G.gen(n) for n in G.names})
    assert quotient_criterion(pair, ident, pair)


def test_quotient_criterion_collapsing(G322):
    from chiralia.pgroup import sylow_p

    G, pair = G322
    Q, proj = quotient(G, sylow_p(G, 3))
    hpair = RotationPair(Q, proj(pair.sigma1), proj(pair.sigma2))
    assert not quotient_criterion(pair, proj, hpair)


def test_quotient_criterion_rejects_wrong_images(G322):
    G, pair = G322
    ident = hom_extends(G, {n: G.gen(n) for n in G.names})
    with pytest.raises(ValueError):
        quotient_criterion(pair, ident, dual(pair))


def test_verify_structure_G322(G322):
    v = verify_theorem1(G322[1])
    assert v.passed, v.to_json()
    assert v.clauses["4"]["tight"] is False and v.clauses["4"]["metacyclic"] is False
    assert v.clauses["2"]["match"] == "as_given"


def test_verify_structure_Gstar(Gstar322):
    v = verify_theorem1(Gstar322[1])
    assert v.passed and v.m == 6


def test_verify_structure_dual_orientation(G322):
    v = verify_theorem1(dual(G322[1]))
    assert v.passed and v.clauses["2"]["match"] == "dual"


def test_verify_structure_requires_chiral(tight311):
    with pytest.raises(PreconditionError):
        verify_theorem1(tight_pair(tight311))


def test_sylow_prime():
    assert sylow_prime(486) == (3, 5)
    assert sylow_prime(24) is None and sylow_prime(4) is None


def test_report_json_round_trip(G322):
    rep = classify(G322[1])
    d = json.loads(json.dumps(rep.to_json()))
    assert list(d)[:6] == ["order", "schlafli", "tight", "orientation", "clauses", "evidence"]
    back = PolyhedronReport.from_json(d)
    assert back.core() == rep.core() and back.sylow_profile == rep.sylow_profile


def test_invariant_errors_detect_inconsistency(G322):
    rep = classify(G322[1])
    rep.tight = True
    assert rep.invariant_errors()


def test_tight_product_set(tight311):
    from chiralia.group_engine import product_set

    pair = tight_pair(tight311)
    s22 = pair.sigma2 * pair.sigma2
    ps = product_set(tight311, cyclic_subgroup(pair.sigma1), cyclic_subgroup(s22))
    assert ps.size == 9 == tight311.order // 2


def test_regular_iff_alpha_involution(tight311):
    pair = tight_pair(tight311)
    f = hom_extends(tight311, {pair.sigma1: ~pair.sigma1, pair.sigma2: ~pair.sigma2})
    assert np.array_equal(f.images[f.images], np.arange(tight311.order))
