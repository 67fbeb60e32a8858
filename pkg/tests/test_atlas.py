from __future__ import annotations

import json

import numpy as np
import pytest

from chiralia.atlas import (
    AtlasRecord,
    SearchSpec,
    atlas_append,
    atlas_diff,
    atlas_load,
    equivalence,
    search,
    search_group,
    verify_theorem1_corpus,
)
from chiralia.group_engine import ConcreteGroup, GroupTooLarge, Permutation
from chiralia.polytope import RotationPair, dual, enantiomorph


@pytest.fixture(scope="module")
def raw322(G322):
    return search_group(G322[0], label="G322", require_chiral=True, timestamp="t")


@pytest.fixture(scope="module")
def aut322(G322):
    return search_group(G322[0], label="G322", require_chiral=True, dedupe="aut", timestamp="t")


def test_spec_needs_one_source(G322):
    with pytest.raises(ValueError):
        SearchSpec()
    with pytest.raises(ValueError):
        SearchSpec(construction={"family": "G"}, group=G322[0])
    with pytest.raises(ValueError):
        SearchSpec(group=G322[0], dedupe="iso")


def test_tight_has_no_chiral_pairs(tight311):
    assert search_group(tight311, require_chiral=True) == []
    assert search_group(tight311)


def test_trivial_group():
    G = ConcreteGroup.from_generators(1, [Permutation.identity(1)])
    assert search_group(G) == []


def test_element_cap(G322):
    with pytest.raises(GroupTooLarge):
        search_group(G322[0], element_cap=100)


def test_contains_case1_pair(G322, aut322):
    G, pair = G322
    assert any(equivalence(r.pair, pair) is not None for r in aut322)


def test_aut_partitions_raw(raw322, aut322):
    reps = [r.pair for r in aut322]
    assert sum(r.class_size for r in aut322) == len(raw322)
    rng = np.random.default_rng(0)
    for i in rng.choice(len(raw322), 40, replace=False):
        hits = [rep for rep in reps if equivalence(rep, raw322[i].pair) is not None]
        assert len(hits) == 1


def test_merged_mode(G322, aut322):
    merged = search_group(G322[0], require_chiral=True, dedupe="aut+enantiomorph+dual", timestamp="t")
    assert len(merged) == 1 and len(aut322) == 4
    pair = aut322[0].pair
    images = [enantiomorph(pair), dual(pair), dual(enantiomorph(pair))]
    classes = {
        next(i for i, r in enumerate(aut322) if equivalence(r.pair, img) is not None) for img in images + [pair]
    }
    assert len(classes) == 4


def test_filters(G322):
    G = G322[0]
    only = search_group(G, require_type=(9, 18), dedupe="aut", timestamp="")
    assert only and all(r.report.schlafli == (9, 18) for r in only)
    assert search_group(G, require_tight=True) == []


def test_order_independent(G322):
    G = G322[0]
    a = search_group(G, dedupe="aut", timestamp="", threads=1)
    b = search_group(G, dedupe="aut", timestamp="", threads=3)
    assert [r.key for r in a] == [r.key for r in b]


def test_corpus_G322(raw322):
    s = verify_theorem1_corpus(raw322)
    assert s["passed"] and s["checked"] == len(raw322)


def test_corpus_empty():
    s = verify_theorem1_corpus([])
    assert s["passed"] and s["records"] == 0


def test_search_from_construction():
    recs = search(SearchSpec(construction={"family": "tight", "p": 3, "l1": 1, "l2": 1}, dedupe="aut"))
    assert recs and all(r.report.orientation == "Regular" for r in recs)


def test_round_trip(tmp_path, aut322):
    path = tmp_path / "a.jsonl"
    atlas_append(path, aut322)
    loaded = atlas_load(path)
    assert loaded.errors == [] and loaded.warnings == []
    assert loaded.records == aut322
    for line in path.read_text().splitlines():
        assert json.loads(line)["v"] == 1


def test_diff(tmp_path, raw322, aut322):
    a, b = tmp_path / "raw.jsonl", tmp_path / "aut.jsonl"
    atlas_append(a, raw322)
    atlas_append(b, aut322)
    assert atlas_diff(a, a) == {"only_in_a": [], "only_in_b": []}
    d = atlas_diff(a, b)
    assert d["only_in_b"] == [] and len(d["only_in_a"]) == len(raw322) - len(aut322)


def test_malformed_and_version(tmp_path, aut322):
    path = tmp_path / "bad.jsonl"
    atlas_append(path, aut322[:1])
    good = json.loads(path.read_text())
    broken = dict(good, report=dict(good["report"], tight=True))
    future = dict(good, v=2)
    with open(path, "a") as fh:
        fh.write("{not json\n")
        fh.write(json.dumps(broken) + "\n")
        fh.write(json.dumps(future) + "\n")
    with pytest.warns(UserWarning):
        loaded = atlas_load(path)
    assert len(loaded.records) == 2
    assert [e.split(":")[0] for e in loaded.errors] == ["line 2", "line 3"]
    assert loaded.warnings[0].startswith("line 4")


def test_record_json_key_order(aut322):
    d = aut322[0].to_json()
    assert list(d)[:5] == ["v", "group", "order", "sigma1", "sigma2"]
    assert AtlasRecord.from_json(d) == aut322[0]
