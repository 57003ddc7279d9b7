import json

import pytest
from hypothesis import given

import oracles
from conftest import SMALL_SITES, mset, objects_of, rgraph, site_and_object
from toposlab.decidable import (coreflection_candidate, dec_coreflection, dec_objects, dec_reflection,
                                decidable_subobjects, factor_through, injective_actions, is_decidable,
                                mclarty_subobject, NoCoreflection)
from toposlab.fincat import site_by_name
from toposlab.presheaf import compose, hom_count, iter_homs, terminal
from toposlab.presheaf.subobject import Subobject

FROZEN = json.load(open(__file__.rsplit("/", 1)[0] + "/data/frozen.json"))


def test_sets_objects_all_decidable():
    C = site_by_name("terminal")
    assert all(is_decidable(X) for X in objects_of("terminal", 3))
    assert sorted(X.sizes()[0] for X in dec_objects(C, 3)) == [0, 1, 2, 3]


def test_one_edge_graph_not_decidable():
    X = rgraph(["a", "b"], {"e": ("a", "b")})
    v = is_decidable(X)
    assert not v and v.complement is None
    assert v.witness["object"] == "E"
    assert v.to_json()["decidable"] is False


def test_discrete_graph_decidable_with_complement():
    X = rgraph(["a", "b"], {})
    v = is_decidable(X)
    assert v and v.complement is not None
    assert "complement" in v.to_json()


def test_idempotent_monoid():
    assert not is_decidable(mset("idempotent", ["x", "y"], e={"x": "x", "y": "x"}))
    assert is_decidable(mset("idempotent", ["x", "y"], e={"x": "x", "y": "y"}))


def test_free_orbit_decidable():
    assert is_decidable(mset("zmod2", ["a", "b"], g={"a": "b", "b": "a"}))


@pytest.mark.parametrize("name", SMALL_SITES)
def test_decidable_matches_oracle(name):
    got = [bool(is_decidable(X)) for X in objects_of(name, 2)]
    assert got == FROZEN["per_site"][name]["decidable"]
    assert got == [oracles.decidable(X) for X in objects_of(name, 2)]
    assert got == [injective_actions(X) for X in objects_of(name, 2)]


def test_reflexive_decidables_are_degenerate():
    C = site_by_name("reflexive_graph")
    for X in dec_objects(C, 3):
        # every edge is the loop of its source
        assert all(X.action["sigma"][X.action["d0"][e]] == e for e in X.carrier["E"])


def test_idempotent_decidables_fix_everything():
    for X in dec_objects(site_by_name("idempotent"), 3):
        assert all(X.action["e"][x] == x for x in X.carrier["*"])


@given(site_and_object(bound=2))
def test_coreflection_of_decidable_is_identity(X):
    if is_decidable(X):
        assert coreflection_candidate(X).is_full()


@given(site_and_object(bound=2, sites=("reflexive_graph", "idempotent", "right_zeros", "zmod2", "delta1")))
def test_coreflection_matches_oracle(X):
    cand = coreflection_candidate(X)
    maxi = oracles.largest_decidable_sub(X)
    if isinstance(cand, NoCoreflection):
        assert len(maxi) > 1
    else:
        got = frozenset((c, x) for c in X.site.objects for x in cand.parts[c])
        assert maxi == [got]


def test_reflexive_coreflection_is_vertex_set():
    X = rgraph(["a", "b", "c"], {"e": ("a", "b"), "f": ("b", "b")})
    res = dec_coreflection(X, bound=2)
    assert dict(zip(X.site.objects, res.CX.sizes())) == {"E": 3, "V": 3}
    assert res.checked_maps > 0


def test_idempotent_coreflection_is_fixed_points():
    X = mset("idempotent", ["x", "y", "z"], e={"x": "x", "y": "x", "z": "z"})
    res = dec_coreflection(X, bound=2)
    assert set(res.CX.carrier["*"]) == {"x", "z"}


@given(site_and_object(bound=2, sites=("reflexive_graph", "idempotent", "zmod2")))
def test_every_decidable_map_factors(X):
    res = dec_coreflection(X)
    if isinstance(res, NoCoreflection):
        return
    for D in dec_objects(X.site, 2):
        assert hom_count(D, res.CX) == hom_count(D, X)
        for m in iter_homs(D, X):
            g = factor_through(m, res.counit)
            assert g is not None and compose(res.counit, g) == m


@given(site_and_object(bound=2))
def test_reflection_is_decidable_and_universal(X):
    r = dec_reflection(X)
    assert is_decidable(r.quotient)
    assert r.unit.is_epic()
    for D in dec_objects(X.site, 2):
        assert hom_count(r.quotient, D) == hom_count(X, D)


def test_reflection_collapses_edge():
    X = rgraph(["a", "b"], {"e": ("a", "b")})
    Q = dec_reflection(X).quotient
    assert dict(zip(X.site.objects, Q.sizes())) == {"E": 1, "V": 1}


def test_mclarty_on_free_orbit():
    X = mset("zmod2", ["a", "b"], g={"a": "b", "b": "a"})
    res = mclarty_subobject(X)
    assert res.degenerate and res.points == []
    assert res.unique and res.subobject.is_full()


def test_mclarty_with_points():
    X = mset("idempotent", ["x", "y"], e={"x": "x", "y": "x"})
    res = mclarty_subobject(X)
    assert res.points == [{"*": "x"}]
    assert res.unique and set(res.subobject.parts["*"]) == {"x"}


def test_decidable_subobjects_of_terminal():
    one = terminal(site_by_name("reflexive_graph"))
    assert len(decidable_subobjects(one)) == 2
    assert isinstance(Subobject.full(one), Subobject)
