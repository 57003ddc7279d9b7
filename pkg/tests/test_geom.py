import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import mset, objects_of, rgraph
from toposlab.decidable import is_decidable
from toposlab.fincat import site_by_name
from toposlab.geom import (GeomError, canonical_to_sets, classify_morphism, from_dec_coreflection,
                           nullstellensatz_transform, omega_comparison, sets_object, shriek_preserves_zero, slice,
                           theta_via_units, uiao_verify)
from toposlab.geom.flags import preserves_products_flag
from toposlab.geom.morphism import refute_right_adjoint, verify_adjunction
from toposlab.presheaf import hom_count, is_isomorphic, terminal


def p_of(name):
    return canonical_to_sets(site_by_name(name))


def test_terminal_site_adjoints_are_identities():
    p = p_of("terminal")
    for X in objects_of("terminal", 3):
        assert p.direct(X).sizes() == X.sizes() == p.shriek(X).sizes()
        assert p.alpha(p.direct(X)).is_iso() and p.beta(X).is_iso()


def test_direct_image_is_fixed_points():
    p = p_of("zmod2")
    swap = mset("zmod2", ["a", "b"], g={"a": "b", "b": "a"})
    assert p.direct(swap).is_empty()
    fixed = mset("zmod2", ["a", "b", "c"], g={"a": "a", "b": "c", "c": "b"})
    assert p.direct(fixed).sizes() == (1,)
    assert p.shriek(fixed).sizes() == (2,)


def test_shriek_counts_components():
    p = p_of("reflexive_graph")
    X = rgraph(["a", "b", "c"], {"e": ("a", "b")})
    assert p.shriek(X).sizes() == (2,)
    assert p.direct(X).sizes() == (3,)


@pytest.mark.parametrize("name,expect", [
    ("reflexive_graph", dict(connected="true", hyperconnected="true", local="true", essential="true",
                             pressential="true", nullstellensatz="true", reflects_zero="true")),
    ("zmod2", dict(connected="true", hyperconnected="true", local="false", reflects_zero="false",
                   essential="true")),
    ("idempotent", dict(connected="true", hyperconnected="true", local="true", reflects_zero="true")),
])
def test_canonical_flags(name, expect):
    fl = classify_morphism(p_of(name), bound=2, slice_size=None)
    got = {k: getattr(fl, k).status for k in expect}
    assert got == expect


def test_omega_comparison_iso_for_hyperconnected():
    for name in ("reflexive_graph", "zmod2", "idempotent", "delta1"):
        cmp = omega_comparison(p_of(name))
        assert cmp.is_iso and cmp.pullback_ok


def test_omega_comparison_not_iso_for_graphs():
    # an irreflexive graph site is not hyperconnected over sets
    assert not omega_comparison(p_of("parallel_pair")).is_iso


@pytest.mark.parametrize("name", ["reflexive_graph", "idempotent", "delta1"])
def test_theta_epic_and_agrees_with_unit_formula(name):
    p = p_of(name)
    theta = nullstellensatz_transform(p)
    for X in objects_of(name, 2):
        t = theta(X)
        assert t.is_epic()
        assert t == theta_via_units(p, X)


@given(st.sampled_from(["reflexive_graph", "zmod2", "idempotent", "delta1", "parallel_pair"]), st.data())
def test_adjunction_hom_counts(name, data):
    p = p_of(name)
    A = data.draw(st.sampled_from(objects_of("terminal", 3)))
    X = data.draw(st.sampled_from(objects_of(name, 2)))
    assert hom_count(p.inverse(A), X) == hom_count(A, p.direct(X))
    assert hom_count(p.shriek(X), A) == hom_count(X, p.inverse(A))


def test_verified_adjunction_report():
    p = p_of("right_zeros")
    rep = verify_adjunction("p^* -| p_*", p.inverse, p.direct, p.alpha, p.beta, objects_of("terminal", 2),
                            objects_of("right_zeros", 2))
    assert rep.ok and rep.pairs > 0 and rep.triangles > 0


def test_slice_over_point_is_the_morphism():
    p = p_of("reflexive_graph")
    q = slice(p, sets_object([0]))
    fl = classify_morphism(q, bound=2, slice_size=None)
    assert fl.hyperconnected.status == "true"
    assert fl.pressential.status == "true"


def test_slice_over_two_points():
    p = p_of("reflexive_graph")
    q = slice(p, sets_object([0, 1]))
    fl = classify_morphism(q, bound=2, slice_size=None)
    assert fl.hyperconnected.status == "true"
    assert preserves_products_flag(q, q.source_objects(2)).status == "true"


def test_slice_needs_presheaf_base():
    p = from_dec_coreflection(site_by_name("idempotent"), 2)
    with pytest.raises(GeomError):
        slice(p, terminal(site_by_name("idempotent")))


def test_upper_adjoint_of_zero():
    assert shriek_preserves_zero(p_of("reflexive_graph"))["initial"]
    z = shriek_preserves_zero(p_of("zmod2"))
    assert not z["initial"] and z["subterminal"]


def test_uiao_on_reflexive_graph():
    rep = uiao_verify(site_by_name("reflexive_graph"), bound=2)
    assert rep.ok, rep.to_json()


def test_uiao_on_free_action_has_no_upper_adjoint():
    rep = uiao_verify(site_by_name("zmod2"), bound=2)
    assert not rep.ok
    assert rep.first_failure.name == "adjunction p_* -| p^!"
    assert rep.refutation["refuted"]


def test_refutation_directly():
    p = p_of("zmod2")
    ref = refute_right_adjoint(p, sets_object([]), objects_of("zmod2", 2))
    assert ref.refuted and ref.candidates >= 1


def test_dec_morphism_missing_on_graphs():
    with pytest.raises(GeomError):
        from_dec_coreflection(site_by_name("parallel_pair"), 2)
    rep = uiao_verify(site_by_name("parallel_pair"), bound=2, via="dec")
    assert rep.steps[0].ok is False


def test_dec_morphism_image_is_decidable():
    p = from_dec_coreflection(site_by_name("reflexive_graph"), 2)
    for X in objects_of("reflexive_graph", 2):
        D = p.direct(X)
        assert is_decidable(D)
        assert p.beta(X).is_monic()
        assert is_isomorphic(p.direct(D), D)
