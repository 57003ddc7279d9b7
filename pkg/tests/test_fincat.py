import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import SMALL_SITES, graph, mset
from toposlab.fincat import (CategoryError, build_category, category_of_elements, connected_components,
                             cyclic_group_table, discrete_category, find_isomorphism, monoid_category,
                             named_sites, site_by_name, standard_site)
from toposlab.presheaf import constant, terminal, yoneda


def parallel_spec(extra=()):
    return {"objects": ["V", "E"],
            "morphisms": [{"name": "1V", "src": "V", "tgt": "V"}, {"name": "1E", "src": "E", "tgt": "E"},
                          {"name": "s", "src": "V", "tgt": "E"}, {"name": "t", "src": "V", "tgt": "E"}],
            "identities": {"V": "1V", "E": "1E"},
            "compose": [["1V", "1V", "1V"], ["1E", "1E", "1E"], ["s", "1V", "s"], ["t", "1V", "t"],
                        ["1E", "s", "s"], ["1E", "t", "t"], *extra]}


def test_build_parallel_pair():
    C = build_category(parallel_spec())
    assert len(C.objects) == 2 and len(C.morphisms) == 4
    assert oracles.table_is_category(C)


def test_build_terminal():
    C = build_category({"objects": ["*"], "morphisms": [{"name": "i", "src": "*", "tgt": "*"}],
                        "identities": {"*": "i"}, "compose": [["i", "i", "i"]]})
    assert C.objects == ("*",) and list(C.morphisms) == ["i"]


def test_ill_typed_composite_rejected():
    with pytest.raises(CategoryError):
        build_category(parallel_spec(extra=[["s", "s", "s"]]))


def test_missing_composite_rejected():
    spec = parallel_spec()
    spec["compose"] = spec["compose"][:-1]
    with pytest.raises(CategoryError):
        build_category(spec)


@pytest.mark.parametrize("name", named_sites())
def test_named_sites_are_categories(name):
    assert oracles.table_is_category(site_by_name(name))


@pytest.mark.parametrize("name", named_sites())
def test_json_round_trip(name):
    C = site_by_name(name)
    D = build_category(json.loads(json.dumps(C.to_json())))
    assert D == C


def test_corpus_shapes():
    assert len(site_by_name("terminal").morphisms) == 1
    z2 = site_by_name("zmod2")
    assert len(z2.objects) == 1 and len(z2.morphisms) == 2
    assert z2.compose("g", "g") == "1"
    assert len(site_by_name("parallel_pair").morphisms) == 4


def test_reflexive_graph_composites():
    C = site_by_name("reflexive_graph")
    # identities, d0, d1, sigma and the two idempotents d_i . sigma on E
    assert len(C.morphisms) == 7
    for d in ("d0", "d1"):
        e = C.compose(d, "sigma")
        assert C.src(e) == C.tgt(e) == "E"
        assert C.compose(e, e) == e
        assert C.compose("sigma", d) == "id_V"
    assert C.compose("d0", "sigma") != C.compose("d1", "sigma")


def test_monoid_from_table():
    C = monoid_category(["1", "g"], "1", {("1", "1"): "1", ("1", "g"): "g", ("g", "1"): "g", ("g", "g"): "1"})
    assert len(C.morphisms) == 2 and C.compose("g", "g") == "1"
    with pytest.raises(CategoryError):
        monoid_category(["1", "a", "b"], "1", {("a", "a"): "b", ("a", "b"): "b", ("b", "a"): "a",
                                               ("b", "b"): "a", **{(x, "1"): x for x in "1ab"},
                                               **{("1", x): x for x in "1ab"}})


def test_cyclic_tables():
    for n in (2, 3, 4):
        elements, mult = cyclic_group_table(n)
        assert oracles.table_is_category(monoid_category(elements, "1", mult))


def test_standard_site_rejects_unknown():
    with pytest.raises(CategoryError):
        standard_site("nope")
    with pytest.raises(CategoryError):
        site_by_name("nope")


def test_elements_of_terminal_is_site():
    for name in ("parallel_pair", "reflexive_graph", "zmod2"):
        C = site_by_name(name)
        el = category_of_elements(terminal(C))
        assert find_isomorphism(el.category, C) is not None


def test_elements_of_two_point_set():
    C = site_by_name("terminal")
    el = category_of_elements(constant(C, [0, 1]))
    assert find_isomorphism(el.category, discrete_category(["a", "b"])) is not None


def test_elements_of_edge_representable():
    C = site_by_name("parallel_pair")
    el = category_of_elements(yoneda(C, "E"))
    assert len(el.category.objects) == 3
    assert len(connected_components(el.category)) == 1


def test_components():
    assert connected_components(site_by_name("terminal")) == [("*",)]
    assert len(connected_components(discrete_category(["a", "b", "c"]))) == 3
    X = graph(["a", "b", "c"], {"e": ("a", "b")})
    assert len(connected_components(category_of_elements(X).category)) == 2


@given(st.sampled_from(SMALL_SITES))
def test_components_match_oracle(name):
    C = site_by_name(name)
    assert sorted(map(tuple, map(sorted, connected_components(C)))) == oracles.components(C)


def test_elements_projection_is_functorial():
    X = mset("idempotent", [0, 1, 2], e={0: 0, 1: 0, 2: 2})
    el = category_of_elements(X)
    E = el.category
    assert oracles.table_is_category(E)
    for (g, f), h in E.table.items():
        P = el.projection.on_morphisms
        assert X.site.compose(P[g], P[f]) == P[h]
