import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from toposlab.fincat import site_by_name
from toposlab.presheaf import Presheaf, enumerate_presheaves

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SMALL_SITES = ("terminal", "parallel_pair", "reflexive_graph", "zmod2", "zmod3", "idempotent", "right_zeros",
               "delta1")


def graph(vertices, edges):
    """An irreflexive graph: ``edges = {name: (source, target)}``."""
    C = site_by_name("parallel_pair")
    return Presheaf(C, {"V": list(vertices), "E": list(edges)},
                    {"s": {e: st_[0] for e, st_ in edges.items()}, "t": {e: st_[1] for e, st_ in edges.items()}})


def rgraph(vertices, edges):
    """A reflexive graph; a loop ``("l", v)`` is added for each vertex."""
    C = site_by_name("reflexive_graph")
    loops = {("l", v): (v, v) for v in vertices}
    allE = {**loops, **edges}
    return Presheaf.from_generators(C, {"V": list(vertices), "E": list(allE)},
                                    {"d0": {e: a for e, (a, b) in allE.items()},
                                     "d1": {e: b for e, (a, b) in allE.items()},
                                     "sigma": {v: ("l", v) for v in vertices}})


def mset(site, elements, **actions):
    C = site_by_name(site)
    return Presheaf.from_generators(C, {"*": list(elements)}, actions)


def objects_of(site, bound=2, total=None):
    return enumerate_presheaves(site_by_name(site), bound, total)


@st.composite
def site_and_object(draw, bound=2, sites=SMALL_SITES):
    name = draw(st.sampled_from(sites))
    return draw(st.sampled_from(objects_of(name, bound)))


@st.composite
def site_and_pair(draw, bound=2, sites=SMALL_SITES):
    name = draw(st.sampled_from(sites))
    xs = objects_of(name, bound)
    return draw(st.sampled_from(xs)), draw(st.sampled_from(xs))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
