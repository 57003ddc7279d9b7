"""The canonical geometric morphism from presheaves on a finite site to sets.

Sets are presheaves on the terminal site.  ``p^*`` gives constant presheaves,
``p_*`` global sections (tuples over the objects), ``p_!`` the connected
components of the category of elements, each named by its least ``(c, x)``.
"""
from __future__ import annotations

import functools

from ..fincat import FinCategory, ekey, site_by_name
from ..presheaf import hom as _hom
from ..presheaf.core import Presheaf, PresheafMap, constant, terminal
from .morphism import Functor, GeomMorphism, SiteTarget, Transformation

STAR = "*"


@functools.lru_cache(maxsize=None)
def sets_target() -> SiteTarget:
    return SiteTarget(site_by_name("terminal"), name="Sets")


def sets_object(values) -> Presheaf:
    return constant(sets_target().site, values)


def component_reps(X: Presheaf) -> dict:
    """``(c, x) -> (c0, x0)``, the least element of its component in ``el(X)``."""
    C = X.site
    parent = {e: e for e in X.elements()}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for f, (c, d) in C.morphisms.items():
        for y, x in X.action[f].items():
            ra, rb = find((d, y)), find((c, x))
            if ra != rb:
                if ekey(rb) < ekey(ra):
                    ra, rb = rb, ra
                parent[rb] = ra
    return {e: find(e) for e in parent}


def sections(X: Presheaf) -> list[tuple]:
    C = X.site
    return [tuple(m.comp[c][()] for c in C.objects) for m in _hom.iter_homs(terminal(C), X)]


@functools.lru_cache(maxsize=None)
def canonical_to_sets(C: FinCategory) -> GeomMorphism:
    S = sets_target()
    objs = C.objects
    pos = {c: k for k, c in enumerate(objs)}

    def inv(A: Presheaf) -> Presheaf:
        return constant(C, A.carrier[STAR])

    def inv_map(g: PresheafMap) -> PresheafMap:
        return PresheafMap(inv(g.dom), inv(g.cod), {c: dict(g.comp[STAR]) for c in objs}, check=False)

    def direct(X: Presheaf) -> Presheaf:
        return constant(S.site, sections(X))

    def direct_map(f: PresheafMap) -> PresheafMap:
        D, E = direct(f.dom), direct(f.cod)
        return PresheafMap(D, E, {STAR: {s: tuple(f.comp[c][s[pos[c]]] for c in objs)
                                         for s in D.carrier[STAR]}}, check=False)

    def shriek(X: Presheaf) -> Presheaf:
        return constant(S.site, set(component_reps(X).values()))

    def shriek_map(f: PresheafMap) -> PresheafMap:
        rY = component_reps(f.cod)
        D = shriek(f.dom)
        return PresheafMap(D, shriek(f.cod), {STAR: {r: rY[(r[0], f.comp[r[0]][r[1]])]
                                                     for r in D.carrier[STAR]}}, check=False)

    P_inv = Functor("p^*", inv, inv_map)
    P_dir = Functor("p_*", direct, direct_map)
    P_shr = Functor("p_!", shriek, shriek_map)

    def alpha(A: Presheaf) -> PresheafMap:
        return PresheafMap(A, P_dir(P_inv(A)), {STAR: {a: tuple(a for _ in objs) for a in A.carrier[STAR]}},
                           check=False)

    def beta(X: Presheaf) -> PresheafMap:
        D = P_inv(P_dir(X))
        return PresheafMap(D, X, {c: {s: s[pos[c]] for s in D.carrier[c]} for c in objs}, check=False)

    def sigma(X: Presheaf) -> PresheafMap:
        r = component_reps(X)
        return PresheafMap(X, P_inv(P_shr(X)), {c: {x: r[(c, x)] for x in X.carrier[c]} for c in objs},
                           check=False)

    def tau(A: Presheaf) -> PresheafMap:
        D = P_shr(P_inv(A))
        return PresheafMap(D, A, {STAR: {r: r[1] for r in D.carrier[STAR]}}, check=False)

    return GeomMorphism(f"{C.name or 'site'}->Sets", C, S, P_inv, P_dir,
                        Transformation("alpha", alpha), Transformation("beta", beta),
                        P_shr, Transformation("sigma", sigma), Transformation("tau", tau),
                        notes={"kind": "canonical"})
