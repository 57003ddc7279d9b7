"""Slicing a geometric morphism over an object of its base.

An object ``x: X -> P`` of ``E/P`` is a presheaf on the category of elements
of ``P``: its fibre over ``(c, p)`` is ``{z in X(c) : x(z) = p}``.  ``down``
goes from arrows into ``P`` to presheaves on ``el(P)`` and ``up`` goes back,
tagging elements by the point they lie over.  The sliced adjoints are the
usual composites, transported along these two constructions.
"""
from __future__ import annotations

import functools

from ..fincat import Elements, category_of_elements, fmt
from ..presheaf.core import Presheaf, PresheafMap, compose
from .morphism import Functor, GeomError, GeomMorphism, SiteTarget, Transformation


@functools.lru_cache(maxsize=256)
def elements_of(P: Presheaf) -> Elements:
    return category_of_elements(P)


def down(x: PresheafMap) -> Presheaf:
    """``x: X -> P`` as a presheaf on ``el(P)``; elements keep their raw names."""
    X, P = x.dom, x.cod
    el = elements_of(P)
    E = el.category
    carrier = {}
    for oid, (c, p) in el.element_of.items():
        carrier[oid] = [z for z in X.carrier[c] if x.comp[c][z] == p]
    action = {}
    for mid in E.morphisms:
        f = el.projection.on_morphisms[mid]
        d_oid = E.tgt(mid)
        action[mid] = {z: X.action[f][z] for z in carrier[d_oid]}
    return Presheaf(E, carrier, action, check=False)


def down_map(g: PresheafMap, x: PresheafMap, x2: PresheafMap) -> PresheafMap:
    """``g: X -> X'`` over ``P`` (``x2 . g = x``) as a map of presheaves on ``el(P)``."""
    D, D2 = down(x), down(x2)
    el = elements_of(x.cod)
    comp = {oid: {z: g.comp[c][z] for z in D.carrier[oid]} for oid, (c, _) in el.element_of.items()}
    return PresheafMap(D, D2, comp, check=False)


def up(Y: Presheaf, P: Presheaf) -> PresheafMap:
    """A presheaf on ``el(P)`` as an arrow into ``P``; elements become ``(p, z)``."""
    el = elements_of(P)
    C = P.site
    carrier = {c: [] for c in C.objects}
    for oid, (c, p) in el.element_of.items():
        carrier[c].extend((p, z) for z in Y.carrier[oid])
    action = {}
    for f, (c, d) in C.morphisms.items():
        act = {}
        for p, z in carrier[d]:
            mid = f"{f}@{fmt(p)}"
            act[(p, z)] = (P.action[f][p], Y.action[mid][z])
        action[f] = act
    X = Presheaf(C, carrier, action, check=False)
    return PresheafMap(X, P, {c: {t: t[0] for t in X.carrier[c]} for c in C.objects}, check=False)


def up_map(h: PresheafMap, P: Presheaf) -> PresheafMap:
    a, a2 = up(h.dom, P), up(h.cod, P)
    el = elements_of(P)
    C = P.site
    comp = {c: {} for c in C.objects}
    for oid, (c, p) in el.element_of.items():
        for z in h.dom.carrier[oid]:
            comp[c][(p, z)] = (p, h.comp[oid][z])
    return PresheafMap(a.dom, a2.dom, comp, check=False)


def tag_iso(Y: Presheaf, P: Presheaf) -> PresheafMap:
    """``Y -> down(up(Y))``, ``z |-> (p, z)``."""
    el = elements_of(P)
    D = down(up(Y, P))
    return PresheafMap(Y, D, {oid: {z: (el.element_of[oid][1], z) for z in Y.carrier[oid]}
                              for oid in Y.site.objects}, check=False)


def untag_iso(x: PresheafMap) -> PresheafMap:
    """``up(down(x)) -> X``, ``(p, z) |-> z``; it lies over ``P``."""
    a = up(down(x), x.cod)
    return PresheafMap(a.dom, x.dom, {c: {t: t[1] for t in a.dom.carrier[c]} for c in x.dom.site.objects},
                       check=False)


def slice(p: GeomMorphism, B: Presheaf) -> GeomMorphism:
    """``p/B: E/p^*B -> S/B`` with both slices realised as presheaf toposes
    on categories of elements.  Requires ``alpha_B`` invertible (``p`` connected)."""
    if not isinstance(p.target, SiteTarget):
        raise GeomError("slicing is implemented for morphisms into a presheaf topos")
    PB = p.inverse(B)
    aB = p.alpha(B)
    if not aB.is_iso():
        raise GeomError("not connected: alpha_B is not invertible", {"object": B.to_json()})
    aB_inv = aB.inverse()
    tau_B = p.tau(B) if p.essential else None
    S_site = elements_of(B).category
    E_site = elements_of(PB).category
    T = SiteTarget(S_site, name=f"{p.target.name}/{_fmt_obj(B)}")

    def inv_arrow(Y):
        a = up(Y, B)
        return a, p.inverse.map(a)

    def inv(Y):
        return down(inv_arrow(Y)[1])

    def inv_map(h):
        _, pa = inv_arrow(h.dom)
        _, pa2 = inv_arrow(h.cod)
        return down_map(p.inverse.map(up_map(h, B)), pa, pa2)

    def dir_arrow(Z):
        x = up(Z, PB)
        return x, compose(aB_inv, p.direct.map(x))

    def direct(Z):
        return down(dir_arrow(Z)[1])

    def direct_map(h):
        _, b = dir_arrow(h.dom)
        _, b2 = dir_arrow(h.cod)
        return down_map(p.direct.map(up_map(h, PB)), b, b2)

    def shr_arrow(Z):
        x = up(Z, PB)
        return x, compose(tau_B, p.shriek.map(x))

    def shriek(Z):
        return down(shr_arrow(Z)[1])

    def shriek_map(h):
        _, b = shr_arrow(h.dom)
        _, b2 = shr_arrow(h.cod)
        return down_map(p.shriek.map(up_map(h, PB)), b, b2)

    Q_inv = Functor("(p/B)^*", inv, inv_map)
    Q_dir = Functor("(p/B)_*", direct, direct_map)
    Q_shr = Functor("(p/B)_!", shriek, shriek_map) if p.essential else None

    def alpha(Y):
        a, pa = inv_arrow(Y)
        V = down(pa)
        u = untag_iso(pa)                     # up(V) -> p^*A
        g = compose(p.direct.map(u.inverse()), p.alpha(a.dom))
        _, b = dir_arrow(V)
        return compose(down_map(g, a, b), tag_iso(Y, B))

    def beta(Z):
        x, b = dir_arrow(Z)
        W = down(b)
        u = untag_iso(b)                      # up(W) -> p_*X
        _, pa = inv_arrow(W)
        g = compose(p.beta(x.dom), p.inverse.map(u))
        return compose(tag_iso(Z, PB).inverse(), down_map(g, pa, x))

    def sigma(Z):
        x, b = shr_arrow(Z)
        W = down(b)
        u = untag_iso(b)                      # up(W) -> p_!X
        _, pa = inv_arrow(W)
        g = compose(p.inverse.map(u.inverse()), p.sigma(x.dom))
        return compose(down_map(g, x, pa), tag_iso(Z, PB))

    def tau(Y):
        a, pa = inv_arrow(Y)
        V = down(pa)
        u = untag_iso(pa)                     # up(V) -> p^*A
        _, b = shr_arrow(V)
        g = compose(p.tau(a.dom), p.shriek.map(u))
        return compose(tag_iso(Y, B).inverse(), down_map(g, b, a))

    return GeomMorphism(f"{p.name}/{_fmt_obj(B)}", E_site, T, Q_inv, Q_dir,
                        Transformation("alpha", alpha), Transformation("beta", beta),
                        Q_shr, Transformation("sigma", sigma) if p.essential else None,
                        Transformation("tau", tau) if p.essential else None,
                        notes={**p.notes, "sliced_over": B.to_json(), "base": p.name})


def _fmt_obj(B: Presheaf) -> str:
    return "[" + ",".join(f"{c}:{len(B.carrier[c])}" for c in B.site.objects) + "]"
