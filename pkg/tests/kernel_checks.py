"""Universal properties checked by exhaustive hom-set comparison.

Each function returns a list of problems (empty when the property holds for
every test object).  A universal arrow is verified by showing that the
comparison map on hom-sets is a bijection: injective on the enumerated
hom-set, with matching cardinalities.
"""
from __future__ import annotations

from toposlab.presheaf import (classify, coequalizer, compose, coproduct, equalizer, exponential, hom_count,
                               initial, iter_homs, omega, pairing, product, pullback, pullback_top, terminal)
from toposlab.sublattice import subobjects_of


def _bijective(images, expected: int, what: str) -> list[str]:
    seen = set()
    n = 0
    for key in images:
        n += 1
        if key in seen:
            return [f"{what}: two arrows with the same image"]
        seen.add(key)
    if n != expected:
        return [f"{what}: {n} arrows, expected {expected}"]
    return []


def terminal_initial(C, Zs) -> list[str]:
    bad = []
    one, zero = terminal(C), initial(C)
    for Z in Zs:
        if hom_count(Z, one) != 1:
            bad.append(f"hom(Z, 1) != 1 for {Z.sizes()}")
        if hom_count(zero, Z) != 1:
            bad.append(f"hom(0, Z) != 1 for {Z.sizes()}")
    return bad


def product_up(X, Y, Zs) -> list[str]:
    cone = product(X, Y)
    p, q = cone.legs
    bad = []
    for Z in Zs:
        exp = hom_count(Z, X) * hom_count(Z, Y)
        bad += _bijective(((compose(p, h).code(), compose(q, h).code()) for h in iter_homs(Z, cone.apex)), exp,
                          "product")
        for f in iter_homs(Z, X):
            for g in iter_homs(Z, Y):
                h = pairing(f, g)
                if compose(p, h) != f or compose(q, h) != g:
                    bad.append("pairing does not commute")
                    return bad
    return bad


def coproduct_up(X, Y, Zs) -> list[str]:
    cone = coproduct(X, Y)
    i, j = cone.legs
    bad = []
    for Z in Zs:
        exp = hom_count(X, Z) * hom_count(Y, Z)
        bad += _bijective(((compose(h, i).code(), compose(h, j).code()) for h in iter_homs(cone.apex, Z)), exp,
                          "coproduct")
    return bad


def _legs_agree(f, g, legs):
    return compose(f, legs[0]) == compose(g, legs[1])


def pullback_up(f, g, Zs) -> list[str]:
    cone = pullback(f, g)
    a, b = cone.legs
    if not _legs_agree(f, g, cone.legs):
        return ["pullback square does not commute"]
    bad = []
    for Z in Zs:
        cones = sum(1 for u in iter_homs(Z, f.dom) for v in iter_homs(Z, g.dom) if compose(f, u) == compose(g, v))
        bad += _bijective(((compose(a, h).code(), compose(b, h).code()) for h in iter_homs(Z, cone.apex)), cones,
                          "pullback")
    return bad


def equalizer_up(f, g, Zs) -> list[str]:
    cone = equalizer(f, g)
    e = cone.legs[0]
    if compose(f, e) != compose(g, e):
        return ["equalizer does not equalize"]
    bad = []
    for Z in Zs:
        forks = sum(1 for u in iter_homs(Z, f.dom) if compose(f, u) == compose(g, u))
        bad += _bijective((compose(e, h).code() for h in iter_homs(Z, cone.apex)), forks, "equalizer")
    return bad


def coequalizer_up(f, g, Zs) -> list[str]:
    cone = coequalizer(f, g)
    q = cone.legs[0]
    if compose(q, f) != compose(q, g):
        return ["coequalizer does not coequalize"]
    bad = []
    for Z in Zs:
        forks = sum(1 for u in iter_homs(f.cod, Z) if compose(u, f) == compose(u, g))
        bad += _bijective((compose(h, q).code() for h in iter_homs(cone.apex, Z)), forks, "coequalizer")
    return bad


def exponential_up(X, Y, Zs) -> list[str]:
    ex = exponential(X, Y)
    bad = []
    for Z in Zs:
        P = product(Z, X).apex
        exp = hom_count(P, Y)
        bad += _bijective((ex.uncurry(h).code() for h in iter_homs(Z, ex.presheaf)), exp, "exponential")
        for psi in iter_homs(P, Y):
            if ex.uncurry(ex.curry(Z, psi)) != psi:
                bad.append("curry then uncurry is not the identity")
                return bad
    return bad


def omega_up(X) -> list[str]:
    """``Hom(X, Omega)`` is in bijection with ``Sub(X)`` through pullback of top."""
    om = omega(X.site)
    subs = subobjects_of(X)
    bad = _bijective((pullback_top(chi).key() for chi in iter_homs(X, om.presheaf)), len(subs), "omega")
    for u in subs:
        if pullback_top(classify(u)) != u:
            bad.append(f"round trip fails on {u.to_json()}")
            break
    return bad
