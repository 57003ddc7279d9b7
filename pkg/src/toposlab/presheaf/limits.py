"""Finite limits and colimits, computed pointwise on carriers.

Limit elements are tuples indexed by the diagram nodes; products of two
presheaves therefore have pairs ``(x, y)`` as elements.  Colimit elements are
tagged ``(node, x)`` and a quotient class is named by its least member, taken
from a node without outgoing arrows when the class has one.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..fincat import ekey
from .core import Presheaf, PresheafError, PresheafMap, initial, terminal
from .subobject import Subobject


@dataclass
class Diagram:
    """Nodes are presheaves; edges are ``(i, j, map from node i to node j)``."""

    nodes: list
    edges: list = field(default_factory=list)

    def __post_init__(self):
        for i, j, m in self.edges:
            if m.dom != self.nodes[i] or m.cod != self.nodes[j]:
                raise PresheafError(f"edge {i}->{j} does not match its nodes")


@dataclass
class Cone:
    apex: Presheaf
    legs: list


def _site(diagram: Diagram, site):
    if diagram.nodes:
        return diagram.nodes[0].site
    if site is None:
        raise PresheafError("empty diagram needs an explicit site")
    return site


def limit(diagram: Diagram, site=None) -> Cone:
    C = _site(diagram, site)
    n = len(diagram.nodes)
    carrier = {}
    for c in C.objects:
        elems = []
        for combo in itertools.product(*(X.carrier[c] for X in diagram.nodes)):
            if all(m.comp[c][combo[i]] == combo[j] for i, j, m in diagram.edges):
                elems.append(tuple(combo))
        carrier[c] = elems
    action = {}
    for f, (c, d) in C.morphisms.items():
        acts = [X.action[f] for X in diagram.nodes]
        action[f] = {t: tuple(acts[k][t[k]] for k in range(n)) for t in carrier[d]}
    L = Presheaf(C, carrier, action, check=False)
    legs = [PresheafMap(L, X, {c: {t: t[k] for t in L.carrier[c]} for c in C.objects}, check=False)
            for k, X in enumerate(diagram.nodes)]
    return Cone(L, legs)


def product_many(factors, site=None) -> Cone:
    return limit(Diagram(list(factors)), site)


def product(X: Presheaf, Y: Presheaf) -> Cone:
    return limit(Diagram([X, Y]))


def pairing(f: PresheafMap, g: PresheafMap, P: Presheaf | None = None) -> PresheafMap:
    """``<f, g>: Z -> X x Y``."""
    if P is None:
        P = product(f.cod, g.cod).apex
    return PresheafMap(f.dom, P, {c: {z: (f.comp[c][z], g.comp[c][z]) for z in f.dom.carrier[c]}
                                  for c in f.dom.site.objects}, check=False)


def product_map(f: PresheafMap, g: PresheafMap) -> PresheafMap:
    """``f x g: A x B -> X x Y``."""
    dom = product(f.dom, g.dom).apex
    cod = product(f.cod, g.cod).apex
    return PresheafMap(dom, cod, {c: {(a, b): (f.comp[c][a], g.comp[c][b]) for a, b in dom.carrier[c]}
                                  for c in dom.site.objects}, check=False)


def diagonal(X: Presheaf) -> PresheafMap:
    P = product(X, X).apex
    return PresheafMap(X, P, {c: {x: (x, x) for x in X.carrier[c]} for c in X.site.objects}, check=False)


def diagonal_subobject(X: Presheaf) -> Subobject:
    P = product(X, X).apex
    return Subobject(P, {c: {(x, x) for x in X.carrier[c]} for c in X.site.objects}, check=False)


def pullback(f: PresheafMap, g: PresheafMap) -> Cone:
    """Pullback of the cospan ``X -f-> Z <-g- Y``; elements are pairs."""
    if f.cod != g.cod:
        raise PresheafError("not a cospan")
    X, Y = f.dom, g.dom
    C = X.site
    carrier = {c: [(x, y) for x in X.carrier[c] for y in Y.carrier[c] if f.comp[c][x] == g.comp[c][y]]
               for c in C.objects}
    action = {fm: {(x, y): (X.action[fm][x], Y.action[fm][y]) for x, y in carrier[d]}
              for fm, (c, d) in C.morphisms.items()}
    P = Presheaf(C, carrier, action, check=False)
    p1 = PresheafMap(P, X, {c: {t: t[0] for t in P.carrier[c]} for c in C.objects}, check=False)
    p2 = PresheafMap(P, Y, {c: {t: t[1] for t in P.carrier[c]} for c in C.objects}, check=False)
    return Cone(P, [p1, p2])


def equalizer(f: PresheafMap, g: PresheafMap) -> Cone:
    if f.dom != g.dom or f.cod != g.cod:
        raise PresheafError("not a parallel pair")
    X = f.dom
    u = Subobject(X, {c: {x for x in X.carrier[c] if f.comp[c][x] == g.comp[c][x]} for c in X.site.objects},
                  check=False)
    return Cone(u.as_presheaf(), [u.inclusion()])


# -- colimits -----------------------------------------------------------------

class _UnionFind:
    def __init__(self, items):
        self.parent = {i: i for i in items}

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def colimit(diagram: Diagram, site=None) -> Cone:
    """Returns the colimit with its injections (``Cone.legs`` go into the apex)."""
    C = _site(diagram, site)
    sinks = {i for i in range(len(diagram.nodes))} - {i for i, _, _ in diagram.edges}
    rep = {}
    carrier = {}
    for c in C.objects:
        items = [(i, x) for i, X in enumerate(diagram.nodes) for x in X.carrier[c]]
        uf = _UnionFind(items)
        for i, j, m in diagram.edges:
            for x, y in m.comp[c].items():
                uf.union((i, x), (j, y))
        classes: dict = {}
        for it in items:
            classes.setdefault(uf.find(it), []).append(it)
        for members in classes.values():
            pref = [t for t in members if t[0] in sinks] or members
            r = min(pref, key=ekey)
            for t in members:
                rep[(c, t)] = r
        carrier[c] = sorted({rep[(c, t)] for t in items}, key=ekey)
    action = {}
    for f, (c, d) in C.morphisms.items():
        act = {}
        for r in carrier[d]:
            i, x = r
            act[r] = rep[(c, (i, diagram.nodes[i].action[f][x]))]
        action[f] = act
    Q = Presheaf(C, carrier, action, check=False)
    legs = [PresheafMap(X, Q, {c: {x: rep[(c, (i, x))] for x in X.carrier[c]} for c in C.objects}, check=False)
            for i, X in enumerate(diagram.nodes)]
    return Cone(Q, legs)


def coproduct_many(summands, site=None) -> Cone:
    return colimit(Diagram(list(summands)), site)


def coproduct(X: Presheaf, Y: Presheaf) -> Cone:
    return colimit(Diagram([X, Y]))


def copairing(f: PresheafMap, g: PresheafMap, S: Presheaf | None = None) -> PresheafMap:
    """``[f, g]: X + Y -> Z``."""
    if S is None:
        S = coproduct(f.dom, g.dom).apex
    comp = {}
    for c in S.site.objects:
        comp[c] = {t: (f if t[0] == 0 else g).comp[c][t[1]] for t in S.carrier[c]}
    return PresheafMap(S, f.cod, comp, check=False)


def coequalizer(f: PresheafMap, g: PresheafMap) -> Cone:
    """Quotient of ``Y`` by ``f(x) ~ g(x)``; elements are representatives of ``Y``."""
    if f.dom != g.dom or f.cod != g.cod:
        raise PresheafError("not a parallel pair")
    Y = f.cod
    C = Y.site
    carrier, rep = {}, {}
    for c in C.objects:
        uf = _UnionFind(Y.carrier[c])
        for x in f.dom.carrier[c]:
            uf.union(f.comp[c][x], g.comp[c][x])
        classes: dict = {}
        for y in Y.carrier[c]:
            classes.setdefault(uf.find(y), []).append(y)
        for members in classes.values():
            r = min(members, key=ekey)
            for y in members:
                rep[(c, y)] = r
        carrier[c] = sorted({rep[(c, y)] for y in Y.carrier[c]}, key=ekey)
    action = {fm: {r: rep[(c, Y.action[fm][r])] for r in carrier[d]}
              for fm, (c, d) in C.morphisms.items()}
    Q = Presheaf(C, carrier, action, check=False)
    q = PresheafMap(Y, Q, {c: {y: rep[(c, y)] for y in Y.carrier[c]} for c in C.objects}, check=False)
    return Cone(Q, [q])


def quotient(X: Presheaf, relation: Subobject) -> Cone:
    """Quotient by a congruence given as a subobject of ``X x X``."""
    R = relation.as_presheaf()
    P = relation.ambient
    p1 = PresheafMap(R, X, {c: {t: t[0] for t in R.carrier[c]} for c in P.site.objects}, check=False)
    p2 = PresheafMap(R, X, {c: {t: t[1] for t in R.carrier[c]} for c in P.site.objects}, check=False)
    return coequalizer(p1, p2)


def kernel_pair(f: PresheafMap) -> Subobject:
    X = f.dom
    P = product(X, X).apex
    return Subobject(P, {c: {(a, b) for a, b in P.carrier[c] if f.comp[c][a] == f.comp[c][b]}
                         for c in X.site.objects}, check=False)


__all__ = [
    "Diagram", "Cone", "limit", "product", "product_many", "pairing", "product_map", "diagonal",
    "diagonal_subobject", "pullback", "equalizer", "colimit", "coproduct", "coproduct_many",
    "copairing", "coequalizer", "quotient", "kernel_pair", "terminal", "initial",
]
