"""Brute-force reference computations.

Everything here works on raw carriers and action tables and avoids the
engine's search code, so agreement with the engine is real evidence.  All of
it is exponential; keep inputs tiny.
"""
from __future__ import annotations

import itertools


def sieves(C, c):
    """Subsets of the arrows into ``c`` closed under precomposition."""
    arrows = list(C.into(c))
    out = []
    for bits in itertools.product((0, 1), repeat=len(arrows)):
        S = {f for f, b in zip(arrows, bits) if b}
        if all(C.compose(f, g) in S for f in S for g in C.into(C.src(f))):
            out.append(frozenset(S))
    return out


def omega_sizes(C):
    return {c: len(sieves(C, c)) for c in C.objects}


def negate(C, c, S):
    """Largest sieve on ``c`` meeting ``S`` only in the empty sieve."""
    return frozenset(f for f in C.into(c)
                     if not any(C.compose(f, g) in S for g in C.into(C.src(f))))


def negneg_fixed(C, c):
    return [S for S in sieves(C, c) if negate(C, c, negate(C, c, S)) == S]


def is_natural(X, Y, comp):
    C = X.site
    for f, (c, d) in C.morphisms.items():
        for y in X.carrier[d]:
            if comp[c][X.action[f][y]] != Y.action[f][comp[d][y]]:
                return False
    return True


def homs(X, Y):
    """Every natural family of functions, as ``{c: {x: y}}`` dicts."""
    C = X.site
    slots = [(c, x) for c in C.objects for x in X.carrier[c]]
    choices = [Y.carrier[c] for c, _ in slots]
    out = []
    for pick in itertools.product(*choices):
        comp = {c: {} for c in C.objects}
        for (c, x), y in zip(slots, pick):
            comp[c][x] = y
        if is_natural(X, Y, comp):
            out.append(comp)
    return out


def subobjects(X):
    """Action-closed subsets of the elements, as frozensets of ``(c, x)``."""
    C = X.site
    elems = [(c, x) for c in C.objects for x in X.carrier[c]]
    out = []
    for bits in itertools.product((0, 1), repeat=len(elems)):
        S = {e for e, b in zip(elems, bits) if b}
        if all((C.src(f), X.action[f][x]) in S for (d, x) in S for f in C.into(d)):
            out.append(frozenset(S))
    return out


def decidable(X):
    """The off-diagonal part of ``X x X`` is closed under the action."""
    C = X.site
    for f, (c, d) in C.morphisms.items():
        a = X.action[f]
        for x, y in itertools.combinations(X.carrier[d], 2):
            if a[x] == a[y]:
                return False
    return True


def components(C):
    parent = {c: c for c in C.objects}

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a
    for f, (s, t) in C.morphisms.items():
        parent[find(s)] = find(t)
    blocks = {}
    for c in C.objects:
        blocks.setdefault(find(c), []).append(c)
    return sorted(tuple(sorted(b)) for b in blocks.values())


def table_is_category(C):
    """Identities are neutral and composition is associative."""
    for f, (s, t) in C.morphisms.items():
        if C.compose(C.id(t), f) != f or C.compose(f, C.id(s)) != f:
            return False
    for (g, f), gf in C.table.items():
        for h in C.out_of(C.tgt(g)):
            if C.compose(C.compose(h, g), f) != C.compose(h, gf):
                return False
    return True


def global_sections(X):
    """Compatible choices of one element per object."""
    C = X.site
    out = []
    for pick in itertools.product(*(X.carrier[c] for c in C.objects)):
        sec = dict(zip(C.objects, pick))
        if all(X.action[f][sec[d]] == sec[c] for f, (c, d) in C.morphisms.items()):
            out.append(sec)
    return out


def orbit_count(X):
    """Connected components of the category of elements."""
    C = X.site
    elems = [(c, x) for c in C.objects for x in X.carrier[c]]
    parent = {e: e for e in elems}

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a
    for f, (c, d) in C.morphisms.items():
        for y in X.carrier[d]:
            parent[find((d, y))] = find((c, X.action[f][y]))
    return len({find(e) for e in elems})


def pointwise_product_sizes(X, Y):
    return tuple(len(X.carrier[c]) * len(Y.carrier[c]) for c in X.site.objects)


def exp_sizes(X, Y):
    """``|Y^X (c)| = |Hom(y(c) x X, Y)|`` counted by brute force."""
    from toposlab.presheaf.core import yoneda
    from toposlab.presheaf.limits import product
    return tuple(len(homs(product(yoneda(X.site, c), X).apex, Y)) for c in X.site.objects)


def largest_decidable_sub(X):
    """Brute-force coreflection candidate: the decidable subobjects and their maxima."""
    from toposlab.presheaf.subobject import Subobject
    C = X.site
    decs = []
    for S in subobjects(X):
        parts = {c: {x for (d, x) in S if d == c} for c in C.objects}
        if decidable(Subobject(X, parts, check=False).as_presheaf()):
            decs.append(S)
    maxi = [S for S in decs if not any(S < T for T in decs)]
    return maxi
