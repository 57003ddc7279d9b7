"""The subobject classifier: sieves, truth values, negation and classifying maps."""
from __future__ import annotations

import functools
from dataclasses import dataclass

from ..fincat import FinCategory
from .core import Presheaf, PresheafMap, terminal
from .limits import product
from .subobject import Subobject


def generated_sieve(C: FinCategory, fs) -> frozenset:
    """Smallest sieve containing the morphisms ``fs`` (all with one target)."""
    out = set()
    for f in fs:
        for g in C.into(C.src(f)):
            out.add(C.compose(f, g))
    return frozenset(out)


@functools.lru_cache(maxsize=None)
def sieves(C: FinCategory, c: str) -> tuple[tuple[str, ...], ...]:
    """All sieves on ``c`` as sorted tuples of morphism ids."""
    into = C.into(c)
    principal = {f: generated_sieve(C, [f]) for f in into}
    found = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for S in frontier:
            for f in into:
                if f not in S:
                    T = S | principal[f]
                    if T not in found:
                        found.add(T)
                        nxt.append(T)
        frontier = nxt
    return tuple(sorted(tuple(sorted(S)) for S in found))


def is_sieve(C: FinCategory, c: str, S) -> bool:
    S = set(S)
    return all(C.tgt(f) == c for f in S) and all(C.compose(f, g) in S for f in S for g in C.into(C.src(f)))


def pull_sieve(C: FinCategory, f: str, S) -> tuple[str, ...]:
    """``f*S = {g | f . g in S}`` for ``f: c' -> c`` and a sieve ``S`` on ``c``."""
    S = set(S)
    return tuple(sorted(g for g in C.into(C.src(f)) if C.compose(f, g) in S))


def negate_sieve(C: FinCategory, c: str, S) -> tuple[str, ...]:
    """Largest sieve on ``c`` disjoint from ``S``."""
    S = set(S)
    return tuple(sorted(g for g in C.into(c) if not any(C.compose(g, h) in S for h in C.into(C.src(g)))))


@dataclass
class OmegaData:
    site: FinCategory
    presheaf: Presheaf
    top: PresheafMap       # 1 -> Omega
    bottom: PresheafMap    # 1 -> Omega
    neg: PresheafMap       # Omega -> Omega
    meet: PresheafMap      # Omega x Omega -> Omega

    def top_at(self, c: str):
        return self.top.comp[c][()]

    def bottom_at(self, c: str):
        return self.bottom.comp[c][()]


@functools.lru_cache(maxsize=None)
def omega(C: FinCategory) -> OmegaData:
    carrier = {c: sieves(C, c) for c in C.objects}
    action = {f: {S: pull_sieve(C, f, S) for S in carrier[d]} for f, (c, d) in C.morphisms.items()}
    Om = Presheaf(C, carrier, action, check=False)
    one = terminal(C)
    top = PresheafMap(one, Om, {c: {(): tuple(sorted(C.into(c)))} for c in C.objects}, check=False)
    bot = PresheafMap(one, Om, {c: {(): ()} for c in C.objects}, check=False)
    neg = PresheafMap(Om, Om, {c: {S: negate_sieve(C, c, S) for S in carrier[c]} for c in C.objects},
                      check=False)
    P = product(Om, Om).apex
    meet = PresheafMap(P, Om, {c: {(S, T): tuple(sorted(set(S) & set(T))) for S, T in P.carrier[c]}
                               for c in C.objects}, check=False)
    return OmegaData(C, Om, top, bot, neg, meet)


def classify(u: Subobject) -> PresheafMap:
    """``chi_u(x)`` at ``c`` is the sieve of ``f: c' -> c`` with ``X(f)(x)`` in ``u``."""
    X = u.ambient
    C = X.site
    Om = omega(C).presheaf
    comp = {}
    for c in C.objects:
        into = C.into(c)
        comp[c] = {x: tuple(sorted(f for f in into if X.action[f][x] in u.parts[C.src(f)]))
                   for x in X.carrier[c]}
    return PresheafMap(X, Om, comp, check=False)


def pullback_top(chi: PresheafMap) -> Subobject:
    """The subobject classified by ``chi: X -> Omega``."""
    C = chi.dom.site
    om = omega(C)
    return Subobject(chi.dom, {c: {x for x, S in chi.comp[c].items() if S == om.top_at(c)}
                               for c in C.objects}, check=False)
