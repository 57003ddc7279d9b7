"""Enumeration of natural transformations by generator-driven backtracking.

A map ``X -> Y`` is fixed by its values on a generating set of elements of
``X``; every choice is propagated along all restrictions at once, so the search
only branches on generators and prunes on the first inconsistent square.
"""
from __future__ import annotations

import math

from .core import Presheaf, PresheafMap, SearchTooLarge

MAX_ENUM = 10 ** 6
_UNSET = object()


def set_max_enum(n: int) -> None:
    global MAX_ENUM
    if n <= 0:
        raise ValueError("enumeration bound must be positive")
    MAX_ENUM = int(n)


def object_order(C):
    """Objects with more incoming morphisms first; their elements generate more."""
    return sorted(C.objects, key=lambda c: (-len(C.into(c)), c))


def generators(X: Presheaf) -> list[tuple[str, object]]:
    """A generating set of elements, chosen greedily in a fixed order."""
    C = X.site
    covered = set()
    gens = []
    for c in object_order(C):
        for x in X.carrier[c]:
            if (c, x) in covered:
                continue
            gens.append((c, x))
            for f in C.into(c):
                covered.add((C.src(f), X.action[f][x]))
    return gens


def search_size(X: Presheaf, Y: Presheaf) -> int:
    """Naive upper bound on the leaves of the hom search: product over generators.

    The search itself is limited by the number of candidate values it tries,
    which is usually far smaller thanks to propagation."""
    return math.prod(len(Y.carrier[c]) for c, _ in generators(X))


def iter_homs(X: Presheaf, Y: Presheaf, limit: int | None = None, injective: bool = False):
    """Yield every natural transformation ``X -> Y`` in deterministic order."""
    if X.site != Y.site:
        raise ValueError("presheaves live on different sites")
    C = X.site
    gens = generators(X)
    bound = MAX_ENUM if limit is None else limit
    visited = [0]
    if injective and any(len(X.carrier[c]) > len(Y.carrier[c]) for c in C.objects):
        return
    into = {c: [(C.src(f), X.action[f], Y.action[f]) for f in C.into(c)] for c in C.objects}
    assign = {c: {} for c in C.objects}
    used = {c: set() for c in C.objects}
    n = len(gens)

    def rec(i):
        if i == n:
            yield PresheafMap(X, Y, {c: dict(assign[c]) for c in C.objects}, check=False)
            return
        c, x = gens[i]
        visited[0] += len(Y.carrier[c])
        if visited[0] > bound:
            raise SearchTooLarge(f"Hom({X!r}, {Y!r})", visited[0], bound)
        for y in Y.carrier[c]:
            trail = []
            ok = True
            for d, ax, ay in into[c]:
                xd, yd = ax[x], ay[y]
                cur = assign[d].get(xd, _UNSET)
                if cur is _UNSET:
                    if injective:
                        if yd in used[d]:
                            ok = False
                            break
                        used[d].add(yd)
                    assign[d][xd] = yd
                    trail.append((d, xd))
                elif cur != yd:
                    ok = False
                    break
            if ok:
                yield from rec(i + 1)
            for d, xd in trail:
                if injective:
                    used[d].discard(assign[d][xd])
                del assign[d][xd]

    yield from rec(0)


def hom_enumerate(X: Presheaf, Y: Presheaf, limit: int | None = None) -> list[PresheafMap]:
    return list(iter_homs(X, Y, limit))


def hom_count(X: Presheaf, Y: Presheaf, limit: int | None = None) -> int:
    return sum(1 for _ in iter_homs(X, Y, limit))


def hom_with_flags(X: Presheaf, Y: Presheaf, limit: int | None = None) -> list[tuple[PresheafMap, dict]]:
    return [(m, m.flags()) for m in iter_homs(X, Y, limit)]


def find_iso(X: Presheaf, Y: Presheaf, limit: int | None = None) -> PresheafMap | None:
    if X.site != Y.site or X.sizes() != Y.sizes():
        return None
    for m in iter_homs(X, Y, limit, injective=True):
        return m
    return None


def is_isomorphic(X: Presheaf, Y: Presheaf) -> bool:
    return find_iso(X, Y) is not None
