"""Enumeration of all presheaves up to isomorphism within size bounds.

Labelled presheaves on carriers ``range(n_c)`` are found by element-level
backtracking on the action of a generating set of morphisms, with forward
propagation through the composition table.  Each solution is reduced to the
lexicographically least relabelling, which serves as the canonical form.
"""
from __future__ import annotations

import functools
import itertools

from ..fincat import FinCategory
from .core import Presheaf, SearchTooLarge


def morphism_generators(C: FinCategory) -> tuple[str, ...]:
    """A minimal-ish set of non-identity morphisms generating all others."""
    nonid = [f for f in C.morphisms if not C.is_identity(f)]
    gens = set(nonid)
    for m in sorted(nonid, key=lambda f: (-len(f), f)):
        rest = gens - {m}
        if m in _closure(C, rest):
            gens = rest
    return tuple(sorted(gens))


def _closure(C, gens):
    out = set(gens)
    changed = True
    while changed:
        changed = False
        for g in list(out):
            for f in list(out):
                if C.src(g) == C.tgt(f):
                    h = C.compose(g, f)
                    if h not in out and not C.is_identity(h):
                        out.add(h)
                        changed = True
    return out


def _labelled(C: FinCategory, sizes: dict):
    """Yield action tables ``{f: tuple}`` for every labelled presheaf with these sizes."""
    morphs = list(C.morphisms)
    gens = morphism_generators(C)
    act = {}
    for f in morphs:
        d = C.tgt(f)
        act[f] = [None] * sizes[d]
    for c in C.objects:
        act[C.id(c)] = list(range(sizes[c]))
    eqs = [(g, f, h) for (g, f), h in C.table.items()]
    # sections first: a choice for g in g.f = id forces f at once
    split = {g: sum(1 for (a, _), h in C.table.items() if a == g and C.is_identity(h)) for g in gens}
    order = sorted(gens, key=lambda g: (-split[g], g))
    variables = [(g, y) for g in order for y in range(sizes[C.tgt(g)])]
    for g in gens:
        if sizes[C.tgt(g)] and not sizes[C.src(g)]:
            return

    def propagate(trail):
        changed = True
        while changed:
            changed = False
            for g, f, h in eqs:
                ag, af, ah = act[g], act[f], act[h]
                for y in range(len(ag)):
                    gy = ag[y]
                    if gy is None:
                        continue
                    v = af[gy]
                    cur = ah[y]
                    if v is None:
                        if cur is not None:
                            af[gy] = cur
                            trail.append((f, gy))
                            changed = True
                    elif cur is None:
                        ah[y] = v
                        trail.append((h, y))
                        changed = True
                    elif cur != v:
                        return False
        return True

    def rec(i):
        while i < len(variables) and act[variables[i][0]][variables[i][1]] is not None:
            i += 1
        if i == len(variables):
            if all(v is not None for f in morphs for v in act[f]):
                yield {f: tuple(act[f]) for f in morphs}
            return
        g, y = variables[i]
        for v in range(sizes[C.src(g)]):
            trail = [(g, y)]
            act[g][y] = v
            if propagate(trail):
                yield from rec(i + 1)
            for h, z in trail:
                act[h][z] = None

    trail0: list = []
    if propagate(trail0):
        yield from rec(0)


def _refine(C: FinCategory, sizes: dict, table: dict) -> dict:
    """Isomorphism-invariant colouring of elements by iterated neighbourhood data."""
    objs = C.objects
    color = {c: [0] * sizes[c] for c in objs}
    n_colors = -1
    while True:
        sig = {}
        for c in objs:
            rows = []
            for x in range(sizes[c]):
                down = tuple(color[C.src(f)][table[f][x]] for f in C.into(c))
                up = tuple(tuple(sorted(color[C.tgt(f)][y] for y, v in enumerate(table[f]) if v == x))
                           for f in C.out_of(c))
                rows.append((color[c][x], down, up))
            sig[c] = rows
        palette = {v: i for i, v in enumerate(sorted({r for c in objs for r in sig[c]}))}
        color = {c: [palette[r] for r in sig[c]] for c in objs}
        if len(palette) == n_colors:
            return color
        n_colors = len(palette)


def _canonical(C: FinCategory, sizes: dict, table: dict):
    """Least relabelled action table among relabellings that sort elements by colour."""
    objs = C.objects
    morphs = list(C.morphisms)
    color = _refine(C, sizes, table)
    per_object = []
    for c in objs:
        cells: dict = {}
        for x in range(sizes[c]):
            cells.setdefault(color[c][x], []).append(x)
        blocks = [cells[k] for k in sorted(cells)]
        per_object.append([list(itertools.chain.from_iterable(p))
                           for p in itertools.product(*(itertools.permutations(b) for b in blocks))])
    best = None
    for orders in itertools.product(*per_object):
        # orders[k][i] = old label placed at new position i
        p = {}
        for c, order in zip(objs, orders):
            q = [0] * len(order)
            for new, old in enumerate(order):
                q[old] = new
            p[c] = q
        code = []
        for f in morphs:
            s, t = C.morphisms[f]
            ps, pt = p[s], p[t]
            a = table[f]
            inv = [0] * len(a)
            for y in range(len(a)):
                inv[pt[y]] = ps[a[y]]
            code.append(tuple(inv))
        code = tuple(code)
        if best is None or code < best:
            best = code
    return (tuple(tuple(sorted(color[c])) for c in objs), best)


def count_labelled(C: FinCategory, sizes: dict) -> int:
    return sum(1 for _ in _labelled(C, sizes))


@functools.lru_cache(maxsize=None)
def enumerate_presheaves(C: FinCategory, per_object: int, total: int | None = None,
                         max_labelled: int = 2_000_000) -> tuple[Presheaf, ...]:
    """All presheaves with at most ``per_object`` elements per object (and at
    most ``total`` elements overall), one per isomorphism class, in a
    deterministic order: by total size, then size vector, then canonical code."""
    objs = C.objects
    found = {}
    seen = 0
    for vec in itertools.product(range(per_object + 1), repeat=len(objs)):
        if total is not None and sum(vec) > total:
            continue
        sizes = dict(zip(objs, vec))
        codes = set()
        for table in _labelled(C, sizes):
            seen += 1
            if seen > max_labelled:
                raise SearchTooLarge(f"presheaves on {C.name}", seen, max_labelled)
            codes.add(_canonical(C, sizes, table))
        for key in codes:
            found[(sum(vec), vec, key)] = (sizes, key[1])
    out = []
    morphs = list(C.morphisms)
    for key in sorted(found):
        sizes, code = found[key]
        carrier = {c: tuple(range(sizes[c])) for c in objs}
        action = {f: {y: code[k][y] for y in range(len(code[k]))} for k, f in enumerate(morphs)}
        out.append(Presheaf(C, carrier, action, check=False))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def presheaves_with_sizes(C: FinCategory, sizes: tuple, max_labelled: int = 2_000_000) -> tuple[Presheaf, ...]:
    """All presheaves whose carrier sizes are exactly ``sizes`` (in object order), up to iso."""
    objs = C.objects
    sz = dict(zip(objs, sizes))
    codes = set()
    seen = 0
    for table in _labelled(C, sz):
        seen += 1
        if seen > max_labelled:
            raise SearchTooLarge(f"presheaves on {C.name} of sizes {sizes}", seen, max_labelled)
        codes.add(_canonical(C, sz, table))
    morphs = list(C.morphisms)
    out = []
    for key in sorted(codes):
        code = key[1]
        carrier = {c: tuple(range(sz[c])) for c in objs}
        action = {f: {y: code[k][y] for y in range(len(code[k]))} for k, f in enumerate(morphs)}
        out.append(Presheaf(C, carrier, action, check=False))
    return tuple(out)
