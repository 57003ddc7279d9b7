"""Finite categories given by explicit composition tables.

Objects and morphisms are opaque string ids.  Composition is a total table on
composable pairs; every law is checked by enumeration when a category is built.
Convention: ``compose(g, f)`` is ``g after f`` and needs ``src(g) == tgt(f)``.
"""
from __future__ import annotations

import itertools
import json
from typing import Iterable, Mapping


class CategoryError(ValueError):
    """A composition table violates a category law."""


def ekey(x):
    """Total deterministic sort key for element values (ints, strings, tuples)."""
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(ekey(y) for y in x))
    raise TypeError(f"unsupported element {x!r}")


def fmt(x) -> str:
    return repr(x)


class FinCategory:
    """An immutable finite category.

    ``morphisms`` maps a morphism id to ``(source, target)``; ``table`` maps a
    composable pair ``(g, f)`` to the id of ``g . f``.
    """

    __slots__ = ("name", "objects", "morphisms", "identity", "table",
                 "_hom", "_into", "_out", "_sig", "_hash")

    def __init__(self, objects: Iterable[str], morphisms: Mapping[str, tuple[str, str]],
                 identity: Mapping[str, str], table: Mapping[tuple[str, str], str],
                 name: str = "", check: bool = True):
        self.name = name
        self.objects = tuple(sorted(objects))
        self.morphisms = {m: tuple(morphisms[m]) for m in sorted(morphisms)}
        self.identity = {c: identity[c] for c in self.objects} if check else dict(identity)
        self.table = dict(table)
        if check:
            self._validate()
        hom: dict[tuple[str, str], list[str]] = {(a, b): [] for a in self.objects for b in self.objects}
        into: dict[str, list[str]] = {c: [] for c in self.objects}
        out: dict[str, list[str]] = {c: [] for c in self.objects}
        for m, (s, t) in self.morphisms.items():
            hom[(s, t)].append(m)
            into[t].append(m)
            out[s].append(m)
        self._hom = {k: tuple(v) for k, v in hom.items()}
        self._into = {k: tuple(v) for k, v in into.items()}
        self._out = {k: tuple(v) for k, v in out.items()}
        self._sig = (self.objects, tuple(self.morphisms.items()),
                     tuple(sorted(self.identity.items())), tuple(sorted(self.table.items())))
        self._hash = hash(self._sig)

    def _validate(self):
        objs = set(self.objects)
        for m, (s, t) in self.morphisms.items():
            if s not in objs or t not in objs:
                raise CategoryError(f"morphism {m} has unknown endpoint ({s} -> {t})")
        for c in self.objects:
            i = self.identity.get(c)
            if i is None or i not in self.morphisms:
                raise CategoryError(f"missing identity on object {c}")
            if self.morphisms[i] != (c, c):
                raise CategoryError(f"identity {i} of {c} is not an endomorphism of {c}")
        for (g, f), h in self.table.items():
            if g not in self.morphisms or f not in self.morphisms or h not in self.morphisms:
                raise CategoryError(f"composite {g}.{f} = {h} mentions an unknown morphism")
            if self.morphisms[g][0] != self.morphisms[f][1]:
                raise CategoryError(f"{g}.{f} is declared but {g} and {f} are not composable")
            if self.morphisms[h] != (self.morphisms[f][0], self.morphisms[g][1]):
                raise CategoryError(f"composite {g}.{f} = {h} is ill-typed")
        for g, (gs, _) in self.morphisms.items():
            for f, (_, ft) in self.morphisms.items():
                if gs == ft and (g, f) not in self.table:
                    raise CategoryError(f"composite {g}.{f} is missing")
        for f, (s, t) in self.morphisms.items():
            if self.table[(self.identity[t], f)] != f or self.table[(f, self.identity[s])] != f:
                raise CategoryError(f"identity law fails at {f}")
        for (g, f), gf in self.table.items():
            for h in self.morphisms:
                if self.morphisms[h][0] == self.morphisms[g][1]:
                    if self.table[(h, gf)] != self.table[(self.table[(h, g)], f)]:
                        raise CategoryError(f"associativity fails for {h}, {g}, {f}")

    # -- access -----------------------------------------------------------------
    def src(self, f: str) -> str:
        return self.morphisms[f][0]

    def tgt(self, f: str) -> str:
        return self.morphisms[f][1]

    def compose(self, g: str, f: str) -> str:
        return self.table[(g, f)]

    def id(self, c: str) -> str:
        return self.identity[c]

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return self._hom[(a, b)]

    def into(self, c: str) -> tuple[str, ...]:
        """All morphisms with target ``c``."""
        return self._into[c]

    def out_of(self, c: str) -> tuple[str, ...]:
        return self._out[c]

    def is_identity(self, f: str) -> bool:
        return self.identity[self.src(f)] == f

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinCategory):
            return NotImplemented
        return self._hash == other._hash and self._sig == other._sig

    def __hash__(self):
        return self._hash

    def __repr__(self):
        label = self.name or "FinCategory"
        return f"<{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    # -- serialisation ----------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "name": self.name,
            "objects": list(self.objects),
            "morphisms": [{"name": m, "src": s, "tgt": t} for m, (s, t) in self.morphisms.items()],
            "identities": dict(self.identity),
            "compose": [[g, f, h] for (g, f), h in sorted(self.table.items())],
        }


def build_category(spec: Mapping, name: str | None = None) -> FinCategory:
    """Build and validate a category from the site JSON layout."""
    try:
        objects = list(spec["objects"])
        morphisms = {m["name"]: (m["src"], m["tgt"]) for m in spec["morphisms"]}
        identities = dict(spec["identities"])
        table = {(g, f): h for g, f, h in spec["compose"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise CategoryError(f"malformed site description: {exc}") from exc
    return FinCategory(objects, morphisms, identities, table,
                       name=name if name is not None else spec.get("name", ""))


def load_site(path) -> FinCategory:
    with open(path) as fh:
        return build_category(json.load(fh))


def concrete_category(sizes: Mapping[str, int], generators: Mapping[str, tuple[str, str, tuple[int, ...]]],
                      name: str = "") -> FinCategory:
    """Expand generators given as functions between finite sets into a full table.

    ``generators[g] = (src, tgt, images)`` where ``images[i]`` is the image of
    ``i`` in ``range(sizes[tgt])``.  The category is the sub-category of FinSet
    generated by the generators; composites are named ``g.f`` after the first
    word found.
    """
    by_func: dict[tuple[str, str, tuple[int, ...]], str] = {}
    identity = {}
    for c in sorted(sizes):
        key = (c, c, tuple(range(sizes[c])))
        by_func[key] = f"id_{c}"
        identity[c] = f"id_{c}"
    for g in sorted(generators):
        s, t, imgs = generators[g]
        key = (s, t, tuple(imgs))
        if key in by_func:
            raise CategoryError(f"generator {g} duplicates {by_func[key]}")
        by_func[key] = g
    frontier = list(by_func.items())
    while frontier:
        new = []
        for (s1, t1, f1), n1 in list(by_func.items()):
            for (s2, t2, f2), n2 in frontier:
                for (a, b, fa, na), (c, d, fc, nc) in (((s1, t1, f1, n1), (s2, t2, f2, n2)),
                                                         ((s2, t2, f2, n2), (s1, t1, f1, n1))):
                    # g = (c,d,fc), f = (a,b,fa): g . f needs b == c
                    if b != c:
                        continue
                    key = (a, d, tuple(fc[i] for i in fa))
                    if key not in by_func:
                        comp = f"{nc}.{na}"
                        by_func[key] = comp
                        new.append((key, comp))
        frontier = new
    morphisms = {n: (s, t) for (s, t, _), n in by_func.items()}
    func_of = {n: f for (_, _, f), n in by_func.items()}
    table = {}
    for g, (gs, gt) in morphisms.items():
        for f, (fs, ft) in morphisms.items():
            if gs == ft:
                table[(g, f)] = by_func[(fs, gt, tuple(func_of[g][i] for i in func_of[f]))]
    return FinCategory(sizes.keys(), morphisms, identity, table, name=name)


def monoid_category(elements: Iterable[str], unit: str, mult: Mapping[tuple[str, str], str],
                    name: str = "") -> FinCategory:
    """One-object category whose endomorphisms form the given monoid.

    ``mult[(g, f)]`` is the product ``g f``, read as ``g after f``.
    """
    elements = list(elements)
    morphisms = {m: ("*", "*") for m in elements}
    for a in elements:
        for b in elements:
            if (a, b) not in mult:
                raise CategoryError(f"monoid table misses {a}*{b}")
    return FinCategory(["*"], morphisms, {"*": unit}, dict(mult), name=name)


def cyclic_group_table(n: int):
    names = ["1"] + ["g" if k == 1 else f"g{k}" for k in range(1, n)]
    mult = {(names[a], names[b]): names[(a + b) % n] for a in range(n) for b in range(n)}
    return names, mult


def _parallel_pair() -> FinCategory:
    morphisms = {"id_V": ("V", "V"), "id_E": ("E", "E"), "s": ("V", "E"), "t": ("V", "E")}
    table = {("id_V", "id_V"): "id_V", ("id_E", "id_E"): "id_E",
             ("id_E", "s"): "s", ("s", "id_V"): "s", ("id_E", "t"): "t", ("t", "id_V"): "t"}
    return FinCategory(["V", "E"], morphisms, {"V": "id_V", "E": "id_E"}, table, name="parallel_pair")


def _reflexive_graph() -> FinCategory:
    # faithful model: V -> {0}, E -> {0, 1}
    gens = {"d0": ("V", "E", (0,)), "d1": ("V", "E", (1,)), "sigma": ("E", "V", (0, 0))}
    return concrete_category({"V": 1, "E": 2}, gens, name="reflexive_graph")


def _delta_truncated(n: int) -> FinCategory:
    if not 0 <= n <= 2:
        raise CategoryError("delta_truncated supports 0 <= n <= 2")
    objs = [f"[{k}]" for k in range(n + 1)]
    maps = {}
    for m in range(n + 1):
        for k in range(n + 1):
            for f in itertools.product(range(k + 1), repeat=m + 1):
                if all(f[i] <= f[i + 1] for i in range(m)):
                    maps[f"[{m}]>[{k}]:" + "".join(map(str, f))] = (m, k, f)
    morphisms = {name: (f"[{m}]", f"[{k}]") for name, (m, k, _) in maps.items()}
    identity = {f"[{k}]": f"[{k}]>[{k}]:" + "".join(map(str, range(k + 1))) for k in range(n + 1)}
    by_func = {(m, k, f): name for name, (m, k, f) in maps.items()}
    table = {}
    for g, (gm, gk, gf) in maps.items():
        for f, (fm, fk, ff) in maps.items():
            if gm == fk:
                table[(g, f)] = by_func[(fm, gk, tuple(gf[i] for i in ff))]
    return FinCategory(objs, morphisms, identity, table, name=f"delta_truncated({n})")


STANDARD_SITES = ("terminal", "parallel_pair", "reflexive_graph", "monoid", "delta_truncated")


def standard_site(name: str, params=None) -> FinCategory:
    """Return a named site.

    ``monoid`` takes ``params=(elements, unit, mult)``; ``delta_truncated``
    takes ``params=n`` with ``n <= 2``.
    """
    if name == "terminal":
        return FinCategory(["*"], {"id_*": ("*", "*")}, {"*": "id_*"},
                           {("id_*", "id_*"): "id_*"}, name="terminal")
    if name == "parallel_pair":
        return _parallel_pair()
    if name == "reflexive_graph":
        return _reflexive_graph()
    if name == "monoid":
        elements, unit, mult = params
        return monoid_category(elements, unit, mult, name="monoid")
    if name == "delta_truncated":
        return _delta_truncated(1 if params is None else int(params))
    raise CategoryError(f"unknown site {name!r}")


def discrete_category(objects: Iterable[str], name: str = "") -> FinCategory:
    objs = sorted(objects)
    morphisms = {f"id_{c}": (c, c) for c in objs}
    table = {(f"id_{c}", f"id_{c}"): f"id_{c}" for c in objs}
    return FinCategory(objs, morphisms, {c: f"id_{c}" for c in objs}, table, name=name)


class FinFunctor:
    """A functor between finite categories given by object and morphism maps."""

    __slots__ = ("source", "target", "on_objects", "on_morphisms")

    def __init__(self, source: FinCategory, target: FinCategory,
                 on_objects: Mapping[str, str], on_morphisms: Mapping[str, str], check: bool = True):
        self.source = source
        self.target = target
        self.on_objects = dict(on_objects)
        self.on_morphisms = dict(on_morphisms)
        if check:
            self.validate()

    def validate(self):
        S, T = self.source, self.target
        for f, (s, t) in S.morphisms.items():
            Ff = self.on_morphisms[f]
            if T.morphisms[Ff] != (self.on_objects[s], self.on_objects[t]):
                raise CategoryError(f"functor does not preserve endpoints of {f}")
        for c in S.objects:
            if self.on_morphisms[S.id(c)] != T.id(self.on_objects[c]):
                raise CategoryError(f"functor does not preserve the identity of {c}")
        for (g, f), h in S.table.items():
            if T.compose(self.on_morphisms[g], self.on_morphisms[f]) != self.on_morphisms[h]:
                raise CategoryError(f"functor does not preserve {g}.{f}")


class Elements:
    """Category of elements of a presheaf together with its projection."""

    __slots__ = ("category", "projection", "object_of", "element_of")

    def __init__(self, category, projection, object_of, element_of):
        self.category = category
        self.projection = projection
        self.object_of = object_of      # (c, x) -> object id
        self.element_of = element_of    # object id -> (c, x)


def element_id(c: str, x) -> str:
    return f"{c}:{fmt(x)}"


def category_of_elements(P) -> Elements:
    """Objects are pairs ``(c, x)`` with ``x`` in ``P(c)``; a morphism
    ``(c, x) -> (d, y)`` is a site morphism ``f: c -> d`` with ``P(f)(y) = x``."""
    C = P.site
    object_of, element_of = {}, {}
    for c in C.objects:
        for x in P.carrier[c]:
            oid = element_id(c, x)
            object_of[(c, x)] = oid
            element_of[oid] = (c, x)
    morphisms, proj_m, identity = {}, {}, {}
    for f, (c, d) in C.morphisms.items():
        act = P.action[f]
        for y in P.carrier[d]:
            mid = f"{f}@{fmt(y)}"
            morphisms[mid] = (object_of[(c, act[y])], object_of[(d, y)])
            proj_m[mid] = f
    for (c, x), oid in object_of.items():
        identity[oid] = f"{C.id(c)}@{fmt(x)}"
    table = {}
    for g, (gs, gt) in morphisms.items():
        for f, (fs, ft) in morphisms.items():
            if gs == ft:
                _, y = element_of[gt]
                table[(g, f)] = f"{C.compose(proj_m[g], proj_m[f])}@{fmt(y)}"
    E = FinCategory(object_of.values(), morphisms, identity, table,
                    name=f"el({P.site.name})", check=False)
    proj = FinFunctor(E, C, {oid: c for oid, (c, _) in element_of.items()}, proj_m, check=False)
    return Elements(E, proj, object_of, element_of)


def connected_components(C: FinCategory) -> list[tuple[str, ...]]:
    """Finest partition of the objects in which every morphism stays in a block."""
    parent = {c: c for c in C.objects}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for s, t in C.morphisms.values():
        ra, rb = find(s), find(t)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    blocks: dict[str, list[str]] = {}
    for c in C.objects:
        blocks.setdefault(find(c), []).append(c)
    return sorted(tuple(sorted(b)) for b in blocks.values())


def find_isomorphism(C: FinCategory, D: FinCategory) -> FinFunctor | None:
    """Search for an isomorphism of categories; exhaustive only up to 8 objects."""
    if C == D:
        return FinFunctor(C, D, {c: c for c in C.objects}, {m: m for m in C.morphisms}, check=False)
    if len(C.objects) != len(D.objects) or len(C.morphisms) != len(D.morphisms):
        return None
    if len(C.objects) > 8:
        return None
    for perm in itertools.permutations(D.objects):
        omap = dict(zip(C.objects, perm))
        if any(len(C.hom(a, b)) != len(D.hom(omap[a], omap[b])) for a in C.objects for b in C.objects):
            continue
        found = _match_morphisms(C, D, omap)
        if found is not None:
            return FinFunctor(C, D, omap, found, check=False)
    return None


def _match_morphisms(C, D, omap):
    order = list(C.morphisms)
    mmap: dict[str, str] = {}
    used: set[str] = set()

    def consistent():
        for (g, f), h in C.table.items():
            if g in mmap and f in mmap and h in mmap:
                if D.compose(mmap[g], mmap[f]) != mmap[h]:
                    return False
        return True

    def go(i):
        if i == len(order):
            return True
        m = order[i]
        s, t = C.morphisms[m]
        for cand in D.hom(omap[s], omap[t]):
            if cand in used:
                continue
            if C.is_identity(m) != D.is_identity(cand):
                continue
            mmap[m] = cand
            used.add(cand)
            if consistent() and go(i + 1):
                return True
            del mmap[m]
            used.discard(cand)
        return False

    return dict(mmap) if go(0) else None


def _right_zeros_table():
    names = ["1", "e", "f"]
    return names, {(a, b): (a if b == "1" else b) for a in names for b in names}


def _idempotent_table():
    names = ["1", "e"]
    return names, {(a, b): ("1" if a == b == "1" else "e") for a in names for b in names}


_NAMED = {
    "terminal": lambda: standard_site("terminal"),
    "parallel_pair": _parallel_pair,
    "reflexive_graph": _reflexive_graph,
    "zmod2": lambda: monoid_category(*_unit_first(cyclic_group_table(2)), name="zmod2"),
    "zmod3": lambda: monoid_category(*_unit_first(cyclic_group_table(3)), name="zmod3"),
    "idempotent": lambda: monoid_category(*_unit_first(_idempotent_table()), name="idempotent"),
    "right_zeros": lambda: monoid_category(*_unit_first(_right_zeros_table()), name="right_zeros"),
    "delta1": lambda: _rename(_delta_truncated(1), "delta1"),
}


def _unit_first(table):
    names, mult = table
    return names, names[0], mult


def _rename(C: FinCategory, name: str) -> FinCategory:
    C.name = name
    return C


_SITE_CACHE: dict[str, FinCategory] = {}


def named_sites() -> tuple[str, ...]:
    return tuple(_NAMED)


def site_by_name(name: str) -> FinCategory:
    """Resolve a corpus site name (``zmod2``, ``reflexive_graph``, ...); cached."""
    if name not in _NAMED:
        raise CategoryError(f"unknown site {name!r}; known: {', '.join(_NAMED)}")
    if name not in _SITE_CACHE:
        _SITE_CACHE[name] = _NAMED[name]()
    return _SITE_CACHE[name]
