"""Presheaves on a finite category and natural transformations between them."""
from __future__ import annotations

from typing import Iterable, Mapping

from ..fincat import FinCategory, ekey, fmt


class PresheafError(ValueError):
    """Invalid presheaf or map data (a broken functoriality or naturality square)."""


class SearchTooLarge(RuntimeError):
    """An enumeration would exceed the configured bound."""

    def __init__(self, what: str, size: int, bound: int):
        super().__init__(f"search too large: {what} needs {size} candidates, bound is {bound}")
        self.what, self.size, self.bound = what, size, bound


def _sorted(xs: Iterable) -> tuple:
    return tuple(sorted(set(xs), key=ekey))


class Presheaf:
    """A contravariant functor ``site -> FinSet``.

    ``carrier[c]`` is a sorted tuple; ``action[f]`` for ``f: c -> d`` is a dict
    sending each element of ``carrier[d]`` to its restriction in ``carrier[c]``.
    """

    __slots__ = ("site", "carrier", "action", "_sig", "_hash", "_size")

    def __init__(self, site: FinCategory, carrier: Mapping[str, Iterable],
                 action: Mapping[str, Mapping], check: bool = True):
        self.site = site
        self.carrier = {c: _sorted(carrier.get(c, ())) for c in site.objects}
        act = {}
        for f, (c, d) in site.morphisms.items():
            if f in action:
                act[f] = dict(action[f])
            elif site.is_identity(f):
                act[f] = {x: x for x in self.carrier[d]}
            else:
                raise PresheafError(f"no action given for morphism {f}")
        self.action = act
        self._sig = None
        self._hash = None
        self._size = sum(len(v) for v in self.carrier.values())
        if check:
            self.validate()

    @classmethod
    def from_generators(cls, site: FinCategory, carrier, action, check: bool = True) -> "Presheaf":
        """Fill in the action of composite morphisms from the given ones."""
        act = {f: dict(v) for f, v in action.items()}
        for c in site.objects:
            i = site.id(c)
            act.setdefault(i, {x: x for x in carrier.get(c, ())})
        for f, (c, d) in site.morphisms.items():
            if not carrier.get(d):
                act.setdefault(f, {})
        changed = True
        while changed:
            changed = False
            for (g, f), h in site.table.items():
                if h not in act and g in act and f in act:
                    ag, af = act[g], act[f]
                    bad = [x for x in ag if ag[x] not in af]
                    if bad:
                        raise PresheafError(f"action of {g} sends {fmt(bad[0])} outside the domain of {f}")
                    act[h] = {x: af[ag[x]] for x in ag}
                    changed = True
        missing = [f for f in site.morphisms if f not in act]
        if missing:
            raise PresheafError(f"action of {missing[0]} is not determined by the given morphisms")
        return cls(site, carrier, act, check=check)

    def validate(self):
        S = self.site
        for f, (c, d) in S.morphisms.items():
            a = self.action[f]
            if set(a) != set(self.carrier[d]):
                raise PresheafError(f"action of {f} is not defined on exactly {fmt(d)}-elements")
            cs = set(self.carrier[c])
            for y, x in a.items():
                if x not in cs:
                    raise PresheafError(f"action of {f} sends {fmt(y)} outside the carrier at {c}")
            if S.is_identity(f) and any(x != y for y, x in a.items()):
                raise PresheafError(f"identity {f} acts non-trivially")
        for (g, f), h in S.table.items():
            ag, af, ah = self.action[g], self.action[f], self.action[h]
            for y in ag:
                if af[ag[y]] != ah[y]:
                    raise PresheafError(
                        f"broken square: X({h}) != X({f}) X({g}) at element {fmt(y)}")

    def restrict(self, f: str, y):
        return self.action[f][y]

    def size(self) -> int:
        return self._size

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(self.carrier[c]) for c in self.site.objects)

    def elements(self):
        """All ``(object, element)`` pairs in deterministic order."""
        return [(c, x) for c in self.site.objects for x in self.carrier[c]]

    def is_empty(self) -> bool:
        return self._size == 0

    def signature(self):
        if self._sig is None:
            S = self.site
            self._sig = (tuple(self.carrier[c] for c in S.objects),
                         tuple(tuple(self.action[f][y] for y in self.carrier[S.tgt(f)])
                               for f in S.morphisms))
        return self._sig

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Presheaf):
            return NotImplemented
        return self.site == other.site and self.signature() == other.signature()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.site, self.signature()))
        return self._hash

    def __repr__(self):
        parts = ", ".join(f"{c}:{len(self.carrier[c])}" for c in self.site.objects)
        return f"Presheaf({self.site.name}; {parts})"

    def to_json(self, inline_site: bool = False) -> dict:
        S = self.site
        return {
            "site": S.to_json() if inline_site or not S.name else S.name,
            "carrier": {c: [fmt(x) for x in self.carrier[c]] for c in S.objects},
            "action": {f: {fmt(y): fmt(x) for y, x in self.action[f].items()}
                       for f in S.morphisms if not S.is_identity(f)},
        }


class PresheafMap:
    """A natural transformation; ``comp[c]`` is a dict ``X(c) -> Y(c)``."""

    __slots__ = ("dom", "cod", "comp", "_hash", "_code")

    def __init__(self, dom: Presheaf, cod: Presheaf, comp: Mapping[str, Mapping], check: bool = True):
        if dom.site != cod.site:
            raise PresheafError("map between presheaves on different sites")
        self.dom = dom
        self.cod = cod
        self.comp = {c: dict(comp.get(c, {})) for c in dom.site.objects}
        self._hash = None
        self._code = None
        if check:
            self.validate()

    def validate(self):
        X, Y, S = self.dom, self.cod, self.dom.site
        for c in S.objects:
            k = self.comp[c]
            if set(k) != set(X.carrier[c]):
                raise PresheafError(f"component at {c} is not total on the domain")
            ys = set(Y.carrier[c])
            if any(v not in ys for v in k.values()):
                raise PresheafError(f"component at {c} leaves the codomain")
        for f, (c, d) in S.morphisms.items():
            ax, ay = X.action[f], Y.action[f]
            kc, kd = self.comp[c], self.comp[d]
            for x in X.carrier[d]:
                if kc[ax[x]] != ay[kd[x]]:
                    raise PresheafError(f"naturality square for {f} fails at {fmt(x)}")

    def __call__(self, c: str, x):
        return self.comp[c][x]

    def code(self) -> tuple:
        """Images listed in domain order; a canonical, sortable encoding."""
        if self._code is None:
            X = self.dom
            self._code = tuple(tuple(self.comp[c][x] for x in X.carrier[c]) for c in X.site.objects)
        return self._code

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, PresheafMap):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.code() == other.code()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dom, self.cod, self.code()))
        return self._hash

    def __repr__(self):
        return f"PresheafMap({self.dom!r} -> {self.cod!r})"

    def __matmul__(self, other: "PresheafMap") -> "PresheafMap":
        return compose(self, other)

    def is_monic(self) -> bool:
        return all(len(set(k.values())) == len(k) for k in self.comp.values())

    def is_epic(self) -> bool:
        return all(set(self.comp[c].values()) == set(self.cod.carrier[c]) for c in self.comp)

    def is_iso(self) -> bool:
        return self.is_monic() and self.is_epic()

    def inverse(self) -> "PresheafMap":
        if not self.is_iso():
            raise PresheafError("map is not invertible")
        return PresheafMap(self.cod, self.dom,
                           {c: {v: k for k, v in m.items()} for c, m in self.comp.items()}, check=False)

    def flags(self) -> dict:
        return {"monic": self.is_monic(), "epic": self.is_epic(), "iso": self.is_iso()}

    def to_json(self) -> dict:
        return {c: {fmt(x): fmt(y) for x, y in m.items()} for c, m in self.comp.items()}


def compose(g: PresheafMap, f: PresheafMap) -> PresheafMap:
    """``g . f``."""
    if f.cod != g.dom:
        raise PresheafError("maps are not composable")
    return PresheafMap(f.dom, g.cod, {c: {x: g.comp[c][y] for x, y in f.comp[c].items()}
                                      for c in f.dom.site.objects}, check=False)


def compose_all(*maps: PresheafMap) -> PresheafMap:
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = compose(m, out)
    return out


def identity(X: Presheaf) -> PresheafMap:
    return PresheafMap(X, X, {c: {x: x for x in X.carrier[c]} for c in X.site.objects}, check=False)


def map_from_function(X: Presheaf, Y: Presheaf, fn, check: bool = False) -> PresheafMap:
    """Build ``X -> Y`` from ``fn(c, x)``."""
    return PresheafMap(X, Y, {c: {x: fn(c, x) for x in X.carrier[c]} for c in X.site.objects}, check=check)


def yoneda(C: FinCategory, c: str) -> Presheaf:
    """``Hom(-, c)`` acting by precomposition."""
    if c not in C.objects:
        raise PresheafError(f"unknown object {c!r}")
    carrier = {d: C.hom(d, c) for d in C.objects}
    action = {}
    for f, (a, b) in C.morphisms.items():
        action[f] = {g: C.compose(g, f) for g in carrier[b]}
    return Presheaf(C, carrier, action, check=False)


def yoneda_map(C: FinCategory, h: str) -> PresheafMap:
    """``y(h): y(c) -> y(d)`` for ``h: c -> d`` (postcomposition)."""
    c, d = C.morphisms[h]
    yc, yd = yoneda(C, c), yoneda(C, d)
    return PresheafMap(yc, yd, {e: {g: C.compose(h, g) for g in yc.carrier[e]} for e in C.objects}, check=False)


def yoneda_element(X: Presheaf, c: str, x) -> PresheafMap:
    """The map ``y(c) -> X`` classifying ``x`` in ``X(c)``."""
    C = X.site
    yc = yoneda(C, c)
    return PresheafMap(yc, X, {d: {g: X.action[g][x] for g in yc.carrier[d]} for d in C.objects}, check=False)


def constant(C: FinCategory, values: Iterable) -> Presheaf:
    vals = _sorted(values)
    return Presheaf(C, {c: vals for c in C.objects},
                    {f: {v: v for v in vals} for f in C.morphisms}, check=False)


def terminal(C: FinCategory) -> Presheaf:
    """The terminal presheaf; its unique element is ``()`` everywhere."""
    return constant(C, [()])


def initial(C: FinCategory) -> Presheaf:
    return constant(C, [])


def to_terminal(X: Presheaf) -> PresheafMap:
    T = terminal(X.site)
    return PresheafMap(X, T, {c: {x: () for x in X.carrier[c]} for c in X.site.objects}, check=False)


def from_initial(X: Presheaf) -> PresheafMap:
    return PresheafMap(initial(X.site), X, {}, check=False)


def global_element(X: Presheaf, section: Mapping[str, object]) -> PresheafMap:
    """The map ``1 -> X`` picking ``section[c]`` at each object."""
    return PresheafMap(terminal(X.site), X, {c: {(): section[c]} for c in X.site.objects})
