"""Subobjects of a presheaf as restriction-closed families of subsets."""
from __future__ import annotations

from typing import Iterable, Mapping

from ..fincat import ekey
from .core import Presheaf, PresheafError, PresheafMap


class Subobject:
    """A sub-presheaf of ``ambient``; ``parts[c]`` is a frozenset of elements."""

    __slots__ = ("ambient", "parts", "_hash")

    def __init__(self, ambient: Presheaf, parts: Mapping[str, Iterable], check: bool = True):
        self.ambient = ambient
        self.parts = {c: frozenset(parts.get(c, ())) for c in ambient.site.objects}
        self._hash = None
        if check:
            self.validate()

    def validate(self):
        X = self.ambient
        for c in X.site.objects:
            if not self.parts[c] <= set(X.carrier[c]):
                raise PresheafError(f"subobject part at {c} leaves the carrier")
        for f, (c, d) in X.site.morphisms.items():
            act = X.action[f]
            for y in self.parts[d]:
                if act[y] not in self.parts[c]:
                    raise PresheafError(f"subobject is not closed under {f}")

    @classmethod
    def full(cls, X: Presheaf) -> "Subobject":
        return cls(X, X.carrier, check=False)

    @classmethod
    def empty(cls, X: Presheaf) -> "Subobject":
        return cls(X, {}, check=False)

    @classmethod
    def generated_by(cls, X: Presheaf, elements: Iterable[tuple[str, object]]) -> "Subobject":
        parts: dict[str, set] = {c: set() for c in X.site.objects}
        for c, x in elements:
            for f in X.site.into(c):
                parts[X.site.src(f)].add(X.action[f][x])
        return cls(X, parts, check=False)

    def key(self):
        return tuple(tuple(sorted(self.parts[c], key=ekey)) for c in self.ambient.site.objects)

    def size(self) -> int:
        return sum(len(p) for p in self.parts.values())

    def __contains__(self, item):
        c, x = item
        return x in self.parts[c]

    def __le__(self, other: "Subobject") -> bool:
        return all(self.parts[c] <= other.parts[c] for c in self.parts)

    def __eq__(self, other):
        if not isinstance(other, Subobject):
            return NotImplemented
        return self.ambient == other.ambient and self.parts == other.parts

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ambient, self.key()))
        return self._hash

    def __repr__(self):
        parts = ", ".join(f"{c}:{len(self.parts[c])}" for c in self.ambient.site.objects)
        return f"Subobject({parts} of {self.ambient!r})"

    def is_full(self) -> bool:
        return all(len(self.parts[c]) == len(self.ambient.carrier[c]) for c in self.parts)

    def is_empty(self) -> bool:
        return all(not p for p in self.parts.values())

    def as_presheaf(self) -> Presheaf:
        X = self.ambient
        action = {f: {y: X.action[f][y] for y in self.parts[d]}
                  for f, (c, d) in X.site.morphisms.items()}
        return Presheaf(X.site, self.parts, action, check=False)

    def inclusion(self) -> PresheafMap:
        U = self.as_presheaf()
        return PresheafMap(U, self.ambient, {c: {x: x for x in U.carrier[c]} for c in U.site.objects},
                           check=False)

    def to_json(self) -> dict:
        from ..fincat import fmt
        return {c: [fmt(x) for x in sorted(self.parts[c], key=ekey)] for c in self.ambient.site.objects}


def image(f: PresheafMap) -> Subobject:
    """Pointwise image: the least subobject of the codomain through which ``f`` factors."""
    return Subobject(f.cod, {c: set(m.values()) for c, m in f.comp.items()}, check=False)


def preimage(f: PresheafMap, u: Subobject) -> Subobject:
    return Subobject(f.dom, {c: {x for x, y in m.items() if y in u.parts[c]} for c, m in f.comp.items()},
                     check=False)


def corestrict(f: PresheafMap, u: Subobject) -> PresheafMap:
    """Factor ``f`` through ``u`` (``f`` must land in ``u``)."""
    U = u.as_presheaf()
    for c, m in f.comp.items():
        if not set(m.values()) <= u.parts[c]:
            raise PresheafError("map does not factor through the subobject")
    return PresheafMap(f.dom, U, f.comp, check=False)
