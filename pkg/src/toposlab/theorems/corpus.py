"""The frozen collection of example toposes and the morphisms examined on each."""
from __future__ import annotations

import functools
from dataclasses import dataclass, field

from ..fincat import FinCategory, site_by_name
from ..geom.canonical import canonical_to_sets
from ..geom.dec import from_dec_coreflection
from ..geom.morphism import GeomError, GeomMorphism

CORPUS = ("terminal", "parallel_pair", "reflexive_graph", "zmod2", "zmod3", "idempotent", "right_zeros", "delta1")

LABELS = {
    "terminal": "sets",
    "parallel_pair": "graphs",
    "reflexive_graph": "reflexive graphs",
    "zmod2": "Z/2-sets (finite analogue of N-sets)",
    "zmod3": "Z/3-sets",
    "idempotent": "{1,e}-sets, e idempotent",
    "right_zeros": "{1,e,f}-sets, e and f right zeros",
    "delta1": "1-truncated simplicial sets",
}


@dataclass
class Topos:
    name: str
    site: FinCategory
    bound: int
    morphisms: list = field(default_factory=list)
    dec_failure: dict | None = None        # why E -> Dec(E) could not be built

    @property
    def label(self) -> str:
        return LABELS.get(self.name, self.name)

    def of_kind(self, kind: str) -> list[GeomMorphism]:
        return [p for p in self.morphisms if p.notes.get("kind") == kind]


@functools.lru_cache(maxsize=None)
def load_topos(name: str, bound: int) -> Topos:
    return build_topos(site_by_name(name), bound, name)


def build_topos(C: FinCategory, bound: int, name: str | None = None) -> Topos:
    """The canonical morphism to Sets, plus the one to Dec when the coreflection exists up to ``bound``."""
    T = Topos(name or C.name, C, bound, [canonical_to_sets(C)])
    try:
        T.morphisms.append(from_dec_coreflection(C, bound))
    except GeomError as exc:
        T.dec_failure = {"reason": str(exc), **exc.data}
    return T


def corpus(bound: int, names=CORPUS) -> list[Topos]:
    return [load_topos(n, bound) for n in names]
