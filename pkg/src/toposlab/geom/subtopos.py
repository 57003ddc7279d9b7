"""The double-negation subtopos as a reflective subcategory: sheaves and sheafification."""
from __future__ import annotations

import functools

from ..fincat import FinCategory
from ..presheaf import hom as _hom
from ..presheaf.core import Presheaf, PresheafMap, compose
from ..presheaf.enumerate import enumerate_presheaves
from ..sublattice import Sheafification, negneg_topology, sheaf_status, sheafify
from .morphism import Functor, GeomError, Transformation


@functools.lru_cache(maxsize=4096)
def _sheafification(X: Presheaf) -> Sheafification:
    return sheafify(X, negneg_topology(X.site))


def is_sheaf(X: Presheaf) -> bool:
    return sheaf_status(X, negneg_topology(X.site)).sheaf


@functools.lru_cache(maxsize=None)
def sheaf_objects(C: FinCategory, per_object: int, total: int | None = None) -> tuple[Presheaf, ...]:
    return tuple(X for X in enumerate_presheaves(C, per_object, total) if is_sheaf(X))


def _extend(g: PresheafMap) -> PresheafMap:
    """The unique ``h: aX -> aY`` with ``h . eta_X = eta_Y . g``."""
    sx, sy = _sheafification(g.dom), _sheafification(g.cod)
    target = compose(sy.unit, g)
    for h in _hom.iter_homs(sx.sheaf, sy.sheaf):
        if compose(h, sx.unit) == target:
            return h
    raise GeomError("sheafification is not functorial on this map", {"map": g.to_json()})


def sheafify_functor() -> Functor:
    return Functor("a", lambda X: _sheafification(X).sheaf, _extend)


def sheaf_unit() -> Transformation:
    return Transformation("eta", lambda X: _sheafification(X).unit)


def sheaf_counit() -> Transformation:
    """``a(F) -> F`` for a sheaf ``F``: the inverse of its unit."""
    def eps(F: Presheaf) -> PresheafMap:
        u = _sheafification(F).unit
        if not u.is_iso():
            raise GeomError("not a sheaf: the unit is not invertible", {"object": F.to_json()})
        return u.inverse()
    return Transformation("eps", eps)
