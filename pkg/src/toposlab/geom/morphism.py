"""Geometric morphisms between finite presheaf toposes given by explicit functors.

Every functor here acts on presheaves and their maps; a "target topos" is
either presheaves on another finite site (``SiteTarget``) or the decidable
presheaves of the source with the coreflection as direct image (``DecTarget``).
Adjunctions are verified by exhibiting the transpose bijection on hom-sets and
both triangle identities, all as exact equalities of maps.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from ..fincat import FinCategory
from ..presheaf import hom as _hom
from ..presheaf.core import (Presheaf, PresheafMap, SearchTooLarge, compose, identity, initial, terminal,
                             yoneda, yoneda_element, yoneda_map)
from ..presheaf.exponential import exponential as _exponential
from ..presheaf.enumerate import enumerate_presheaves, presheaves_with_sizes
from ..presheaf.omega import classify as _classify, omega
from ..presheaf.subobject import Subobject


class GeomError(RuntimeError):
    """A requested adjoint or unit does not exist (with a witness in ``data``)."""

    def __init__(self, msg: str, data: dict | None = None):
        super().__init__(msg)
        self.data = data or {}


def from_code(dom: Presheaf, cod: Presheaf, code) -> PresheafMap:
    """Inverse of :meth:`PresheafMap.code`."""
    return PresheafMap(dom, cod, {c: dict(zip(dom.carrier[c], code[k]))
                                  for k, c in enumerate(dom.site.objects)}, check=False)


class Functor:
    """A functor between presheaf categories, memoised on objects and maps."""

    def __init__(self, name: str, on_obj: Callable, on_map: Callable):
        self.name = name
        self._obj = on_obj
        self._map = on_map
        self._oc: dict = {}
        self._mc: dict = {}

    def __call__(self, X: Presheaf) -> Presheaf:
        r = self._oc.get(X)
        if r is None:
            r = self._oc[X] = self._obj(X)
        return r

    def map(self, f: PresheafMap) -> PresheafMap:
        r = self._mc.get(f)
        if r is None:
            r = self._mc[f] = self._map(f)
        return r

    def __repr__(self):
        return f"Functor({self.name})"


class Transformation:
    """A natural transformation given by its components, memoised."""

    def __init__(self, name: str, fn: Callable):
        self.name = name
        self._fn = fn
        self._c: dict = {}

    def __call__(self, X: Presheaf) -> PresheafMap:
        r = self._c.get(X)
        if r is None:
            r = self._c[X] = self._fn(X)
        return r


def identity_functor(name: str = "id") -> Functor:
    return Functor(name, lambda X: X, lambda f: f)


# -- targets ------------------------------------------------------------------------

class Target:
    kind = "abstract"
    site: FinCategory
    name: str

    def objects(self, per_object: int, total: int | None = None) -> tuple:
        raise NotImplementedError

    def contains(self, A: Presheaf) -> bool:
        raise NotImplementedError

    @property
    def omega(self) -> Presheaf:
        raise NotImplementedError

    @property
    def top(self) -> PresheafMap:
        raise NotImplementedError

    @property
    def neg(self) -> PresheafMap:
        raise NotImplementedError

    def classify(self, u: Subobject) -> PresheafMap:
        raise NotImplementedError

    def exponential(self, A: Presheaf, B: Presheaf) -> tuple[Presheaf, PresheafMap]:
        """``B^A`` in the target with its evaluation ``B^A x A -> B``."""
        raise NotImplementedError

    def terminal(self) -> Presheaf:
        return terminal(self.site)

    def initial(self) -> Presheaf:
        return initial(self.site)

    def is_boolean(self) -> bool:
        """Double negation is the identity on the subobject classifier."""
        nn = compose(self.neg, self.neg)
        return nn == identity(self.omega)

    def top_at(self, c: str):
        return self.top.comp[c][()]


class SiteTarget(Target):
    """Presheaves on a finite site; ``Sets`` is the terminal site."""

    kind = "site"

    def __init__(self, site: FinCategory, name: str | None = None):
        self.site = site
        self.name = name or site.name

    def objects(self, per_object: int, total: int | None = None) -> tuple:
        return enumerate_presheaves(self.site, per_object, total)

    def contains(self, A: Presheaf) -> bool:
        return A.site == self.site

    @property
    def omega(self) -> Presheaf:
        return omega(self.site).presheaf

    @property
    def top(self) -> PresheafMap:
        return omega(self.site).top

    @property
    def neg(self) -> PresheafMap:
        return omega(self.site).neg

    def classify(self, u: Subobject) -> PresheafMap:
        return _classify(u)

    def exponential(self, A: Presheaf, B: Presheaf) -> tuple[Presheaf, PresheafMap]:
        ex = _exponential(A, B)
        return ex.presheaf, ex.ev

    def __repr__(self):
        return f"SiteTarget({self.name})"


# -- the morphism ---------------------------------------------------------------------

@dataclass
class UpperAdjoint:
    functor: Functor
    unit: Transformation      # X -> p^! p_* X
    counit: Transformation    # p_* p^! A -> A


@dataclass(eq=False)
class GeomMorphism:
    """An adjoint string ``p_! -| p^* -| p_* (-| p^!)`` with its units and counits.

    ``alpha: A -> p_* p^* A`` and ``beta: p^* p_* X -> X`` belong to
    ``p^* -| p_*``; ``sigma: X -> p^* p_! X`` and ``tau: p_! p^* A -> A`` to
    ``p_! -| p^*``.  The rightmost adjoint is built on demand from the formula
    ``p^! A (c) = Hom(p_* y(c), A)``.
    """

    name: str
    source: FinCategory
    target: Target
    inverse: Functor
    direct: Functor
    alpha: Transformation
    beta: Transformation
    shriek: Functor | None = None
    sigma: Transformation | None = None
    tau: Transformation | None = None
    notes: dict = field(default_factory=dict)
    _upper: UpperAdjoint | None = None

    def source_objects(self, per_object: int, total: int | None = None) -> tuple:
        return enumerate_presheaves(self.source, per_object, total)

    def target_objects(self, per_object: int, total: int | None = None) -> tuple:
        return self.target.objects(per_object, total)

    @property
    def essential(self) -> bool:
        return self.shriek is not None

    def upper(self) -> UpperAdjoint:
        if self._upper is None:
            self._upper = upper_from_formula(self)
        return self._upper

    def __repr__(self):
        return f"GeomMorphism({self.name})"


def upper_from_formula(p: GeomMorphism) -> UpperAdjoint:
    """Candidate right adjoint of ``p_*``: ``p^! A (c) = Hom(p_* y(c), A)``,
    acting by precomposition with ``p_* y(h)``; elements are map codes."""
    C = p.source
    reps = {c: p.direct(yoneda(C, c)) for c in C.objects}
    rep_maps = {h: p.direct.map(yoneda_map(C, h)) for h in C.morphisms}

    def obj(A: Presheaf) -> Presheaf:
        carrier = {c: [m.code() for m in _hom.iter_homs(reps[c], A)] for c in C.objects}
        action = {}
        for h, (c1, c) in C.morphisms.items():
            action[h] = {phi: compose(from_code(reps[c], A, phi), rep_maps[h]).code() for phi in carrier[c]}
        return Presheaf(C, carrier, action, check=False)

    F = Functor("p^!", obj, None)

    def on_map(g: PresheafMap) -> PresheafMap:
        A, B = g.dom, g.cod
        PA, PB = F(A), F(B)
        return PresheafMap(PA, PB, {c: {phi: compose(g, from_code(reps[c], A, phi)).code()
                                        for phi in PA.carrier[c]} for c in C.objects}, check=False)

    F._map = on_map

    def unit(X: Presheaf) -> PresheafMap:
        T = F(p.direct(X))
        return PresheafMap(X, T, {c: {x: p.direct.map(yoneda_element(X, c, x)).code() for x in X.carrier[c]}
                                  for c in C.objects}, check=False)

    def counit(A: Presheaf) -> PresheafMap:
        PA = F(A)
        u = unit(PA)
        idp = identity(PA)
        for g in _hom.iter_homs(p.direct(PA), A):
            if compose(F.map(g), u) == idp:
                return g
        raise GeomError("no counit: the identity of p^!A has no transpose", {"object": A.to_json()})

    return UpperAdjoint(F, Transformation("eta^!", unit), Transformation("eps^!", counit))


# -- adjunction verification -------------------------------------------------------------

@dataclass
class AdjunctionReport:
    name: str
    status: str                  # "verified", "failed" or "unknown"
    pairs: int = 0
    triangles: int = 0
    failures: list = field(default_factory=list)
    unknown: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == "verified"

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status, "pairs": self.pairs, "triangles": self.triangles}
        if self.failures:
            out["failure"] = self.failures[0]
        if self.unknown:
            out["unknown"] = self.unknown[0]
        return out


def sample_pairs(xs, ys, max_pairs: int | None, seed: int = 0):
    pairs = list(itertools.product(xs, ys))
    if max_pairs is not None and len(pairs) > max_pairs:
        rng = random.Random(seed)
        pairs = rng.sample(pairs, max_pairs)
    return pairs


def verify_adjunction(name: str, left: Functor, right: Functor, unit, counit,
                      left_objs, right_objs, max_pairs: int | None = None, seed: int = 0,
                      stop_at_first: bool = True) -> AdjunctionReport:
    """``left -| right`` with ``unit: A -> right(left(A))`` and ``counit: left(right(X)) -> X``.

    Checks both triangle identities and that ``g |-> right(g) . unit_A`` is a
    bijection ``Hom(left A, X) -> Hom(A, right X)`` for the sampled pairs.
    """
    rep = AdjunctionReport(name, "verified")

    def fail(d):
        rep.failures.append(d)
        rep.status = "failed"

    try:
        for A in left_objs:
            LA = left(A)
            lhs = compose(counit(LA), left.map(unit(A)))
            rep.triangles += 1
            if lhs != identity(LA):
                fail({"triangle": "counit . left(unit)", "object": A.to_json()})
                if stop_at_first:
                    return rep
        for X in right_objs:
            RX = right(X)
            lhs = compose(right.map(counit(X)), unit(RX))
            rep.triangles += 1
            if lhs != identity(RX):
                fail({"triangle": "right(counit) . unit", "object": X.to_json()})
                if stop_at_first:
                    return rep
    except GeomError as exc:
        fail({"missing": str(exc), **exc.data})
        return rep
    for A, X in sample_pairs(left_objs, right_objs, max_pairs, seed):
        try:
            uA = unit(A)
            RX = right(X)
            seen = set()
            n = 0
            for g in _hom.iter_homs(left(A), X):
                n += 1
                t = compose(right.map(g), uA).code()
                if t in seen:
                    fail({"not_injective": True, "left": A.to_json(), "right": X.to_json()})
                    break
                seen.add(t)
            else:
                m = _hom.hom_count(A, RX)
                rep.pairs += 1
                if m != n:
                    fail({"count_mismatch": [n, m], "left": A.to_json(), "right": X.to_json()})
        except SearchTooLarge as exc:
            rep.unknown.append({"left": A.to_json(), "right": X.to_json(), "reason": str(exc)})
            if rep.status == "verified":
                rep.status = "unknown"
        if rep.failures and stop_at_first:
            return rep
    return rep


def fully_faithful(F: Functor, objs, max_pairs: int | None = None, seed: int = 0) -> tuple[bool, dict | None]:
    """``Hom(A, B) -> Hom(FA, FB)`` is bijective on the sampled pairs."""
    for A, B in sample_pairs(objs, objs, max_pairs, seed):
        images = set()
        n = 0
        for g in _hom.iter_homs(A, B):
            n += 1
            images.add(F.map(g).code())
        if len(images) != n:
            return False, {"not_faithful": [A.to_json(), B.to_json()]}
        m = _hom.hom_count(F(A), F(B))
        if m != n:
            return False, {"not_full": [A.to_json(), B.to_json()], "counts": [n, m]}
    return True, None


# -- refuting a right adjoint ---------------------------------------------------------------

@dataclass
class Refutation:
    refuted: bool
    target_object: dict
    sizes: dict
    candidates: int
    witnesses: list

    def to_json(self) -> dict:
        return {"refuted": self.refuted, "target_object": self.target_object, "sizes": self.sizes,
                "candidates": self.candidates, "witnesses": self.witnesses[:3]}


def refute_right_adjoint(p: GeomMorphism, A: Presheaf, tests) -> Refutation:
    """Show that ``p_*`` has no right adjoint by ruling out every possible value at ``A``.

    A right adjoint ``R`` would satisfy ``|R(c)| = |Hom(p_* y(c), A)|`` by Yoneda,
    so all presheaves with exactly those carrier sizes are enumerated; each is
    discarded by an ``X`` in ``tests`` with ``|Hom(X, R)| != |Hom(p_* X, A)|``.
    """
    C = p.source
    sizes = tuple(_hom.hom_count(p.direct(yoneda(C, c)), A) for c in C.objects)
    cands = presheaves_with_sizes(C, sizes)
    wit = []
    for R in cands:
        found = None
        for X in tests:
            a, b = _hom.hom_count(X, R), _hom.hom_count(p.direct(X), A)
            if a != b:
                found = {"candidate": R.to_json(), "test": X.to_json(), "hom_into_candidate": a,
                         "hom_from_direct_image": b}
                break
        if found is None:
            return Refutation(False, A.to_json(), dict(zip(C.objects, sizes)), len(cands), wit)
        wit.append(found)
    return Refutation(True, A.to_json(), dict(zip(C.objects, sizes)), len(cands), wit)
