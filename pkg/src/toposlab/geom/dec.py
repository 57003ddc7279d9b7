"""The morphism ``E -> Dec(E)`` whose direct image is the decidable coreflection."""
from __future__ import annotations

import functools

from ..decidable import (NoCoreflection, coreflection_candidate, dec_coreflection, dec_objects, dec_reflection,
                         factor_through, injective_actions)
from ..fincat import FinCategory
from ..presheaf.core import Presheaf, PresheafMap, compose, identity
from ..presheaf.exponential import exponential as _exponential
from ..presheaf.limits import product_map
from ..presheaf.omega import classify as _classify, omega
from ..presheaf.subobject import Subobject
from .morphism import Functor, GeomError, GeomMorphism, Target, Transformation


class DecTarget(Target):
    """Decidable presheaves on ``site``, a topos when the coreflection exists.

    Its subobject classifier is the coreflection of the ambient one, and
    classifying maps are the ambient ones factored through that coreflection.
    """

    kind = "dec"

    def __init__(self, site: FinCategory):
        self.site = site
        self.name = f"Dec({site.name})"
        om = omega(site)
        cand = coreflection_candidate(om.presheaf)
        if isinstance(cand, NoCoreflection):
            raise GeomError("Omega has no largest decidable subobject",
                            {"antichain": [u.to_json() for u in cand.antichain]})
        self._beta = cand.inclusion()
        self._omega = self._beta.dom
        top = factor_through(om.top, self._beta)
        neg = factor_through(compose(om.neg, self._beta), self._beta)
        if top is None or neg is None:
            raise GeomError("truth or negation does not factor through the decidable part of Omega")
        self._top, self._neg = top, neg

    def objects(self, per_object: int, total: int | None = None) -> tuple:
        return dec_objects(self.site, per_object, total)

    def contains(self, A: Presheaf) -> bool:
        return A.site == self.site and injective_actions(A)

    @property
    def omega(self) -> Presheaf:
        return self._omega

    @property
    def top(self) -> PresheafMap:
        return self._top

    @property
    def neg(self) -> PresheafMap:
        return self._neg

    def classify(self, u: Subobject) -> PresheafMap:
        chi = factor_through(_classify(u), self._beta)
        if chi is None:
            raise GeomError("classifying map does not factor through the decidable part of Omega")
        return chi

    def exponential(self, A: Presheaf, B: Presheaf) -> tuple[Presheaf, PresheafMap]:
        """The coreflection of the ambient exponential, evaluated through the inclusion."""
        ex = _exponential(A, B)
        cand = coreflection_candidate(ex.presheaf)
        if isinstance(cand, NoCoreflection):
            raise GeomError("exponential has no largest decidable subobject")
        inc = cand.inclusion()
        return inc.dom, compose(ex.ev, product_map(inc, identity(A)))

    def __repr__(self):
        return f"DecTarget({self.site.name})"


@functools.lru_cache(maxsize=None)
def from_dec_coreflection(C: FinCategory, bound: int = 3, total: int | None = None) -> GeomMorphism:
    """Build ``p: E -> Dec(E)``; the coreflection is checked on every presheaf
    with at most ``bound`` elements per object against all decidable ones."""
    tests = dec_objects(C, bound, total)
    from ..presheaf.enumerate import enumerate_presheaves
    for X in enumerate_presheaves(C, bound, total):
        r = dec_coreflection(X, tests)
        if isinstance(r, NoCoreflection):
            raise GeomError("no right adjoint up to bound",
                            {"object": X.to_json(), "reason": r.reason,
                             "antichain": [u.to_json() for u in r.antichain], "witness": r.witness})
    T = DecTarget(C)

    def direct(X: Presheaf) -> Presheaf:
        cand = coreflection_candidate(X)
        if isinstance(cand, NoCoreflection):
            raise GeomError("no largest decidable subobject", {"object": X.to_json()})
        return cand.as_presheaf()

    def beta(X: Presheaf) -> PresheafMap:
        D = P_dir(X)
        return PresheafMap(D, X, {c: {x: x for x in D.carrier[c]} for c in C.objects}, check=False)

    def direct_map(f: PresheafMap) -> PresheafMap:
        g = factor_through(compose(f, beta(f.dom)), beta(f.cod))
        if g is None:
            raise GeomError("a map out of a decidable object leaves the coreflection")
        return g

    def shriek(X: Presheaf) -> Presheaf:
        return dec_reflection(X).quotient

    def sigma(X: Presheaf) -> PresheafMap:
        return dec_reflection(X).unit

    def shriek_map(f: PresheafMap) -> PresheafMap:
        qX, qY = sigma(f.dom), sigma(f.cod)
        comp = {c: {} for c in C.objects}
        for c in C.objects:
            for x in f.dom.carrier[c]:
                r, v = qX.comp[c][x], qY.comp[c][f.comp[c][x]]
                if comp[c].setdefault(r, v) != v:
                    raise GeomError("map does not descend to the decidable reflection")
        return PresheafMap(qX.cod, qY.cod, comp, check=False)

    def tau(A: Presheaf) -> PresheafMap:
        Q = shriek(A)
        if Q != A:
            raise GeomError("decidable object is not its own reflection", {"object": A.to_json()})
        return identity(A)

    P_inv = Functor("incl", lambda A: A, lambda g: g)
    P_dir = Functor("C", direct, direct_map)
    P_shr = Functor("dec_reflect", shriek, shriek_map)
    return GeomMorphism(f"{C.name}->Dec", C, T, P_inv, P_dir,
                        Transformation("alpha", lambda A: identity(A)), Transformation("beta", beta),
                        P_shr, Transformation("sigma", sigma), Transformation("tau", tau),
                        notes={"kind": "dec", "bound": bound})
