"""A retraction of a topos onto two of its full subcategories at once.

``p_*`` is checked to be left adjoint to a fully faithful ``p^!`` and right
adjoint to a fully faithful ``p^*``, with the image of ``p^*`` equal to the
decidable objects and the image of ``p^!`` equal to the double-negation
sheaves, and with sheafification restricting to an equivalence between them.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..decidable import is_decidable
from ..fincat import FinCategory
from ..presheaf.core import SearchTooLarge, compose
from .canonical import canonical_to_sets
from .dec import from_dec_coreflection
from .morphism import GeomError, GeomMorphism, fully_faithful, refute_right_adjoint, verify_adjunction
from .subtopos import is_sheaf, sheaf_counit, sheaf_objects, sheafify_functor, sheaf_unit


@dataclass
class Step:
    name: str
    ok: bool | None
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"step": self.name, "ok": self.ok, **({"detail": self.detail} if self.detail else {})}


@dataclass
class UIAOReport:
    morphism: str
    bound: int
    steps: list = field(default_factory=list)
    refutation: dict | None = None

    @property
    def ok(self) -> bool:
        return all(s.ok is True for s in self.steps)

    @property
    def first_failure(self) -> Step | None:
        for s in self.steps:
            if s.ok is not True:
                return s
        return None

    def to_json(self) -> dict:
        out = {"morphism": self.morphism, "bound": self.bound, "ok": self.ok,
               "steps": [s.to_json() for s in self.steps]}
        if self.first_failure is not None:
            out["first_failure"] = self.first_failure.name
        if self.refutation is not None:
            out["refutation"] = self.refutation
        return out


def composite_equivalence(p: GeomMorphism, As, Fs) -> Step:
    """``a . p^*  -|  p_* . incl`` between the base and the sheaves is an adjoint
    equivalence: its unit ``p_*(eta_{p^*A}) . alpha_A`` and counit
    ``eps_F . a(beta_F)`` are invertible, and its triangles hold."""
    a, eta, eps = sheafify_functor(), sheaf_unit(), sheaf_counit()

    def left(A):
        return a(p.inverse(A))

    def left_map(g):
        return a.map(p.inverse.map(g))

    def unit(A):
        return compose(p.direct.map(eta(p.inverse(A))), p.alpha(A))

    def counit(F):
        return compose(eps(F), a.map(p.beta(F)))

    for A in As:
        if not unit(A).is_iso():
            return Step("composite equivalence", False, {"unit_not_iso": A.to_json()})
    for F in Fs:
        if not counit(F).is_iso():
            return Step("composite equivalence", False, {"counit_not_iso": F.to_json()})
    from .morphism import Functor, Transformation
    L = Functor("a.p^*", left, left_map)
    rep = verify_adjunction("a.p^* -| p_*", L, p.direct, Transformation("unit", unit),
                            Transformation("counit", counit), As, Fs)
    return Step("composite equivalence", rep.ok, rep.to_json())


def uiao_verify(site: FinCategory | GeomMorphism, bound: int = 3, via: str = "sets",
                max_pairs: int | None = None, seed: int = 0) -> UIAOReport:
    """Check every ingredient; steps after a missing adjoint are still attempted
    where they make sense so the report shows the whole picture."""
    if isinstance(site, GeomMorphism):
        p = site
    elif via == "sets":
        p = canonical_to_sets(site)
    elif via == "dec":
        try:
            p = from_dec_coreflection(site, bound)
        except GeomError as exc:
            rep = UIAOReport(f"{site.name}->Dec", bound)
            rep.steps.append(Step("decidable coreflection", False, {"reason": str(exc), **exc.data}))
            return rep
    else:
        raise ValueError(f"unknown morphism kind {via!r}")
    rep = UIAOReport(p.name, bound)
    Xs = p.source_objects(bound)
    As = p.target_objects(bound)
    C = p.source

    try:
        r = verify_adjunction("p^* -| p_*", p.inverse, p.direct, p.alpha, p.beta, As, Xs, max_pairs, seed)
        rep.steps.append(Step("adjunction p^* -| p_*", r.ok, r.to_json()))
        ff, wit = fully_faithful(p.inverse, As, max_pairs, seed)
        rep.steps.append(Step("p^* fully faithful", ff, wit or {}))
        bad = [A.to_json() for A in As if not p.alpha(A).is_iso()]
        rep.steps.append(Step("section p_* . p^* = id", not bad, {"alpha_not_iso": bad[0]} if bad else {}))

        up = p.upper()
        r = verify_adjunction("p_* -| p^!", p.direct, up.functor, up.unit, up.counit, Xs, As, max_pairs, seed)
        rep.steps.append(Step("adjunction p_* -| p^!", r.ok, r.to_json()))
        if not r.ok:
            ref = refute_right_adjoint(p, p.target.initial(), Xs)
            rep.refutation = ref.to_json()
            return rep
        ff, wit = fully_faithful(up.functor, As, max_pairs, seed)
        rep.steps.append(Step("p^! fully faithful", ff, wit or {}))
        bad = [A.to_json() for A in As if not up.counit(A).is_iso()]
        rep.steps.append(Step("section p_* . p^! = id", not bad, {"counit_not_iso": bad[0]} if bad else {}))

        # left inclusion: the image of p^* is exactly the decidable objects
        mism = [X.to_json() for X in Xs if is_decidable(X).decidable != p.beta(X).is_iso()]
        rep.steps.append(Step("image of p^* = decidable objects", not mism,
                              {"mismatch": mism[0]} if mism else {"checked": len(Xs)}))

        # right inclusion: the image of p^! is exactly the sheaves
        not_sheaf = [A.to_json() for A in As if not is_sheaf(up.functor(A))]
        Fs = sheaf_objects(C, bound)
        not_codiscrete = [F.to_json() for F in Fs if not up.unit(F).is_iso()]
        ok = not not_sheaf and not not_codiscrete
        detail = {"sheaves": len(Fs)}
        if not_sheaf:
            detail["codiscrete_not_sheaf"] = not_sheaf[0]
        if not_codiscrete:
            detail["sheaf_not_codiscrete"] = not_codiscrete[0]
        rep.steps.append(Step("image of p^! = double-negation sheaves", ok, detail))

        rep.steps.append(composite_equivalence(p, As, Fs))
    except SearchTooLarge as exc:
        rep.steps.append(Step("bounded search", None, {"reason": str(exc)}))
    except GeomError as exc:
        rep.steps.append(Step("construction", False, {"reason": str(exc), **exc.data}))
    return rep
