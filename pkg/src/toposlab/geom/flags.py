"""Properties of a geometric morphism, decided on objects up to a size bound.

Each flag is ``True``, ``False`` (with a witness) or ``None`` when a search
hit the enumeration bound.  Adjunctions are checked by exhibiting transposes
(see :func:`verify_adjunction`), never by counting alone.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..presheaf import hom as _hom
from ..presheaf.core import Presheaf, PresheafMap, SearchTooLarge, compose, terminal
from ..presheaf.exponential import exponential
from ..presheaf.limits import pairing, product
from ..presheaf.subobject import Subobject, image, preimage
from ..sublattice import subobjects_of
from .morphism import (GeomError, GeomMorphism, SiteTarget, Transformation, fully_faithful,
                       verify_adjunction)


@dataclass
class Flag:
    value: bool | None
    witness: dict | None = None
    note: str = ""

    @property
    def status(self) -> str:
        return {True: "true", False: "false", None: "unknown"}[self.value]

    def __bool__(self):
        return self.value is True

    def to_json(self) -> dict:
        out = {"value": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        return out


def _all(flags: list[Flag]) -> Flag:
    """Conjunction: the first false wins, then unknown."""
    for f in flags:
        if f.value is False:
            return f
    for f in flags:
        if f.value is None:
            return f
    return Flag(True)


# -- the comparison map on Omega ----------------------------------------------------

@dataclass
class OmegaComparison:
    tau: PresheafMap               # p_*(Omega_E) -> Omega_S
    truth: Subobject               # the subobject p_*(top) of p_*(Omega_E)
    pullback_ok: bool              # pulling back top along tau gives truth again

    @property
    def is_iso(self) -> bool:
        return self.tau.is_iso()


def omega_comparison(p: GeomMorphism) -> OmegaComparison:
    """Classify ``p_*(top): p_*1 -> p_*(Omega_E)`` in the target."""
    from ..presheaf.omega import omega
    om = omega(p.source)
    m = p.direct.map(om.top)
    truth = image(m)
    tau = p.target.classify(truth)
    back = preimage(tau, image(p.target.top))
    return OmegaComparison(tau, truth, back == truth and m.is_monic())


# -- individual checks --------------------------------------------------------------------

def connected_flag(p: GeomMorphism, As, max_pairs=None, seed=0) -> Flag:
    try:
        for A in As:
            if not p.alpha(A).is_iso():
                return Flag(False, {"alpha_not_iso": A.to_json()})
        ok, wit = fully_faithful(p.inverse, As, max_pairs, seed)
    except SearchTooLarge as exc:
        return Flag(None, {"reason": str(exc)})
    return Flag(ok, wit)


def beta_monic_flag(p: GeomMorphism, Xs) -> Flag:
    for X in Xs:
        if not p.beta(X).is_monic():
            return Flag(False, {"object": X.to_json()})
    return Flag(True)


def subobject_closed_flag(p: GeomMorphism, As) -> Flag:
    """Every subobject of some ``p^*A`` is again in the image of ``p^*``."""
    try:
        for A in As:
            for u in subobjects_of(p.inverse(A)):
                U = u.as_presheaf()
                if not p.beta(U).is_iso():
                    return Flag(False, {"discrete": A.to_json(), "subobject": u.to_json()})
    except SearchTooLarge as exc:
        return Flag(None, {"reason": str(exc)})
    return Flag(True)


def adjunction_flag(rep) -> Flag:
    if rep.status == "verified":
        return Flag(True)
    if rep.status == "failed":
        return Flag(False, rep.failures[0])
    return Flag(None, rep.unknown[0])


def essential_flag(p: GeomMorphism, Xs, As, max_pairs=None, seed=0) -> Flag:
    if not p.essential:
        return Flag(False, {"reason": "no left adjoint supplied"})
    rep = verify_adjunction("p_! -| p^*", p.shriek, p.inverse, p.sigma, p.tau, Xs, As, max_pairs, seed)
    return adjunction_flag(rep)


def product_comparison(F, X: Presheaf, Y: Presheaf) -> PresheafMap:
    """``F(X x Y) -> F(X) x F(Y)``."""
    cone = product(X, Y)
    return pairing(F.map(cone.legs[0]), F.map(cone.legs[1]))


def preserves_products_flag(p: GeomMorphism, Xs, max_pairs=None, seed=0) -> Flag:
    """``p_!`` sends ``1`` to a terminal object and binary products to products."""
    from .morphism import sample_pairs
    one = p.shriek(terminal(p.source))
    if one.sizes() != terminal(p.target.site).sizes():
        return Flag(False, {"terminal_image": one.to_json()})
    for X, Y in sample_pairs(Xs, Xs, max_pairs, seed):
        if not product_comparison(p.shriek, X, Y).is_iso():
            return Flag(False, {"left": X.to_json(), "right": Y.to_json()})
    return Flag(True)


def local_flag(p: GeomMorphism, Xs, As, max_pairs=None, seed=0) -> Flag:
    """``p_* -| p^!`` verified with ``p^!`` fully faithful (its counit invertible)."""
    up = p.upper()
    rep = verify_adjunction("p_* -| p^!", p.direct, up.functor, up.unit, up.counit, Xs, As, max_pairs, seed)
    f = adjunction_flag(rep)
    if f.value is not True:
        return f
    for A in As:
        if not up.counit(A).is_iso():
            return Flag(False, {"counit_not_iso": A.to_json()})
    return Flag(True)


def reflects_zero_flag(p: GeomMorphism, Xs) -> Flag:
    for X in Xs:
        if not X.is_empty() and p.direct(X).is_empty():
            return Flag(False, {"object": X.to_json(), "note": "nonempty with empty direct image"})
    return Flag(True)


def nullstellensatz_transform(p: GeomMorphism) -> Transformation:
    """``theta_X: p_*X -> p_!X``, the composite ``p_!(beta_X) . tau^-1_{p_*X}``.

    Needs ``p`` connected (``tau`` invertible) and essential."""
    if not p.essential:
        raise GeomError("theta needs a left adjoint p_!")

    def theta(X: Presheaf) -> PresheafMap:
        A = p.direct(X)
        t = p.tau(A)
        if not t.is_iso():
            raise GeomError("not connected: tau is not invertible", {"object": A.to_json()})
        return compose(p.shriek.map(p.beta(X)), t.inverse())

    return Transformation("theta", theta)


def theta_via_units(p: GeomMorphism, X: Presheaf) -> PresheafMap:
    """The same map as ``alpha^-1 . p_*(sigma_X)``, used as a cross-check."""
    s = p.direct.map(p.sigma(X))
    return compose(p.alpha(p.shriek(X)).inverse(), s)


def nullstellensatz_flag(p: GeomMorphism, Xs) -> Flag:
    try:
        theta = nullstellensatz_transform(p)
        for X in Xs:
            if not theta(X).is_epic():
                return Flag(False, {"object": X.to_json()})
    except GeomError as exc:
        return Flag(False, {"reason": str(exc), **exc.data})
    return Flag(True)


def cartesian_closed_check(p: GeomMorphism, As) -> Flag:
    """``p^*(B^A) -> (p^*B)^(p^*A)`` is invertible for all ``A, B``."""
    try:
        for A in As:
            for B in As:
                E, ev = p.target.exponential(A, B)
                psi = p.inverse.map(ev)
                pA, pB, pE = p.inverse(A), p.inverse(B), p.inverse(E)
                if psi.dom != product(pE, pA).apex:
                    raise GeomError("inverse image does not preserve this product on the nose")
                comp = exponential(pA, pB).curry(pE, psi)
                if not comp.is_iso():
                    return Flag(False, {"A": A.to_json(), "B": B.to_json()})
    except SearchTooLarge as exc:
        return Flag(None, {"reason": str(exc)})
    return Flag(True)


def shriek_preserves_zero(p: GeomMorphism) -> dict:
    """``p^!(0)``: whether it is initial and whether it is subterminal."""
    up = p.upper()
    Z = up.functor(p.target.initial())
    return {"initial": Z.is_empty(), "subterminal": all(len(v) <= 1 for v in Z.carrier.values()),
            "sizes": dict(zip(Z.site.objects, Z.sizes()))}


# -- the full classification -----------------------------------------------------------

@dataclass
class MorphismFlags:
    name: str
    bound: int
    connected: Flag
    beta_monic: Flag
    subobject_closed: Flag
    tau_omega_iso: Flag
    hyperconnected: Flag
    essential: Flag
    pressential: Flag
    local: Flag
    nullstellensatz: Flag
    reflects_zero: Flag
    boolean_base: Flag
    stably_pressential: Flag = field(default_factory=lambda: Flag(None, note="not computed"))

    FIELDS = ("connected", "beta_monic", "subobject_closed", "tau_omega_iso", "hyperconnected", "essential",
              "pressential", "local", "nullstellensatz", "reflects_zero", "boolean_base", "stably_pressential")

    @property
    def pre_cohesive(self) -> Flag:
        return _all([self.local, self.hyperconnected, self.pressential])

    def to_json(self) -> dict:
        return {"morphism": self.name, "bound": self.bound,
                **{k: getattr(self, k).to_json() for k in self.FIELDS}}


_FLAG_CACHE: dict = {}


def classify_morphism(p: GeomMorphism, bound: int = 3, total: int | None = None, *, slice_size: int | None = 2,
                      slice_bound: int = 3, slice_total: int | None = 4, max_pairs: int | None = None,
                      seed: int = 0) -> MorphismFlags:
    """All flags of ``p`` on source and target objects with at most ``bound``
    elements per object.  ``slice_size`` bounds the base objects ``B`` used for
    stable pressentiality (``None`` skips it)."""
    key = (id(p), bound, total, slice_size, slice_bound, slice_total, max_pairs, seed, _hom.MAX_ENUM)
    hit = _FLAG_CACHE.get(key)
    if hit is not None and hit[0] is p:
        return hit[1]
    Xs = p.source_objects(bound, total)
    As = p.target_objects(bound, total)
    connected = connected_flag(p, As, max_pairs, seed)
    bm = beta_monic_flag(p, Xs)
    closed = subobject_closed_flag(p, As)
    cmp = omega_comparison(p)
    tau_iso = Flag(cmp.is_iso and cmp.pullback_ok, None if cmp.is_iso else {"tau": cmp.tau.to_json()})
    hyper = _all([connected, bm, closed, tau_iso])
    ess = essential_flag(p, Xs, As, max_pairs, seed)
    if ess.value is True:
        pres = _all([ess, preserves_products_flag(p, Xs, max_pairs, seed)])
    else:
        pres = ess
    try:
        loc = local_flag(p, Xs, As, max_pairs, seed)
    except GeomError as exc:
        loc = Flag(False, {"reason": str(exc), **exc.data})
    if ess.value is True and connected.value is True:
        nss = nullstellensatz_flag(p, Xs)
    else:
        nss = Flag(None, note="needs connected and essential")
    rz = reflects_zero_flag(p, Xs)
    boolean = Flag(p.target.is_boolean())
    flags = MorphismFlags(p.name, bound, connected, bm, closed, tau_iso, hyper, ess, pres, loc, nss, rz, boolean)
    if slice_size is not None:
        flags.stably_pressential = stably_pressential_flag(p, slice_size, slice_bound, slice_total,
                                                           max_pairs, seed, pres)
    _FLAG_CACHE[key] = (p, flags)
    return flags


def slice_bases(p: GeomMorphism, slice_size: int) -> tuple:
    return p.target_objects(slice_size)


def stably_pressential_flag(p: GeomMorphism, slice_size: int, slice_bound: int, slice_total: int | None,
                            max_pairs, seed, pressential: Flag) -> Flag:
    from .slice import slice as _slice
    if pressential.value is not True:
        return Flag(pressential.value, {"unsliced": pressential.to_json()}) if pressential.value is False \
            else Flag(None, note="pressentiality unknown")
    if not isinstance(p.target, SiteTarget):
        return Flag(None, note="slicing is only realised over presheaf bases")
    for B in slice_bases(p, slice_size):
        try:
            q = _slice(p, B)
        except GeomError as exc:
            return Flag(None, {"base": B.to_json(), "reason": str(exc)})
        Ys = q.source_objects(slice_bound, slice_total)
        Bs = q.target_objects(slice_bound, slice_total)
        f = _all([essential_flag(q, Ys, Bs, max_pairs, seed), preserves_products_flag(q, Ys, max_pairs, seed)])
        if f.value is not True:
            return Flag(f.value, {"base": B.to_json(), "detail": f.to_json()})
    return Flag(True, note=f"bases up to {slice_size} elements per object")


__all__ = [
    "Flag", "OmegaComparison", "omega_comparison", "connected_flag", "beta_monic_flag", "subobject_closed_flag",
    "essential_flag", "preserves_products_flag", "product_comparison", "local_flag", "reflects_zero_flag",
    "nullstellensatz_transform", "theta_via_units", "nullstellensatz_flag", "cartesian_closed_check",
    "shriek_preserves_zero", "MorphismFlags", "classify_morphism", "stably_pressential_flag", "slice_bases",
]
