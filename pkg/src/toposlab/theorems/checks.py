"""One executable check per statement.

A check receives a corpus topos and a :class:`CheckConfig` and returns one
:class:`Instance` per applicable geometric morphism.  Hypotheses are decided
first, by the flag computations of :mod:`toposlab.geom.flags`; the conclusion
is then tested by separate code (hom-set enumeration, subobject lattices,
sheaf conditions), never read off the flags it is supposed to follow from.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from ..decidable import injective_actions, is_decidable
from ..geom.flags import (Flag, classify_morphism, cartesian_closed_check, omega_comparison, product_comparison,
                          shriek_preserves_zero, slice_bases)
from ..geom.morphism import GeomError, GeomMorphism, SiteTarget, refute_right_adjoint, sample_pairs
from ..geom.slice import slice as slice_morphism
from ..geom.subtopos import is_sheaf, sheaf_objects, sheafify_functor, sheaf_unit
from ..geom.uiao import composite_equivalence, uiao_verify
from ..presheaf import hom as _hom
from ..presheaf.core import Presheaf, SearchTooLarge, compose, initial, terminal, to_terminal
from ..presheaf.limits import copairing, coproduct, pullback
from ..presheaf.omega import omega
from ..presheaf.subobject import Subobject, image
from ..sublattice import is_dense, negation, negneg_topology, separation_witness, subobjects_of
from .corpus import Topos
from .shrink import shrink
from .verdict import Instance


@dataclass(frozen=True)
class CheckConfig:
    bound: int = 3               # elements per site object for quantified checks
    slice_size: int = 2          # largest base object B for slicing
    slice_bound: int = 3         # elements per object inside a slice
    slice_total: int | None = 4
    max_pairs: int | None = None
    seed: int = 0


def flags_of(p: GeomMorphism, cfg: CheckConfig):
    sliceable = isinstance(p.target, SiteTarget)
    return classify_morphism(p, cfg.bound, slice_size=cfg.slice_size if sliceable else None,
                             slice_bound=cfg.slice_bound, slice_total=cfg.slice_total,
                             max_pairs=cfg.max_pairs, seed=cfg.seed)


def _hyps(**flags: Flag) -> dict:
    return {k: f.status for k, f in flags.items()}


def gate(p: GeomMorphism, **flags: Flag) -> Instance | None:
    """A vacuous or unknown instance when some hypothesis is not verified true."""
    h = _hyps(**flags)
    for name, f in flags.items():
        if f.value is False:
            return Instance(p.name, "vacuous", {"failed_hypothesis": name, "detail": f.to_json()}, h)
    for name, f in flags.items():
        if f.value is None:
            return Instance(p.name, "unknown", {"unknown_hypothesis": name, "detail": f.to_json()}, h)
    return None


def _obj_fail(p: GeomMorphism, h: dict, X: Presheaf, fails: Callable[[Presheaf], bool], extra: dict,
              checked: int) -> Instance:
    small = shrink(X, fails)
    return Instance(p.name, "fail", {"object": small.to_json(), **extra}, h, checked=checked)


def for_all_objects(p: GeomMorphism, h: dict, Xs, fails: Callable[[Presheaf], bool], note: str = "",
                    describe: Callable[[Presheaf], dict] | None = None) -> Instance:
    n = 0
    for X in Xs:
        n += 1
        if fails(X):
            return _obj_fail(p, h, X, fails, describe(X) if describe else {}, n)
    return Instance(p.name, "pass", None, h, note, checked=n)


def subterminal(X: Presheaf) -> bool:
    return all(len(v) <= 1 for v in X.carrier.values())


def sub_image(p: GeomMorphism, u: Subobject) -> Subobject:
    """``p_*(u)`` as a subobject of ``p_*X``."""
    return image(p.direct.map(u.inclusion()))


def _kinds(T: Topos, *kinds: str) -> list[GeomMorphism]:
    return [p for p in T.morphisms if p.notes.get("kind") in kinds]


# -- slicing and the decidable coreflection -----------------------------------------------------

def check_slice_hyperconnected(T: Topos, cfg: CheckConfig) -> list[Instance]:
    out = []
    for p in _kinds(T, "canonical"):
        f = flags_of(p, cfg)
        g = gate(p, hyperconnected=f.hyperconnected)
        if g:
            out.append(g)
            continue
        h = _hyps(hyperconnected=f.hyperconnected)
        inst = Instance(p.name, "pass", None, h, f"bases up to {cfg.slice_size} elements")
        for B in slice_bases(p, cfg.slice_size):
            q = slice_morphism(p, B)
            fq = classify_morphism(q, cfg.slice_bound, cfg.slice_total, slice_size=None, max_pairs=cfg.max_pairs,
                                   seed=cfg.seed)
            inst.checked += 1
            if fq.hyperconnected.value is not True:
                inst.status = "fail" if fq.hyperconnected.value is False else "unknown"
                inst.witness = {"base": B.to_json(), "slice_flag": fq.hyperconnected.to_json()}
                break
        out.append(inst)
    return out


def check_dec_coreflection_hyperconnected(T: Topos, cfg: CheckConfig) -> list[Instance]:
    if T.dec_failure is not None:
        return [Instance(f"{T.name}->Dec", "vacuous", {"failed_hypothesis": "inclusion has a right adjoint",
                                                       "detail": T.dec_failure},
                         {"right_adjoint": "false"})]
    out = []
    for p in _kinds(T, "dec"):
        h = {"right_adjoint": "true"}
        f = flags_of(p, cfg)
        parts = {"connected": f.connected, "beta_monic": f.beta_monic, "subobject_closed": f.subobject_closed,
                 "tau_omega_iso": f.tau_omega_iso}
        bad = {k: v.to_json() for k, v in parts.items() if v.value is not True}
        if bad:
            status = "fail" if any(v.value is False for v in parts.values()) else "unknown"
            out.append(Instance(p.name, status, bad, h))
        else:
            out.append(Instance(p.name, "pass", None, h, checked=len(p.source_objects(cfg.bound))))
    return out


# -- extensive categories -------------------------------------------------------------------------

def _functor_props(F, Xs, target_site, max_pairs, seed) -> dict[str, Flag]:
    """Finite products, finite coproducts, reflecting 0; each with a witness when false."""
    one = F(terminal(Xs[0].site)) if Xs else None
    props = {}
    if one is None or not all(len(v) == 1 for v in one.carrier.values()):
        props["preserves_products"] = Flag(False, {"terminal_image": one.to_json() if one else None})
    else:
        props["preserves_products"] = Flag(True)
        for X, Y in sample_pairs(Xs, Xs, max_pairs, seed):
            if not product_comparison(F, X, Y).is_iso():
                props["preserves_products"] = Flag(False, {"left": X.to_json(), "right": Y.to_json()})
                break
    zero = F(initial(Xs[0].site)) if Xs else None
    if zero is None or not zero.is_empty():
        props["preserves_coproducts"] = Flag(False, {"initial_image": zero.to_json() if zero else None})
    else:
        props["preserves_coproducts"] = Flag(True)
        for X, Y in sample_pairs(Xs, Xs, max_pairs, seed):
            cone = coproduct(X, Y)
            cmp = copairing(F.map(cone.legs[0]), F.map(cone.legs[1]))
            if not cmp.is_iso():
                props["preserves_coproducts"] = Flag(False, {"left": X.to_json(), "right": Y.to_json()})
                break
    props["reflects_zero"] = Flag(True)
    for X in Xs:
        if not X.is_empty() and F(X).is_empty():
            props["reflects_zero"] = Flag(False, {"object": X.to_json()})
            break
    return props


def _folk_conclusion(F, Xs):
    """First decidable ``X`` with ``F X`` subterminal but ``X`` not subterminal."""
    for X in Xs:
        if injective_actions(X) and subterminal(F(X)) and not subterminal(X):
            return X
    return None


def check_extensive_folk(T: Topos, cfg: CheckConfig) -> tuple[list[Instance], dict | None]:
    out, probes = [], []
    for p in T.morphisms:
        Xs = p.source_objects(cfg.bound)
        functors = [("p_*", p.direct)] + ([("p_!", p.shriek)] if p.essential else [])
        for fname, F in functors:
            label = f"{p.name}:{fname}"
            props = _functor_props(F, Xs, p.target.site, cfg.max_pairs, cfg.seed)
            h = _hyps(**props)
            bad = _folk_conclusion(F, Xs)
            if all(v.value is True for v in props.values()):
                if bad is None:
                    out.append(Instance(label, "pass", None, h, checked=len(Xs)))
                else:
                    def fails(Y, F=F):
                        return injective_actions(Y) and subterminal(F(Y)) and not subterminal(Y)
                    out.append(Instance(label, "fail", {"object": shrink(bad, fails).to_json()}, h))
            else:
                g = gate(p, **props)
                g.morphism = label
                out.append(g)
                only_reflect = props["preserves_products"].value and props["preserves_coproducts"].value \
                    and props["reflects_zero"].value is False
                if only_reflect:
                    probes.append({"functor": label, "hypotheses": h,
                                   "reflects_zero_witness": props["reflects_zero"].witness,
                                   "conclusion_fails": bad is not None,
                                   "counterexample": bad.to_json() if bad is not None else None})
    probe = None
    if probes:
        probe = {"kind": "necessity of reflecting 0", "label": "finite analogue" if T.name == "zmod2" else "",
                 "cases": probes}
    return out, probe


def check_decidable_subterminal(T: Topos, cfg: CheckConfig) -> list[Instance]:
    out = []
    for p in T.morphisms:
        f = flags_of(p, cfg)
        g = gate(p, pressential=f.pressential)
        if g:
            out.append(g)
            continue

        def fails(X, p=p):
            return injective_actions(X) and subterminal(p.shriek(X)) and not subterminal(X)
        out.append(for_all_objects(p, _hyps(pressential=f.pressential), p.source_objects(cfg.bound), fails))
    return out


def check_connected_iff_ccc(T: Topos, cfg: CheckConfig) -> list[Instance]:
    out = []
    for p in T.morphisms:
        f = flags_of(p, cfg)
        g = gate(p, pressential=f.pressential)
        if g:
            out.append(g)
            continue
        h = _hyps(pressential=f.pressential)
        cc = cartesian_closed_check(p, p.target_objects(cfg.bound))
        if cc.value is None or f.connected.value is None:
            out.append(Instance(p.name, "unknown", {"ccc": cc.to_json(), "connected": f.connected.to_json()}, h))
        elif cc.value != f.connected.value:
            out.append(Instance(p.name, "fail", {"ccc": cc.to_json(), "connected": f.connected.to_json()}, h))
        else:
            note = "connected and ccc both hold" if cc.value else "neither holds"
            out.append(Instance(p.name, "pass", None, h, note))
    return out


# -- decidable versus discrete ---------------------------------------------------------------------

def check_unit_monic_on_decidables(T: Topos, cfg: CheckConfig) -> list[Instance]:
    out = []
    for p in _kinds(T, "canonical"):
        f = flags_of(p, cfg)
        g = gate(p, stably_pressential=f.stably_pressential)
        if g:
            out.append(g)
            continue

        def fails(X, p=p):
            return injective_actions(X) and not p.sigma(X).is_monic()
        out.append(for_all_objects(p, _hyps(stably_pressential=f.stably_pressential),
                                   p.source_objects(cfg.bound), fails))
    return out


def _discrete_by_iso(p: GeomMorphism, X: Presheaf, As) -> bool:
    """``X`` is isomorphic to some ``p^*A`` (found by search, not through ``beta``)."""
    return any(_hom.find_iso(p.inverse(A), X) is not None for A in As)


def check_decidable_implies_discrete(T: Topos, cfg: CheckConfig) -> list[Instance]:
    out = []
    for p in _kinds(T, "canonical"):
        f = flags_of(p, cfg)
        g = gate(p, stably_pressential=f.stably_pressential, hyperconnected=f.hyperconnected)
        if g:
            out.append(g)
            continue

        def fails(X, p=p):
            return is_decidable(X).decidable and not p.beta(X).is_iso()
        out.append(for_all_objects(p, _hyps(stably_pressential=f.stably_pressential,
                                            hyperconnected=f.hyperconnected), p.source_objects(cfg.bound), fails))
    return out


def check_decidable_eq_discrete(T: Topos, cfg: CheckConfig) -> list[Instance]:
    out = []
    for p in _kinds(T, "canonical"):
        f = flags_of(p, cfg)
        g = gate(p, boolean_base=f.boolean_base, stably_pressential=f.stably_pressential,
                 hyperconnected=f.hyperconnected)
        if g:
            out.append(g)
            continue
        h = _hyps(boolean_base=f.boolean_base, stably_pressential=f.stably_pressential,
                  hyperconnected=f.hyperconnected)
        As = p.target_objects(cfg.bound)

        def fails(X, p=p, As=As):
            return is_decidable(X).decidable != _discrete_by_iso(p, X, As)
        out.append(for_all_objects(p, h, p.source_objects(cfg.bound), fails,
                                   describe=lambda X: {"decidable": is_decidable(X).decidable}))
    return out


def check_uiao(T: Topos, cfg: CheckConfig) -> list[Instance]:
    out = []
    for p in _kinds(T, "canonical"):
        f = flags_of(p, cfg)
        g = gate(p, boolean_base=f.boolean_base, local=f.local, hyperconnected=f.hyperconnected,
                 pressential=f.pressential, stably_pressential=f.stably_pressential)
        if g:
            out.append(g)
            continue
        h = _hyps(boolean_base=f.boolean_base, local=f.local, hyperconnected=f.hyperconnected,
                  pressential=f.pressential, stably_pressential=f.stably_pressential)
        rep = uiao_verify(p, cfg.bound, max_pairs=cfg.max_pairs, seed=cfg.seed)
        if rep.ok:
            out.append(Instance(p.name, "pass", None, h, checked=len(rep.steps)))
        else:
            ff = rep.first_failure
            out.append(Instance(p.name, "unknown" if ff.ok is None else "fail", rep.to_json(), h))
    return out


# -- stable local connectedness ---------------------------------------------------------------------

def _stable_units(p: GeomMorphism, cfg: CheckConfig) -> Flag:
    """``p_!`` sends pullbacks over some ``p^*B`` to pullbacks."""
    Xs = p.source_objects(cfg.slice_bound, cfg.slice_total)
    budget = 4000 if cfg.max_pairs is None else cfg.max_pairs
    for B in slice_bases(p, cfg.slice_size):
        PB = p.inverse(B)
        tB = p.tau(B)
        spans = []
        for X in Xs:
            spans.extend(_hom.iter_homs(X, PB))
        for x, y in itertools.islice(itertools.product(spans, spans), budget):
            P = pullback(x, y)
            bx = compose(tB, p.shriek.map(x))
            by = compose(tB, p.shriek.map(y))
            Q = pullback(bx, by)
            l0, l1 = p.shriek.map(P.legs[0]), p.shriek.map(P.legs[1])
            for c in p.target.site.objects:
                got = [(l0.comp[c][e], l1.comp[c][e]) for e in l0.dom.carrier[c]]
                if len(set(got)) != len(got) or set(got) != set(Q.apex.carrier[c]):
                    break
            else:
                continue
            return Flag(False, {"base": B.to_json(), "x": x.to_json(), "y": y.to_json()})
    return Flag(True)


def _slices(p: GeomMorphism, cfg: CheckConfig, what: str) -> Flag:
    from ..geom.flags import essential_flag, preserves_products_flag, _all
    for B in slice_bases(p, cfg.slice_size):
        q = slice_morphism(p, B)
        Ys = q.source_objects(cfg.slice_bound, cfg.slice_total)
        Bs = q.target_objects(cfg.slice_bound, cfg.slice_total)
        ess = essential_flag(q, Ys, Bs, cfg.max_pairs, cfg.seed)
        f = ess if what == "essential" else _all([ess, preserves_products_flag(q, Ys, cfg.max_pairs, cfg.seed)])
        if f.value is not True:
            return Flag(f.value, {"base": B.to_json(), "detail": f.to_json()})
    return Flag(True)


def stably_locc_items(p: GeomMorphism, cfg: CheckConfig) -> dict[str, Flag]:
    from ..geom.flags import _all
    f = flags_of(p, cfg)
    ess = f.essential
    if ess.value is not True:
        return {k: Flag(False, {"not_essential": ess.to_json()}) for k in ("1", "2", "3", "4")}
    return {
        "1": _all([_slices(p, cfg, "essential"), f.pressential]),
        "2": _all([f.connected, ess, _stable_units(p, cfg)]),
        "3": _all([f.connected, ess, _slices(p, cfg, "pressential")]),
        "4": _all([f.connected, f.stably_pressential]),
    }


def check_stably_locc(T: Topos, cfg: CheckConfig) -> list[Instance]:
    out = []
    for p in _kinds(T, "canonical"):
        items = stably_locc_items(p, cfg)
        vals = {k: v.status for k, v in items.items()}
        h = {"geometric_morphism": "true"}
        if any(v.value is None for v in items.values()):
            out.append(Instance(p.name, "unknown", {"items": vals}, h))
        elif len({v.value for v in items.values()}) == 1:
            truth = next(iter(items.values())).value
            out.append(Instance(p.name, "pass", {"items": vals}, h,
                                f"all four items {'hold' if truth else 'fail'}; consistent with equivalence"))
        else:
            out.append(Instance(p.name, "fail", {"items": {k: v.to_json() for k, v in items.items()}}, h))
    return out


# -- Nullstellensatz -------------------------------------------------------------------------------

def check_nullstellensatz_chain(T: Topos, cfg: CheckConfig) -> tuple[list[Instance], dict | None]:
    out, probes = [], []
    for p in T.morphisms:
        f = flags_of(p, cfg)
        if f.hyperconnected.value is True and f.reflects_zero.value is False:
            probes.append({"morphism": p.name, "hyperconnected": True, "reflects_zero": False,
                           "witness": f.reflects_zero.witness,
                           "label": "finite analogue" if T.name == "zmod2" else ""})
        g = gate(p, connected=f.connected, essential=f.essential, nullstellensatz=f.nullstellensatz)
        if g:
            out.append(g)
            continue
        h = _hyps(connected=f.connected, essential=f.essential, nullstellensatz=f.nullstellensatz)
        preserves = p.direct(initial(p.source)).is_empty()

        def fails(X, p=p, preserves=preserves):
            a, b, c = p.direct(X).is_empty(), p.shriek(X).is_empty(), X.is_empty()
            if (a and not b) or (b and not c):
                return True
            return preserves and c and not a
        inst = for_all_objects(p, h, p.source_objects(cfg.bound), fails,
                               describe=lambda X, p=p: {"direct_empty": p.direct(X).is_empty(),
                                                        "shriek_empty": p.shriek(X).is_empty()})
        if inst.status == "pass" and preserves:
            inst.note = "p_* preserves 0, so the three items are equivalent"
        out.append(inst)
    probe = {"kind": "hyperconnected without reflecting 0", "cases": probes} if probes else None
    return out, probe


def check_faithful_on_discrete(T: Topos, cfg: CheckConfig) -> list[Instance]:
    out = []
    for p in T.morphisms:
        f = flags_of(p, cfg)
        g = gate(p, hyperconnected=f.hyperconnected)
        if g:
            out.append(g)
            continue
        h = _hyps(hyperconnected=f.hyperconnected)
        n = 0
        bad = None
        for A in p.target_objects(cfg.bound):
            PA = p.inverse(A)
            for X in p.source_objects(cfg.bound):
                seen = {}
                for m in _hom.iter_homs(PA, X):
                    n += 1
                    k = p.direct.map(m).code()
                    if k in seen:
                        bad = {"A": A.to_json(), "X": X.to_json(), "f": seen[k].to_json(), "g": m.to_json()}
                        break
                    seen[k] = m
                if bad:
                    break
            if bad:
                break
        out.append(Instance(p.name, "fail" if bad else "pass", bad, h, checked=n))
    return out


def check_shriek_zero(T: Topos, cfg: CheckConfig) -> list[Instance]:
    out = []
    for p in T.morphisms:
        f = flags_of(p, cfg)
        g = gate(p, local=f.local)
        if g:
            out.append(g)
            continue
        h = _hyps(local=f.local, hyperconnected=f.hyperconnected, boolean_base=f.boolean_base)
        z = shriek_preserves_zero(p)
        problems = []
        if not z["subterminal"]:
            problems.append("p^!0 is not subterminal")
        if f.hyperconnected.value is True and not z["initial"]:
            problems.append("hyperconnected but p^!0 is not initial")
        if f.boolean_base.value is True and z["initial"] and f.hyperconnected.value is False:
            problems.append("Boolean base and p^!0 initial, yet not hyperconnected")
        if problems:
            out.append(Instance(p.name, "fail", {"problems": problems, "p_shriek_zero": z}, h))
        else:
            dirs = []
            if f.hyperconnected.value is True:
                dirs.append("hyperconnected => p^!0 = 0")
            if f.boolean_base.value is True and z["initial"]:
                dirs.append("Boolean base, p^!0 = 0 => hyperconnected")
            out.append(Instance(p.name, "pass", {"p_shriek_zero": z}, h, "; ".join(dirs)))
    return out


# -- the double-negation subtopos ---------------------------------------------------------------------

def _subtopos_hypotheses(p: GeomMorphism, cfg: CheckConfig, Xs) -> dict[str, Flag]:
    """``a(beta)`` and ``p_*(eta_{p^*})`` invertible, on the given objects."""
    a, eta = sheafify_functor(), sheaf_unit()
    fb = Flag(True)
    for X in Xs:
        if not a.map(p.beta(X)).is_iso():
            fb = Flag(False, {"object": X.to_json()})
            break
    fe = Flag(True)
    for A in p.target_objects(cfg.bound):
        if not p.direct.map(eta(p.inverse(A))).is_iso():
            fe = Flag(False, {"object": A.to_json()})
            break
    return {"sheafified_counit_iso": fb, "direct_image_of_unit_iso": fe}


def check_composite_equivalence(T: Topos, cfg: CheckConfig) -> list[Instance]:
    out = []
    for p in T.morphisms:
        f = flags_of(p, cfg)
        Fs = sheaf_objects(p.source, cfg.bound)
        hy = _subtopos_hypotheses(p, cfg, Fs)
        g = gate(p, connected=f.connected, **hy)
        if g:
            out.append(g)
            continue
        step = composite_equivalence(p, p.target_objects(cfg.bound), Fs)
        h = _hyps(connected=f.connected, **hy)
        out.append(Instance(p.name, "pass" if step.ok else "fail", None if step.ok else step.to_json(), h,
                            checked=len(Fs)))
    return out


def _codiscrete_are_sheaves(p: GeomMorphism, cfg: CheckConfig) -> dict | None:
    up = p.upper()
    for A in p.target_objects(cfg.bound):
        if not is_sheaf(up.functor(A)):
            return {"codiscrete_not_sheaf": A.to_json()}
    for F in sheaf_objects(p.source, cfg.bound):
        if not up.unit(F).is_iso():
            return {"sheaf_not_codiscrete": F.to_json()}
    return None


def check_connected_implies_local(T: Topos, cfg: CheckConfig) -> list[Instance]:
    out = []
    for p in T.morphisms:
        f = flags_of(p, cfg)
        hy = _subtopos_hypotheses(p, cfg, p.source_objects(cfg.bound))
        g = gate(p, connected=f.connected, **hy)
        if g:
            out.append(g)
            continue
        h = _hyps(connected=f.connected, **hy)
        if f.local.value is not True:
            out.append(Instance(p.name, "fail" if f.local.value is False else "unknown",
                                {"local": f.local.to_json()}, h))
            continue
        bad = _codiscrete_are_sheaves(p, cfg)
        out.append(Instance(p.name, "fail" if bad else "pass", bad, h,
                            "" if bad else "local, and the codiscrete objects are the sheaves"))
    return out


def check_tau_negation(T: Topos, cfg: CheckConfig) -> list[Instance]:
    out = []
    for p in T.morphisms:
        f = flags_of(p, cfg)
        g = gate(p, hyperconnected=f.hyperconnected)
        if g:
            out.append(g)
            continue
        h = _hyps(hyperconnected=f.hyperconnected)
        om = omega(p.source)
        tau = omega_comparison(p).tau
        Tg = p.target
        wit = None
        # bottom square: p_* preserves 0 here, so tau . p_*(bot) = bot . !
        bot_S = Tg.classify(Subobject.empty(Tg.terminal()))
        if compose(tau, p.direct.map(om.bottom)) != compose(bot_S, to_terminal(p.direct(terminal(p.source)))):
            wit = {"square": "bottom"}
        if wit is None and compose(tau, p.direct.map(om.neg)) != compose(Tg.neg, tau):
            wit = {"square": "negation", "tau": tau.to_json()}
        n = 0
        if wit is None:
            for X in p.source_objects(cfg.bound):
                for u in subobjects_of(X):
                    n += 1
                    lhs = sub_image(p, negation(u))
                    rhs = negation(sub_image(p, u))
                    if lhs != rhs:
                        wit = {"object": X.to_json(), "subobject": u.to_json(), "direct_of_neg": lhs.to_json(),
                               "neg_of_direct": rhs.to_json()}
                        break
                if wit:
                    break
        out.append(Instance(p.name, "fail" if wit else "pass", wit, h, checked=n))
    return out


def check_dense_lemma(T: Topos, cfg: CheckConfig) -> list[Instance]:
    out = []
    for p in T.morphisms:
        f = flags_of(p, cfg)
        pres = Flag(p.direct(initial(p.source)).is_empty())
        g = gate(p, preserves_zero=pres, reflects_zero=f.reflects_zero)
        if g:
            out.append(g)
            continue
        h = _hyps(preserves_zero=pres, reflects_zero=f.reflects_zero)
        j = negneg_topology(p.source)
        wit, n, hits = None, 0, 0
        for X in p.source_objects(cfg.bound):
            for u in subobjects_of(X):
                n += 1
                if not p.direct.map(u.inclusion()).is_iso():
                    continue
                hits += 1
                if not negation(u).is_empty() or not is_dense(u, j):
                    wit = {"object": X.to_json(), "subobject": u.to_json()}
                    break
            if wit:
                break
        out.append(Instance(p.name, "fail" if wit else "pass", wit, h,
                            f"{hits} monos with invertible direct image", checked=n))
    return out


def check_local_characterization(T: Topos, cfg: CheckConfig) -> list[Instance]:
    out = []
    for p in T.morphisms:
        f = flags_of(p, cfg)
        g = gate(p, boolean_base=f.boolean_base, hyperconnected=f.hyperconnected)
        if g:
            out.append(g)
            continue
        h = _hyps(boolean_base=f.boolean_base, hyperconnected=f.hyperconnected)
        j = negneg_topology(p.source)
        sep_bad = None
        for A in p.target_objects(cfg.bound):
            w = separation_witness(p.inverse(A), j)
            if w is not None:
                sep_bad = {"A": A.to_json(), "pair": w}
                break
        rhs = f.reflects_zero.value is True and sep_bad is None
        if f.local.value is None:
            out.append(Instance(p.name, "unknown", {"local": f.local.to_json()}, h))
            continue
        lhs = f.local.value
        if lhs != rhs:
            out.append(Instance(p.name, "fail", {"local": f.local.to_json(), "reflects_zero": f.reflects_zero.to_json(),
                                                 "not_separated": sep_bad}, h))
            continue
        bad = _codiscrete_are_sheaves(p, cfg) if lhs else None
        note = "local; codiscretes are the sheaves" if lhs else "not local, and the right side fails too"
        out.append(Instance(p.name, "fail" if bad else "pass",
                            bad or ({"reflects_zero": f.reflects_zero.to_json()} if not lhs else None), h, note))
    return out


def check_mclarty_corollary(T: Topos, cfg: CheckConfig) -> list[Instance]:
    out = []
    if T.dec_failure is not None:
        out.append(Instance(f"{T.name}->Dec", "vacuous", {"failed_hypothesis": "inclusion has a right adjoint",
                                                          "detail": T.dec_failure}, {"right_adjoint": "false"}))
    for p in T.morphisms:
        f = flags_of(p, cfg)
        if p.notes.get("kind") == "dec":
            h = {"right_adjoint": "true"}
        else:
            g = gate(p, hyperconnected=f.hyperconnected, boolean_base=f.boolean_base)
            if g:
                out.append(g)
                continue
            h = _hyps(hyperconnected=f.hyperconnected, boolean_base=f.boolean_base)
        if f.local.value is None or f.reflects_zero.value is None:
            out.append(Instance(p.name, "unknown", {"local": f.local.to_json()}, h))
            continue
        local, reflects = f.local.value, f.reflects_zero.value
        if local != reflects:
            out.append(Instance(p.name, "fail", {"local": f.local.to_json(),
                                                 "reflects_zero": f.reflects_zero.to_json()}, h))
            continue
        if local:
            bad = _codiscrete_are_sheaves(p, cfg)
            cc = cartesian_closed_check(p, p.target_objects(cfg.bound))
            if bad is None and cc.value is not None and cc.value != f.pre_cohesive.value:
                bad = {"ccc": cc.to_json(), "pre_cohesive": f.pre_cohesive.to_json()}
            out.append(Instance(p.name, "fail" if bad else "pass", bad, h,
                                "local and reflects 0; codiscretes are the sheaves; "
                                f"pre-cohesive={f.pre_cohesive.status}, ccc={cc.status}"))
        else:
            ref = refute_right_adjoint(p, p.target.initial(), p.source_objects(cfg.bound))
            wit = {"reflects_zero": f.reflects_zero.witness, "refutation": ref.to_json()}
            if T.name == "zmod2":
                wit["label"] = "finite analogue"
            out.append(Instance(p.name, "pass" if ref.refuted else "fail", wit, h,
                                "p_* does not reflect 0 and every candidate p^! is refuted"))
    return out


# -- exploratory ----------------------------------------------------------------------------------

def explore_stably_precohesive(T: Topos, cfg: CheckConfig) -> dict:
    """Search for a pre-cohesive morphism whose slices are not all pressential."""
    found, looked = [], []
    for p in _kinds(T, "canonical"):
        f = flags_of(p, cfg)
        if f.pre_cohesive.value is True:
            looked.append(p.name)
            if f.stably_pressential.value is False:
                found.append({"morphism": p.name, "detail": f.stably_pressential.to_json()})
    return {"topos": T.name, "pre_cohesive_examined": looked, "counterexamples": found,
            "note": "no counterexample found; this proves nothing" if not found else "counterexample found"}


def _guard(fn):
    def run(T, cfg):
        try:
            res = fn(T, cfg)
        except SearchTooLarge as exc:
            return [Instance(T.name, "unknown", {"reason": str(exc)})], None
        except GeomError as exc:
            return [Instance(T.name, "unknown", {"reason": str(exc), **exc.data})], None
        return res if isinstance(res, tuple) else (res, None)
    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


CHECKS = {
    "slice-hyperconnected": check_slice_hyperconnected,
    "dec-coreflection-hyperconnected": check_dec_coreflection_hyperconnected,
    "extensive-folk": check_extensive_folk,
    "decidable-subterminal": check_decidable_subterminal,
    "connected-iff-ccc": check_connected_iff_ccc,
    "unit-monic-on-decidables": check_unit_monic_on_decidables,
    "decidable-implies-discrete": check_decidable_implies_discrete,
    "decidable-eq-discrete": check_decidable_eq_discrete,
    "uiao": check_uiao,
    "stably-locc-equivalences": check_stably_locc,
    "nullstellensatz-chain": check_nullstellensatz_chain,
    "faithful-on-discrete": check_faithful_on_discrete,
    "shriek-zero": check_shriek_zero,
    "composite-equivalence": check_composite_equivalence,
    "connected-implies-local": check_connected_implies_local,
    "tau-negation": check_tau_negation,
    "dense-lemma": check_dense_lemma,
    "local-characterization": check_local_characterization,
    "mclarty-corollary": check_mclarty_corollary,
}

GUARDED = {k: _guard(v) for k, v in CHECKS.items()}
