"""Decidable presheaves, the coreflection onto them, and the reflection into them."""
from __future__ import annotations

from dataclasses import dataclass, field

from .fincat import FinCategory, ekey
from .presheaf import hom as _hom
from .presheaf.core import Presheaf, PresheafMap, compose, terminal
from .presheaf.enumerate import enumerate_presheaves
from .presheaf.limits import diagonal_subobject
from .presheaf.subobject import Subobject
from .sublattice import is_complemented, subobjects_of


@dataclass
class DecVerdict:
    decidable: bool
    complement: Subobject | None     # K with X x X = diagonal + K, when decidable
    witness: dict | None = None      # a pair of X x X outside diagonal v K otherwise

    def __bool__(self):
        return self.decidable

    def to_json(self) -> dict:
        out = {"decidable": self.decidable}
        if self.complement is not None:
            out["complement"] = self.complement.to_json()
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def is_decidable(X: Presheaf) -> DecVerdict:
    """Decidable means the diagonal of ``X x X`` is complemented."""
    res = is_complemented(diagonal_subobject(X))
    if res.complemented:
        return DecVerdict(True, res.complement)
    c, pair = res.missing[0]
    return DecVerdict(False, None, {"object": c, "pair": list(pair)})


def injective_actions(X: Presheaf) -> bool:
    """Every restriction map is injective (an equivalent, more direct test)."""
    return all(len(set(a.values())) == len(a) for a in X.action.values())


def dec_objects(C: FinCategory, per_object: int, total: int | None = None) -> tuple[Presheaf, ...]:
    return tuple(X for X in enumerate_presheaves(C, per_object, total) if is_decidable(X).decidable)


def decidable_subobjects(X: Presheaf) -> list[Subobject]:
    return [u for u in subobjects_of(X) if injective_actions(u.as_presheaf())]


def _maximal(us: list[Subobject]) -> list[Subobject]:
    return [u for u in us if not any(u != v and u <= v for v in us)]


@dataclass
class Coreflection:
    CX: Presheaf
    counit: PresheafMap            # beta_X: CX -> X, an inclusion
    subobject: Subobject
    verified_bound: int | None = None
    checked_maps: int = 0


@dataclass
class NoCoreflection:
    """No coreflection: ``reason`` is ``"no-maximum"`` (with the antichain of
    maximal decidable subobjects) or ``"fails-up-to-bound"`` (with a map that
    does not factor)."""

    reason: str
    antichain: list = field(default_factory=list)
    witness: dict | None = None

    def __bool__(self):
        return False


def coreflection_candidate(X: Presheaf) -> Subobject | NoCoreflection:
    """The largest decidable sub-presheaf of ``X`` when there is one."""
    if injective_actions(X):
        return Subobject.full(X)
    maxi = _maximal(decidable_subobjects(X))
    if len(maxi) == 1:
        return maxi[0]
    joined = maxi[0]
    for u in maxi[1:]:
        joined = Subobject(X, {c: joined.parts[c] | u.parts[c] for c in X.site.objects}, check=False)
    if injective_actions(joined.as_presheaf()):
        return joined
    return NoCoreflection("no-maximum", maxi)


def dec_coreflection(X: Presheaf, tests=None, bound: int | None = None) -> Coreflection | NoCoreflection:
    """Largest decidable subobject, checked against every map ``D -> X`` with
    ``D`` among ``tests`` (default: decidable presheaves with at most ``bound``
    elements per object): each must factor, uniquely, through the inclusion."""
    cand = coreflection_candidate(X)
    if isinstance(cand, NoCoreflection):
        return cand
    beta = cand.inclusion()
    CX = beta.dom
    if tests is None:
        tests = dec_objects(X.site, bound) if bound is not None else ()
    checked = 0
    for D in tests:
        n_cx = _hom.hom_count(D, CX)
        for m in _hom.iter_homs(D, X):
            checked += 1
            if any(m.comp[c][x] not in cand.parts[c] for c in X.site.objects for x in D.carrier[c]):
                return NoCoreflection("fails-up-to-bound", [cand],
                                      {"decidable": D.to_json(), "map": m.to_json()})
        # factorisations are unique because beta is monic; counts must agree
        if n_cx != _hom.hom_count(D, X):
            return NoCoreflection("fails-up-to-bound", [cand], {"decidable": D.to_json(), "count_mismatch": True})
    return Coreflection(CX, beta, cand, bound, checked)


# -- reflection ----------------------------------------------------------------------

@dataclass
class DecReflection:
    quotient: Presheaf
    unit: PresheafMap       # X -> quotient, epic


class _Classes:
    def __init__(self, X: Presheaf):
        self.parent = {(c, x): (c, x) for c, x in X.elements()}

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ekey(rb[1]) < ekey(ra[1]):
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def dec_reflection(X: Presheaf) -> DecReflection:
    """Least congruence making every restriction map injective, and the quotient.

    Two rules are applied until nothing changes: merged elements have merged
    restrictions (so the quotient is a presheaf), and elements with merged
    restrictions along some morphism are merged (so it is decidable).
    """
    C = X.site
    uf = _Classes(X)
    changed = True
    while changed:
        changed = False
        for f, (c, d) in C.morphisms.items():
            act = X.action[f]
            ys = X.carrier[d]
            for i, y1 in enumerate(ys):
                for y2 in ys[i + 1:]:
                    same_d = uf.find((d, y1)) == uf.find((d, y2))
                    same_c = uf.find((c, act[y1])) == uf.find((c, act[y2]))
                    if same_d and not same_c:
                        changed |= uf.union((c, act[y1]), (c, act[y2]))
                    elif same_c and not same_d:
                        changed |= uf.union((d, y1), (d, y2))
    rep = {(c, x): uf.find((c, x))[1] for c, x in X.elements()}
    carrier = {c: {rep[(c, x)] for x in X.carrier[c]} for c in C.objects}
    action = {f: {rep[(d, y)]: rep[(c, X.action[f][y])] for y in X.carrier[d]}
              for f, (c, d) in C.morphisms.items()}
    Q = Presheaf(C, carrier, action, check=False)
    unit = PresheafMap(X, Q, {c: {x: rep[(c, x)] for x in X.carrier[c]} for c in C.objects}, check=False)
    return DecReflection(Q, unit)


# -- the decidable part through every point ------------------------------------------

@dataclass
class McLartyResult:
    subobject: Subobject | None        # the unique candidate, when unique
    candidates: list                   # all maximal decidable subobjects containing every point
    points: list                       # global elements, as sections {object: element}
    degenerate: bool                   # X has no global elements

    @property
    def unique(self) -> bool:
        return self.subobject is not None


def global_sections(X: Presheaf) -> list[dict]:
    return [{c: m.comp[c][()] for c in X.site.objects} for m in _hom.iter_homs(terminal(X.site), X)]


def mclarty_subobject(X: Presheaf) -> McLartyResult:
    """Maximal decidable sub-presheaves through which every global element factors."""
    pts = global_sections(X)
    dec = [u for u in decidable_subobjects(X)
           if all(p[c] in u.parts[c] for p in pts for c in X.site.objects)]
    cands = _maximal(dec)
    return McLartyResult(cands[0] if len(cands) == 1 else None, cands, pts, not pts)


def factor_through(m: PresheafMap, beta: PresheafMap) -> PresheafMap | None:
    """The unique ``g`` with ``beta . g = m`` for a mono ``beta``, if it exists."""
    inv = {c: {v: k for k, v in beta.comp[c].items()} for c in beta.comp}
    comp = {}
    for c, mc in m.comp.items():
        row = {}
        for x, y in mc.items():
            if y not in inv[c]:
                return None
            row[x] = inv[c][y]
        comp[c] = row
    g = PresheafMap(m.dom, beta.dom, comp, check=False)
    return g if compose(beta, g) == m else None
