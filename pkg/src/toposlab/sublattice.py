"""Sub(X) as a Heyting algebra, the double-negation topology, and sheaves for it."""
from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .fincat import FinCategory, ekey
from .presheaf import hom as _hom
from .presheaf.core import Presheaf, PresheafError, PresheafMap, SearchTooLarge, compose, identity, yoneda
from .presheaf.limits import diagonal_subobject, kernel_pair, product, quotient
from .presheaf.omega import OmegaData, classify, omega, pullback_top
from .presheaf.subobject import Subobject, image


class TopologyError(AssertionError):
    """A topology operator broke one of its laws; indicates a bug in Omega."""


# -- the lattice ----------------------------------------------------------------

def _links(X: Presheaf):
    C = X.site
    down: dict = {}
    up: dict = {(c, x): set() for c, x in X.elements()}
    for c, x in X.elements():
        ds = {(C.src(f), X.action[f][x]) for f in C.into(c)}
        ds.discard((c, x))
        down[(c, x)] = ds
        for e in ds:
            up[e].add((c, x))
    return down, up


@functools.lru_cache(maxsize=256)
def subobjects_of(X: Presheaf, limit: int | None = None) -> tuple[Subobject, ...]:
    """Every sub-presheaf of ``X``, ordered by size and then by contents.

    Backtracks over elements; putting ``x`` in forces its restrictions in and
    leaving it out forces out every element restricting to it.
    """
    bound = _hom.MAX_ENUM if limit is None else limit
    elems = X.elements()
    if len(elems) < 64 and 2 ** len(elems) > bound:
        raise SearchTooLarge(f"Sub({X!r})", 2 ** len(elems), bound)
    down, up = _links(X)
    state: dict = {}
    out = []

    def force(e, val, trail):
        stack = [e]
        while stack:
            a = stack.pop()
            cur = state.get(a)
            if cur is None:
                state[a] = val
                trail.append(a)
                stack.extend(down[a] if val else up[a])
            elif cur != val:
                return False
        return True

    def rec(i):
        while i < len(elems) and elems[i] in state:
            i += 1
        if i == len(elems):
            parts: dict = {c: set() for c in X.site.objects}
            for (c, x), v in state.items():
                if v:
                    parts[c].add(x)
            out.append(Subobject(X, parts, check=False))
            return
        for val in (False, True):
            trail: list = []
            if force(elems[i], val, trail):
                rec(i + 1)
            for a in trail:
                del state[a]

    rec(0)
    out.sort(key=lambda u: (u.size(), ekey(u.key())))
    return tuple(out)


def meet(u: Subobject, v: Subobject) -> Subobject:
    return Subobject(u.ambient, {c: u.parts[c] & v.parts[c] for c in u.parts}, check=False)


def join(u: Subobject, v: Subobject) -> Subobject:
    return Subobject(u.ambient, {c: u.parts[c] | v.parts[c] for c in u.parts}, check=False)


def implies(u: Subobject, v: Subobject) -> Subobject:
    """``x`` is in ``u => v`` at ``c`` when every restriction of ``x`` lying in ``u`` lies in ``v``."""
    X = u.ambient
    C = X.site
    parts = {}
    for c in C.objects:
        keep = set()
        for x in X.carrier[c]:
            ok = True
            for f in C.into(c):
                d = C.src(f)
                y = X.action[f][x]
                if y in u.parts[d] and y not in v.parts[d]:
                    ok = False
                    break
            if ok:
                keep.add(x)
        parts[c] = keep
    return Subobject(X, parts, check=False)


def negation(u: Subobject) -> Subobject:
    return implies(u, Subobject.empty(u.ambient))


@dataclass
class HeytingOps:
    """The Heyting algebra structure of ``Sub(X)``."""

    ambient: Presheaf

    @property
    def elements(self) -> tuple[Subobject, ...]:
        return subobjects_of(self.ambient)

    @property
    def top(self) -> Subobject:
        return Subobject.full(self.ambient)

    @property
    def bottom(self) -> Subobject:
        return Subobject.empty(self.ambient)

    meet = staticmethod(meet)
    join = staticmethod(join)
    implies = staticmethod(implies)
    negation = staticmethod(negation)


def heyting_ops(X: Presheaf) -> HeytingOps:
    return HeytingOps(X)


@dataclass
class Complemented:
    complemented: bool
    complement: Subobject                 # the Heyting negation
    join: Subobject                       # u v not-u; full iff complemented
    missing: list = field(default_factory=list)   # elements outside the join

    def __bool__(self):
        return self.complemented


def is_complemented(u: Subobject) -> Complemented:
    """``u`` is complemented iff ``u`` joined with its negation is everything.

    ``u`` and its negation are always disjoint, so in that case ``X`` is their
    coproduct.
    """
    nu = negation(u)
    j = join(u, nu)
    X = u.ambient
    missing = [(c, x) for c, x in X.elements() if x not in j.parts[c]]
    return Complemented(not missing, nu, j, missing)


# -- Lawvere-Tierney topologies ----------------------------------------------------

@dataclass(frozen=True, eq=False)
class LTTopology:
    site: FinCategory
    j: PresheafMap          # Omega -> Omega
    omega: OmegaData

    def apply(self, c: str, S):
        return self.j.comp[c][tuple(S)]

    def is_dense_sieve(self, c: str, S) -> bool:
        return self.apply(c, S) == self.omega.top_at(c)

    def is_closed_sieve(self, c: str, S) -> bool:
        return self.apply(c, S) == tuple(S)

    def dense_sieves(self, c: str) -> list:
        return [S for S in self.omega.presheaf.carrier[c] if self.is_dense_sieve(c, S)]

    def least_dense_sieve(self, c: str):
        """Dense sieves are closed under intersection, so on a finite site there is a least one."""
        ds = self.dense_sieves(c)
        least = set(ds[0])
        for S in ds[1:]:
            least &= set(S)
        least = tuple(sorted(least))
        if not self.is_dense_sieve(c, least):
            raise TopologyError(f"dense sieves on {c} are not closed under intersection")
        return least

    def law_failures(self) -> list[str]:
        """Check ``j top = top``, ``j j = j`` and ``j`` commutes with meets."""
        om, C, j = self.omega, self.site, self.j
        bad = []
        for c in C.objects:
            top = om.top_at(c)
            if j.comp[c][top] != top:
                bad.append(f"j(top) != top at {c}")
            for S in om.presheaf.carrier[c]:
                if j.comp[c][j.comp[c][S]] != j.comp[c][S]:
                    bad.append(f"j not idempotent at {c} on {S}")
                for T in om.presheaf.carrier[c]:
                    m = om.meet.comp[c][(S, T)]
                    jm = om.meet.comp[c][(j.comp[c][S], j.comp[c][T])]
                    if j.comp[c][m] != jm:
                        bad.append(f"j does not preserve the meet at {c} of {S} and {T}")
        try:
            j.validate()
        except PresheafError as exc:
            bad.append(f"j is not natural: {exc}")
        return bad

    def is_identity(self) -> bool:
        return all(S == T for c in self.site.objects for S, T in self.j.comp[c].items())


@functools.lru_cache(maxsize=None)
def negneg_topology(C: FinCategory) -> LTTopology:
    om = omega(C)
    j = compose(om.neg, om.neg)
    top = LTTopology(C, j, om)
    bad = top.law_failures()
    if bad:
        raise TopologyError("; ".join(bad[:3]))
    return top


def closure(u: Subobject, j: LTTopology) -> Subobject:
    """``j``-closure: classify ``u``, apply ``j``, pull back truth."""
    return pullback_top(compose(j.j, classify(u)))


def is_dense(u: Subobject, j: LTTopology) -> bool:
    return closure(u, j).is_full()


def is_closed(u: Subobject, j: LTTopology) -> bool:
    return closure(u, j) == u


def sieve_subobject(C: FinCategory, c: str, S) -> Subobject:
    """A sieve on ``c`` as a sub-presheaf of ``y(c)``."""
    yc = yoneda(C, c)
    S = set(S)
    return Subobject(yc, {d: {g for g in yc.carrier[d] if g in S} for d in C.objects}, check=False)


# -- separated objects and sheaves -------------------------------------------------

@dataclass
class SheafStatus:
    separated: bool
    sheaf: bool
    method: str                 # "exact" or "bounded"
    witness: dict | None = None
    checked: int = 0            # dense inclusions examined

    def to_json(self) -> dict:
        out = {"separated": self.separated, "sheaf": self.sheaf, "method": self.method}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def separation_witness(X: Presheaf, j: LTTopology):
    """A pair in the closure of the diagonal that is not on the diagonal, or ``None``."""
    D = diagonal_subobject(X)
    cl = closure(D, j)
    for c in X.site.objects:
        extra = sorted(cl.parts[c] - D.parts[c], key=ekey)
        if extra:
            return {"object": c, "pair": list(extra[0])}
    return None


def _restriction_to_sieve(X: Presheaf, c: str, S):
    """Map ``X(c) -> Hom(S, X)`` sending ``x`` to its family of restrictions, as codes."""
    C = X.site
    U = sieve_subobject(C, c, S).as_presheaf()
    families = {m.code(): m for m in _hom.iter_homs(U, X)}
    restrict = {}
    for x in X.carrier[c]:
        code = tuple(tuple(X.action[g][x] for g in U.carrier[d]) for d in C.objects)
        restrict[x] = code
    return U, families, restrict


def sheaf_status(X: Presheaf, j: LTTopology) -> SheafStatus:
    """Exact test: separated iff the diagonal is closed; a sheaf iff for every
    object ``c`` and every dense sieve ``S`` on ``c`` each matching family on
    ``S`` is the restriction of exactly one element of ``X(c)``."""
    w = separation_witness(X, j)
    separated = w is None
    checked = 0
    for c in X.site.objects:
        for S in j.dense_sieves(c):
            checked += 1
            U, families, restrict = _restriction_to_sieve(X, c, S)
            hit: dict = {}
            for x, code in restrict.items():
                if code in hit:
                    return SheafStatus(separated, False, "exact",
                                       w or {"object": c, "sieve": list(S), "same_family": [hit[code], x]},
                                       checked)
                hit[code] = x
            unmatched = [code for code in families if code not in hit]
            if unmatched:
                fam = families[unmatched[0]]
                return SheafStatus(separated, False, "exact",
                                   {"object": c, "sieve": list(S), "family_without_amalgamation": fam.to_json()},
                                   checked)
    return SheafStatus(separated, True, "exact", None, checked)


def sheaf_status_bounded(X: Presheaf, j: LTTopology, tests) -> SheafStatus:
    """Orthogonality test against the given objects: for each ``Y`` in ``tests``
    and each dense sub-presheaf ``U`` of ``Y``, restriction ``Hom(Y, X) -> Hom(U, X)``
    must be a bijection."""
    w = separation_witness(X, j)
    checked = 0
    for Y in tests:
        for u in subobjects_of(Y):
            if not is_dense(u, j):
                continue
            checked += 1
            U = u.as_presheaf()
            incl = u.inclusion()
            restricted: dict = {}
            for m in _hom.iter_homs(Y, X):
                r = compose(m, incl).code()
                if r in restricted:
                    return SheafStatus(w is None, False, "bounded",
                                       {"test": Y.to_json(), "dense": u.to_json(), "two_extensions": True}, checked)
                restricted[r] = m
            for m in _hom.iter_homs(U, X):
                if m.code() not in restricted:
                    return SheafStatus(w is None, False, "bounded",
                                       {"test": Y.to_json(), "dense": u.to_json(),
                                        "no_extension_for": m.to_json()}, checked)
    return SheafStatus(w is None, w is None, "bounded", w, checked)


# -- sheafification -----------------------------------------------------------------

@dataclass
class Sheafification:
    sheaf: Presheaf
    unit: PresheafMap             # X -> sheaf
    separated: Presheaf           # X / closure of the diagonal
    quotient_map: PresheafMap     # X -> separated
    embedding: PresheafMap        # separated -> sheaf (dense mono)


def closed_power(S: Presheaf, j: LTTopology) -> Presheaf:
    """``Omega_j^S``: at ``c`` the ``j``-closed sub-presheaves of ``y(c) x S``,
    each encoded as the sorted tuple of its ``(d, (g, s))`` members."""
    C = S.site
    carrier = {}
    for c in C.objects:
        P = product(yoneda(C, c), S).apex
        carrier[c] = [_encode(u) for u in subobjects_of(P) if is_closed(u, j)]
    action = {}
    for f, (c1, c) in C.morphisms.items():
        act = {}
        for phi in carrier[c]:
            members = set(phi)
            act[phi] = tuple(sorted(((d, (g, s)) for d in C.objects for g in C.hom(d, c1)
                                     for s in S.carrier[d] if (d, (C.compose(f, g), s)) in members), key=ekey))
        action[f] = act
    return Presheaf(C, carrier, action, check=False)


def _encode(u: Subobject):
    return tuple(sorted(((d, t) for d in u.ambient.site.objects for t in u.parts[d]), key=ekey))


def sheafify(X: Presheaf, j: LTTopology) -> Sheafification:
    """Quotient by the closed diagonal, embed the separated quotient into
    ``Omega_j^S`` by singletons, and take the closure of the image.

    A sheaf comes back unchanged with identity unit; its closed power can be
    large and adds nothing."""
    C = X.site
    if sheaf_status(X, j).sheaf:
        i = identity(X)
        return Sheafification(X, i, X, i, i)
    R = closure(diagonal_subobject(X), j)
    q = quotient(X, R).legs[0]
    S = q.cod
    W = closed_power(S, j)
    single = {}
    for c in C.objects:
        yc = yoneda(C, c)
        P = product(yc, S).apex
        m = {}
        for s in S.carrier[c]:
            graph = Subobject(P, {d: {(g, S.action[g][s]) for g in yc.carrier[d]} for d in C.objects},
                              check=False)
            m[s] = _encode(closure(graph, j))
        single[c] = m
    sing = PresheafMap(S, W, single, check=False)
    F_sub = closure(image(sing), j)
    F = F_sub.as_presheaf()
    emb = PresheafMap(S, F, single, check=False)
    unit = compose(emb, q)
    return Sheafification(F, unit, S, q, emb)


# -- independent constructions used as oracles ----------------------------------------

def plus_construction(X: Presheaf, j: LTTopology) -> tuple[Presheaf, PresheafMap]:
    """``X+(c)`` = matching families on the least dense sieve on ``c``.

    The least dense sieve is cofinal among dense sieves, so the usual colimit
    over covers is just its value there.
    """
    C = X.site
    least = {c: j.least_dense_sieve(c) for c in C.objects}
    carrier = {}
    for c in C.objects:
        U = sieve_subobject(C, c, least[c]).as_presheaf()
        fams = []
        for m in _hom.iter_homs(U, X):
            fams.append(tuple((g, m.comp[C.src(g)][g]) for g in least[c]))
        carrier[c] = fams
    action = {}
    for f, (c1, c) in C.morphisms.items():
        act = {}
        for fam in carrier[c]:
            val = dict(fam)
            act[fam] = tuple((g, val[C.compose(f, g)]) for g in least[c1])
        action[f] = act
    Xp = Presheaf(C, carrier, action, check=False)
    unit = PresheafMap(X, Xp, {c: {x: tuple((g, X.action[g][x]) for g in least[c]) for x in X.carrier[c]}
                               for c in C.objects}, check=False)
    return Xp, unit


def plus_plus(X: Presheaf, j: LTTopology) -> tuple[Presheaf, PresheafMap]:
    X1, u1 = plus_construction(X, j)
    X2, u2 = plus_construction(X1, j)
    return X2, compose(u2, u1)


def is_sheafification_of(X: Presheaf, eta: PresheafMap, j: LTTopology) -> list[str]:
    """Characterisation check: the target is a sheaf, the kernel pair of ``eta`` is
    the closed diagonal and the image of ``eta`` is dense.  Returns failures."""
    bad = []
    if not sheaf_status(eta.cod, j).sheaf:
        bad.append("target is not a sheaf")
    if kernel_pair(eta) != closure(diagonal_subobject(X), j):
        bad.append("kernel pair differs from the closed diagonal")
    if not is_dense(image(eta), j):
        bad.append("image is not dense")
    return bad


def least_sheaf_search(X: Presheaf, j: LTTopology, candidates) -> tuple[Presheaf, PresheafMap] | None:
    """Brute force: the smallest candidate sheaf ``F`` with a map ``X -> F`` whose
    kernel pair is the closed diagonal and whose image is dense.  ``None`` when no
    candidate qualifies (the answer lies outside the candidate window)."""
    R = closure(diagonal_subobject(X), j)
    for F in sorted(candidates, key=lambda P: (P.size(), P.sizes())):
        if not sheaf_status(F, j).sheaf:
            continue
        for eta in _hom.iter_homs(X, F):
            if kernel_pair(eta) == R and is_dense(image(eta), j):
                return F, eta
    return None


def unit_matches(a: PresheafMap, b: PresheafMap) -> PresheafMap | None:
    """An iso ``phi`` between the codomains with ``phi . a = b``, if any."""
    if a.dom != b.dom or a.cod.sizes() != b.cod.sizes():
        return None
    for phi in _hom.iter_homs(a.cod, b.cod, injective=True):
        if compose(phi, a) == b:
            return phi
    return None
