"""Exponentials ``Y^X`` with ``Y^X(c) = Hom(y(c) x X, Y)``."""
from __future__ import annotations

from dataclasses import dataclass

from .core import Presheaf, PresheafError, PresheafMap, yoneda
from .hom import iter_homs
from .limits import product


@dataclass
class Exponential:
    base: Presheaf       # X
    target: Presheaf     # Y
    presheaf: Presheaf   # Y^X
    ev: PresheafMap      # Y^X x X -> Y
    _domains: dict       # c -> y(c) x X
    _index: dict         # c -> d -> {(g, x): position}

    def decode(self, c: str, phi) -> PresheafMap:
        """The map ``y(c) x X -> Y`` encoded by an element of ``Y^X(c)``."""
        D = self._domains[c]
        return PresheafMap(D, self.target, {d: dict(zip(D.carrier[d], phi[k]))
                                            for k, d in enumerate(D.site.objects)}, check=False)

    def encode(self, c: str, m: PresheafMap):
        return m.code()

    def lookup(self, c: str, phi, d: str, g, x):
        k = self._domains[c].site.objects.index(d)
        return phi[k][self._index[c][d][(g, x)]]

    def curry(self, Z: Presheaf, psi: PresheafMap) -> PresheafMap:
        """Transpose ``psi: Z x X -> Y`` to ``Z -> Y^X``."""
        if psi.dom != product(Z, self.base).apex:
            raise PresheafError("curry expects a map out of Z x X")
        C = Z.site
        comp = {}
        for c in C.objects:
            D = self._domains[c]
            m = {}
            for z in Z.carrier[c]:
                m[z] = tuple(tuple(psi.comp[d][(Z.action[g][z], x)] for g, x in D.carrier[d]) for d in C.objects)
            comp[c] = m
        return PresheafMap(Z, self.presheaf, comp, check=False)

    def uncurry(self, chi: PresheafMap) -> PresheafMap:
        """Transpose ``Z -> Y^X`` to ``Z x X -> Y``."""
        Z = chi.dom
        P = product(Z, self.base).apex
        C = Z.site
        comp = {}
        for c in C.objects:
            idc = C.id(c)
            comp[c] = {(z, x): self.lookup(c, chi.comp[c][z], c, idc, x) for z, x in P.carrier[c]}
        return PresheafMap(P, self.target, comp, check=False)


def exponential(X: Presheaf, Y: Presheaf, limit: int | None = None) -> Exponential:
    C = X.site
    domains, index, carrier = {}, {}, {}
    for c in C.objects:
        D = product(yoneda(C, c), X).apex
        domains[c] = D
        index[c] = {d: {t: i for i, t in enumerate(D.carrier[d])} for d in C.objects}
        carrier[c] = [m.code() for m in iter_homs(D, Y, limit)]
    pos = {d: k for k, d in enumerate(C.objects)}
    action = {}
    for h, (c1, c) in C.morphisms.items():
        D1 = domains[c1]
        act = {}
        for phi in carrier[c]:
            act[phi] = tuple(tuple(phi[pos[d]][index[c][d][(C.compose(h, g), x)]] for g, x in D1.carrier[d])
                             for d in C.objects)
        action[h] = act
    E = Presheaf(C, carrier, action, check=False)
    P = product(E, X).apex
    ev_comp = {}
    for c in C.objects:
        idc = C.id(c)
        ev_comp[c] = {(phi, x): phi[pos[c]][index[c][c][(idc, x)]] for phi, x in P.carrier[c]}
    ev = PresheafMap(P, Y, ev_comp, check=False)
    return Exponential(X, Y, E, ev, domains, index)
