"""Shrinking a failing object to a smaller one that still fails."""
from __future__ import annotations

from typing import Callable

from ..presheaf.core import Presheaf
from ..presheaf.subobject import Subobject


def without(X: Presheaf, c: str, x) -> Presheaf:
    """The largest sub-presheaf of ``X`` missing ``(c, x)``: drop everything restricting to it."""
    C = X.site
    drop = {(c, x)}
    changed = True
    while changed:
        changed = False
        for d in C.objects:
            for y in X.carrier[d]:
                if (d, y) in drop:
                    continue
                if any((C.src(f), X.action[f][y]) in drop for f in C.into(d)):
                    drop.add((d, y))
                    changed = True
    parts = {d: {y for y in X.carrier[d] if (d, y) not in drop} for d in C.objects}
    return Subobject(X, parts, check=False).as_presheaf()


def shrink(X: Presheaf, fails: Callable[[Presheaf], bool], max_steps: int = 200) -> Presheaf:
    """Remove elements one at a time while ``fails`` keeps holding."""
    steps = 0
    progress = True
    while progress and steps < max_steps:
        progress = False
        for c, x in X.elements():
            Y = without(X, c, x)
            steps += 1
            try:
                bad = fails(Y)
            except Exception:
                bad = False
            if bad:
                X = Y
                progress = True
                break
    return X
