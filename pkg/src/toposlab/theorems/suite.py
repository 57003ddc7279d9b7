"""Running statements over the corpus and collecting a deterministic report."""
from __future__ import annotations

import json
import time
from dataclasses import asdict

from ..presheaf.core import SearchTooLarge
from .checks import GUARDED, CheckConfig, explore_stably_precohesive
from .corpus import CORPUS, Topos, load_topos
from .verdict import Instance, Verdict, aggregate


def list_statements() -> list[str]:
    return list(GUARDED)


def run_check(sid: str, topos: str | Topos, cfg: CheckConfig | None = None) -> Verdict:
    if sid not in GUARDED:
        raise KeyError(f"unknown statement {sid!r}; known: {', '.join(GUARDED)}")
    cfg = cfg or CheckConfig()
    T = load_topos(topos, cfg.bound) if isinstance(topos, str) else topos
    t0 = time.perf_counter()
    instances, probe = GUARDED[sid](T, cfg)
    status, witness = aggregate(instances)
    ms = int((time.perf_counter() - t0) * 1000)
    return Verdict(sid, T.name, status, cfg.bound, ms, witness, instances, probe)


def run_suite(names=CORPUS, cfg: CheckConfig | None = None, ids=None, explore: bool = True) -> dict:
    cfg = cfg or CheckConfig()
    ids = list(ids) if ids else list_statements()
    verdicts = []
    exploratory = []
    for name in names:
        try:
            T = load_topos(name, cfg.bound) if isinstance(name, str) else name
        except SearchTooLarge as exc:
            for sid in ids:
                verdicts.append(Verdict(sid, str(name), "unknown", cfg.bound, 0, {"reason": str(exc)},
                                        [Instance(str(name), "unknown", {"reason": str(exc)})]))
            continue
        for sid in ids:
            verdicts.append(run_check(sid, T, cfg))
        if explore:
            exploratory.append(explore_stably_precohesive(T, cfg))
    return {"config": asdict(cfg), "verdicts": [v.to_json() for v in verdicts],
            "summary": summarize(verdicts), "exploratory": exploratory}


def summarize(verdicts) -> dict:
    """Per statement: counts of each status and whether some topos gave a genuine pass."""
    out = {}
    for v in verdicts:
        d = v if isinstance(v, dict) else v.to_json()
        row = out.setdefault(d["id"], {"pass": 0, "fail": 0, "vacuous": 0, "unknown": 0})
        row[d["status"]] += 1
    return out


def without_timing(report: dict) -> dict:
    """The report with wall-clock fields removed, for comparing runs."""
    r = json.loads(json.dumps(report))
    for v in r["verdicts"]:
        v.pop("millis", None)
    return r
