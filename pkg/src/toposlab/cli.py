"""Command-line front end.

    toposlab sites [--format json]
    toposlab check <site|site.json|corpus> [--suite all|<id>] [--bound N]
    toposlab inspect <site> <presheaf.json | inline json>

Exit status: 0 when no verdict failed, 1 when one did, 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from .decidable import NoCoreflection, coreflection_candidate, is_decidable
from .fincat import CategoryError, named_sites, site_by_name
from .presheaf import hom as _hom
from .presheaf.core import PresheafError, SearchTooLarge
from .presheaf.io import ParseError, load_json, load_site_file, presheaf_from_json
from .presheaf.limits import diagonal_subobject
from .presheaf.omega import omega
from .sublattice import closure, negneg_topology, separation_witness, sheaf_status, sheafify
from .theorems import CORPUS, LABELS, CheckConfig, build_topos, list_statements, load_topos, run_check, summarize

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class CliConfig:
    command: str
    target: str | None = None
    suite: str = "all"
    bound: int = 3
    format: str = "text"
    seed: int = 0
    max_enum: int | None = None
    obj: str | None = None


class UsageError(Exception):
    pass


def _positive(s: str) -> int:
    try:
        n = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
    if n <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {n}")
    return n


def default_bound() -> int:
    raw = os.environ.get("TOPOSLAB_BOUND")
    if raw is None:
        return 3
    try:
        return _positive(raw)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"TOPOSLAB_BOUND: {exc}") from None


def build_parser(bound: int) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--bound", type=_positive, default=bound, help="elements per site object (default %(default)s)")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled pairs")
    common.add_argument("--max-enum", type=_positive, default=None, help="candidate budget for hom-set searches")

    ap = argparse.ArgumentParser(prog="toposlab", description="Finite presheaf topos laboratory.")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("sites", parents=[common], help="list the standard sites")
    c = sub.add_parser("check", parents=[common], help="run statements on a site")
    c.add_argument("target", help="a site name, a site JSON file, or 'corpus' for every corpus site")
    c.add_argument("--suite", default="all", help="'all' or one statement id")
    i = sub.add_parser("inspect", parents=[common], help="describe one presheaf")
    i.add_argument("target", help="a site name")
    i.add_argument("obj", help="a presheaf JSON file or an inline JSON object")
    return ap


# -- sites ----------------------------------------------------------------------------------

def cmd_sites(cfg: CliConfig) -> tuple[int, dict]:
    rows = []
    for name in named_sites():
        C = site_by_name(name)
        om = omega(C)
        rows.append({"name": name, "objects": len(C.objects), "morphisms": len(C.morphisms),
                     "omega": {c: len(om.presheaf.carrier[c]) for c in C.objects},
                     "corpus": name in CORPUS, "label": LABELS.get(name, "")})
    return EXIT_OK, {"sites": rows}


def _text_sites(report: dict) -> str:
    lines = [f"{'site':18} {'obj':>3} {'mor':>3}  |Omega| per object"]
    for r in report["sites"]:
        om = ", ".join(f"{c}:{n}" for c, n in r["omega"].items())
        tag = f"  [{r['label']}]" if r["corpus"] else ""
        lines.append(f"{r['name']:18} {r['objects']:>3} {r['morphisms']:>3}  {om}{tag}")
    return "\n".join(lines)


# -- check -----------------------------------------------------------------------------------

def _resolve_topos(target: str, bound: int):
    if target in named_sites():
        return load_topos(target, bound)
    p = Path(target)
    if p.suffix == ".json" or p.exists():
        C = load_site_file(p)
        return build_topos(C, bound, C.name or p.stem)
    raise UsageError(f"unknown site {target!r}; known: {', '.join(named_sites())}")


def _check_one(target: str, ids, ccfg: CheckConfig, explore: bool):
    try:
        T = _resolve_topos(target, ccfg.bound)
    except SearchTooLarge as exc:
        rows = [{"id": sid, "topos": target, "status": "unknown", "witness": {"reason": str(exc)},
                 "bound": ccfg.bound, "millis": 0} for sid in ids]
        return rows, []
    from .theorems.checks import explore_stably_precohesive
    rows = [run_check(sid, T, ccfg).to_json() for sid in ids]
    return rows, [explore_stably_precohesive(T, ccfg)] if explore else []


def cmd_check(cfg: CliConfig) -> tuple[int, dict]:
    if cfg.suite != "all" and cfg.suite not in list_statements():
        raise UsageError(f"unknown statement {cfg.suite!r}; known: all, {', '.join(list_statements())}")
    ids = list_statements() if cfg.suite == "all" else [cfg.suite]
    ccfg = CheckConfig(bound=cfg.bound, seed=cfg.seed)
    targets = list(CORPUS) if cfg.target == "corpus" else [cfg.target]
    verdicts, exploratory = [], []
    for t in targets:
        rows, ex = _check_one(t, ids, ccfg, cfg.suite == "all")
        verdicts += rows
        exploratory += ex
    report = {"config": asdict(ccfg), "topos": cfg.target, "verdicts": verdicts, "summary": summarize(verdicts)}
    if exploratory:
        report["exploratory"] = exploratory
    code = EXIT_FAIL if any(v["status"] == "fail" for v in verdicts) else EXIT_OK
    return code, report


def _text_check(report: dict) -> str:
    lines = []
    for v in report["verdicts"]:
        lines.append(f"{v['topos']:16} {v['id']:34} {v['status'].upper():8} bound={v['bound']} {v['millis']}ms")
        if "witness" in v:
            lines.append(f"    witness: {json.dumps(v['witness'], sort_keys=True)}")
        for inst in v.get("instances", []):
            extra = f" -- {inst['note']}" if inst.get("note") else ""
            lines.append(f"    {inst['morphism']}: {inst['status']} (hypotheses {inst['hypotheses']}){extra}")
        if "probe" in v:
            lines.append(f"    probe: {json.dumps(v['probe'], sort_keys=True)}")
    for e in report.get("exploratory", []):
        lines.append(f"exploratory: {json.dumps(e, sort_keys=True)}")
    return "\n".join(lines)


# -- inspect ---------------------------------------------------------------------------------

def _load_object(spec: str, C):
    s = spec.strip()
    if s.startswith("{"):
        try:
            data = json.loads(s)
        except json.JSONDecodeError as exc:
            raise ParseError(f"<inline>:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    else:
        data = load_json(spec)
    if isinstance(data, dict) and "site" not in data:
        data = {**data, "site": C.name}
    return presheaf_from_json(data, C)


def cmd_inspect(cfg: CliConfig) -> tuple[int, dict]:
    try:
        C = site_by_name(cfg.target)
    except CategoryError as exc:
        raise UsageError(str(exc)) from None
    X = _load_object(cfg.obj, C)
    j = negneg_topology(C)
    out = {"site": C.name, "object": X.to_json(), "sizes": dict(zip(C.objects, X.sizes()))}
    dv = is_decidable(X)
    out["decidable"] = dv.decidable
    if dv.witness is not None:
        out["decidable_witness"] = dv.witness
    cand = coreflection_candidate(X)
    if isinstance(cand, NoCoreflection):
        out["coreflection"] = {"exists": False, "reason": cand.reason,
                               "maximal": [u.to_json() for u in cand.antichain]}
    else:
        CX = cand.as_presheaf()
        out["coreflection"] = {"exists": True, "CX": CX.to_json(), "sizes": dict(zip(C.objects, CX.sizes()))}
    diag = diagonal_subobject(X)
    cl = closure(diag, j)
    out["closure"] = {"diagonal": diag.size(), "closed_diagonal": cl.size(),
                      "separation_witness": separation_witness(X, j)}
    st = sheaf_status(X, j)
    out["sheaf_status"] = st.to_json()
    sh = sheafify(X, j)
    out["sheafification"] = {"sheaf": sh.sheaf.to_json(), "sizes": dict(zip(C.objects, sh.sheaf.sizes())),
                             "unit_monic": sh.unit.is_monic(), "unit_iso": sh.unit.is_iso()}
    return EXIT_OK, out


def _text_inspect(r: dict) -> str:
    sizes = lambda d: ", ".join(f"{c}:{n}" for c, n in d.items())
    cx = r["coreflection"]
    lines = [f"presheaf on {r['site']} with sizes {sizes(r['sizes'])}",
             f"decidable: {'yes' if r['decidable'] else 'no'}"]
    if cx["exists"]:
        lines.append(f"CX: sizes {sizes(cx['sizes'])}")
    else:
        lines.append(f"CX: none ({cx['reason']}, {len(cx['maximal'])} maximal decidable subobjects)")
    c = r["closure"]
    lines.append(f"diagonal: {c['diagonal']} elements, closure {c['closed_diagonal']}; "
                 f"{'separated' if c['separation_witness'] is None else 'not separated'}")
    st = r["sheaf_status"]
    lines.append(f"sheaf: {'yes' if st['sheaf'] else 'no'} ({st['method']})")
    s = r["sheafification"]
    lines.append(f"sheafification: sizes {sizes(s['sizes'])}, unit monic={s['unit_monic']} iso={s['unit_iso']}")
    return "\n".join(lines)


# -- entry point -----------------------------------------------------------------------------

COMMANDS = {"sites": (cmd_sites, _text_sites), "check": (cmd_check, _text_check),
            "inspect": (cmd_inspect, _text_inspect)}


def main(argv=None) -> int:
    try:
        bound = default_bound()
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    ap = build_parser(bound)
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    cfg = CliConfig(**{k: v for k, v in vars(ns).items() if k in CliConfig.__dataclass_fields__})
    if cfg.max_enum is not None:
        _hom.set_max_enum(cfg.max_enum)
    run, text = COMMANDS[cfg.command]
    try:
        code, report = run(cfg)
    except (ParseError, PresheafError, CategoryError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True, default=str))
    else:
        print(text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
