"""JSON input for sites and presheaves.

Element strings are read with ``ast.literal_eval`` so that ``"0"``, ``"(0, 1)"``
or ``"'a'"`` round-trip with :func:`toposlab.fincat.fmt`; anything that is not a
Python literal is kept as the raw string.
"""
from __future__ import annotations

import ast
import json
from pathlib import Path

from ..fincat import CategoryError, FinCategory, build_category, site_by_name
from .core import Presheaf, PresheafError


class ParseError(ValueError):
    """Malformed input file; the message names the location."""


def parse_element(s):
    if not isinstance(s, str):
        if isinstance(s, list):
            return tuple(parse_element(v) for v in s)
        return s
    try:
        v = ast.literal_eval(s)
    except (ValueError, SyntaxError):
        return s
    if isinstance(v, (int, str, tuple)) and not isinstance(v, bool):
        return v
    return s


def resolve_site(spec) -> FinCategory:
    if isinstance(spec, str):
        return site_by_name(spec)
    if isinstance(spec, dict):
        return build_category(spec)
    raise ParseError(f"site must be a name or an inline description, got {type(spec).__name__}")


def presheaf_from_json(data: dict, site: FinCategory | None = None) -> Presheaf:
    """Build and validate a presheaf from the JSON layout
    ``{"site": ..., "carrier": {obj: [...]}, "action": {morphism: {out: in}}}``.

    Actions of identities may be omitted; actions of composites may be omitted
    when the given ones determine them.
    """
    if not isinstance(data, dict):
        raise ParseError("presheaf description must be a JSON object")
    try:
        C = site if site is not None else resolve_site(data["site"])
    except KeyError:
        raise ParseError("presheaf description lacks a 'site' entry") from None
    except CategoryError as exc:
        raise ParseError(f"at 'site': {exc}") from exc
    carrier_raw = data.get("carrier", {})
    for c in carrier_raw:
        if c not in C.objects:
            raise ParseError(f"at 'carrier.{c}': unknown object")
    carrier = {c: [parse_element(x) for x in carrier_raw.get(c, [])] for c in C.objects}
    action = {}
    for f, table in data.get("action", {}).items():
        if f not in C.morphisms:
            raise ParseError(f"at 'action.{f}': unknown morphism")
        if not isinstance(table, dict):
            raise ParseError(f"at 'action.{f}': expected an object mapping elements")
        action[f] = {parse_element(y): parse_element(x) for y, x in table.items()}
    return Presheaf.from_generators(C, carrier, action, check=True)


def load_json(path) -> dict:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def load_presheaf(path, site: FinCategory | None = None) -> Presheaf:
    return presheaf_from_json(load_json(path), site)


def load_site_file(path) -> FinCategory:
    data = load_json(path)
    try:
        return build_category(data)
    except CategoryError as exc:
        raise ParseError(f"{path}: {exc}") from exc


__all__ = ["ParseError", "parse_element", "resolve_site", "presheaf_from_json", "load_presheaf",
           "load_site_file", "PresheafError"]
