"""Verdicts and per-morphism instance results."""
from __future__ import annotations

from dataclasses import dataclass, field

STATUSES = ("pass", "fail", "vacuous", "unknown")


@dataclass
class Instance:
    """The outcome of one check on one geometric morphism."""

    morphism: str
    status: str
    witness: dict | None = None
    hypotheses: dict = field(default_factory=dict)     # name -> "true" / "false" / "unknown"
    note: str = ""
    checked: int = 0

    def to_json(self) -> dict:
        out = {"morphism": self.morphism, "status": self.status, "hypotheses": self.hypotheses,
               "checked": self.checked}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Verdict:
    id: str
    topos: str
    status: str
    bound: int
    millis: int = 0
    witness: dict | None = None
    instances: list = field(default_factory=list)
    probe: dict | None = None          # extra experiments, reported apart from the status

    def to_json(self) -> dict:
        out = {"id": self.id, "topos": self.topos, "status": self.status, "bound": self.bound,
               "millis": self.millis, "instances": [i.to_json() for i in self.instances]}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.probe is not None:
            out["probe"] = self.probe
        return out


def aggregate(instances: list[Instance]) -> tuple[str, dict | None]:
    """fail beats unknown beats pass beats vacuous; the witness comes from the deciding instance."""
    for status in ("fail", "unknown", "pass", "vacuous"):
        for inst in instances:
            if inst.status == status:
                w = inst.witness
                if status == "vacuous":
                    w = {"morphism": inst.morphism, "hypotheses": inst.hypotheses, **(w or {})}
                elif w is not None:
                    w = {"morphism": inst.morphism, **w}
                return status, w
    return "vacuous", {"reason": "no applicable morphism"}
