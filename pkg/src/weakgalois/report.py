"""Check results with counterexample witnesses, and the two pipeline exceptions."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .exactlin import LinMap


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    witness: dict | None = None

    def to_dict(self, verbose: bool = True) -> dict:
        out = {"name": self.name, "ok": self.ok}
        if self.witness is not None and (verbose or not self.ok):
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    """An ordered list of checks plus reported dimensions and extra data.

    ``status`` is ``pass`` exactly when every check is ok, unless it was
    explicitly set to ``not-applicable``.
    """

    title: str = ""
    checks: list = field(default_factory=list)
    dims: dict = field(default_factory=dict)
    data: dict = field(default_factory=dict)
    applicable: bool = True

    @property
    def status(self) -> str:
        if not self.applicable:
            return "not-applicable"
        return "pass" if all(c.ok for c in self.checks) else "fail"

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: "Report", prefix: str = "") -> "Report":
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.ok, c.witness))
        return self

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __getitem__(self, name: str) -> bool:
        return self.get(name).ok

    def names(self) -> list:
        return [c.name for c in self.checks]

    def failed(self) -> list:
        return [c for c in self.checks if not c.ok]

    def to_dict(self, verbose: bool = False) -> dict:
        return {
            "title": self.title,
            "status": self.status,
            "checks": [c.to_dict(verbose) for c in self.checks],
            "dims": dict(self.dims),
            "data": self.data,
        }

    def to_json(self, verbose: bool = False) -> str:
        return json.dumps(self.to_dict(verbose), indent=2, ensure_ascii=False)

    def summary(self) -> str:
        lines = [f"{self.title}: {self.status}"]
        for c in self.checks:
            mark = "ok  " if c.ok else "FAIL"
            line = f"  [{mark}] {c.name}"
            if not c.ok and c.witness:
                extra = {k: v for k, v in c.witness.items() if k not in ("at", "lhs", "rhs")}
                if c.witness.get("at") is not None:
                    line += f"  at {c.witness['at']}"
                elif extra:
                    line += "  " + ", ".join(f"{k}={v}" for k, v in extra.items())
            lines.append(line)
        for k, v in self.dims.items():
            lines.append(f"  dim {k} = {v}")
        return "\n".join(lines)


class HypothesisFailed(Exception):
    """A theorem's hypotheses do not hold: the theorem simply does not apply."""

    def __init__(self, name: str, report: Report | None = None):
        super().__init__(name)
        self.name = name
        self.report = report


class TheoremViolation(AssertionError):
    """A conclusion that must hold under verified hypotheses failed (implementation bug)."""

    def __init__(self, name: str, witness: dict | None = None):
        super().__init__(f"{name}: {witness}" if witness else name)
        self.name = name
        self.witness = witness


def _fmt_col(f: LinMap, j: int) -> list:
    return [f.field.format(x) for x in f.mat[:, j]]


def compare(name: str, lhs: LinMap, rhs: LinMap) -> Check:
    """Check ``lhs == rhs`` as matrices; witness is the first differing input basis vector."""
    if lhs.mat.shape != rhs.mat.shape:
        return Check(
            name,
            False,
            {"at": None, "reason": f"shape {lhs.mat.shape} vs {rhs.mat.shape}"},
        )
    diff = np.nonzero(np.any(lhs.mat != rhs.mat, axis=0))[0]
    if len(diff) == 0:
        return Check(name, True)
    j = int(diff[0])
    at = list(lhs.domain.decode(j)) if lhs.domain.factors else []
    return Check(name, False, {"at": at, "lhs": _fmt_col(lhs, j), "rhs": _fmt_col(rhs, j)})


def truth(name: str, ok: bool, witness: Any = None) -> Check:
    if ok:
        return Check(name, True)
    if witness is not None and not isinstance(witness, dict):
        witness = {"at": witness}
    return Check(name, False, witness or {"at": None})


def require(check: Check) -> Check:
    """Raise :class:`TheoremViolation` if the check failed."""
    if not check.ok:
        raise TheoremViolation(check.name, check.witness)
    return check
