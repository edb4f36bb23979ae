"""Pass/fail records for the identity suites."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

from .polyring import Poly, Series, VARIABLES, unpack


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class Report:
    title: str
    checks: List[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> Check:
        c = Check(name, bool(passed), detail)
        self.checks.append(c)
        return c

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "passed": self.ok,
            "checks": [c.to_dict() for c in self.checks],
        }

    def __str__(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.ok else 'FAIL'}"]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name}" + (f" -- {c.detail}" if c.detail and not c.passed else ""))
        return "\n".join(lines)


def monomial_str(exps) -> str:
    parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(VARIABLES, exps) if e]
    return "*".join(parts) or "1"


def first_difference(a: Poly, b: Poly) -> Optional[str]:
    """Smallest monomial (lex) where two polynomials differ, or None if equal."""
    if a == b:
        return None
    keys = set(a.raw) | set(b.raw)
    for k in sorted(keys):
        ca, cb = a.raw.get(k, 0), b.raw.get(k, 0)
        if ca != cb:
            return f"{monomial_str(unpack(k))}: {ca} != {cb}"
    return None


def series_difference(a: Series, b: Series) -> Optional[str]:
    L = min(a.order, b.order)
    for d in range(L + 1):
        diff = first_difference(a[d], b[d])
        if diff:
            return f"grade {d}, {diff}"
    return None
