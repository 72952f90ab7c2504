"""Check reports shared by every verifier in the package.

A report is a named list of per-axiom verdicts.  Failed matrix identities
carry the first differing coordinate so hand-written instances can be
debugged; invertibility-style checks carry their witness matrices in the
``data`` dict.  The conventions header is attached to every report so that
leg orderings are never ambiguous when comparing constructions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .exactalg import FpMatrix

CONVENTIONS = (
    "column vectors; g@f composes f first; tensor legs flatten row-major "
    "((i,j) -> i*dim2+j); actions are right (h: X(x)A -> X) and Hopf-module "
    "coactions are right (theta: X -> X(x)C); the generalized layer uses left "
    "coactions (rho: B -> A(x)B) and left monads B(x)-, A(x)-; entwining base "
    "maps: right side lambda0: C(x)A -> A(x)C, left side lambda0: B(x)Z -> Z(x)B"
)


class PreconditionError(ValueError):
    """A documented precondition of an operation does not hold."""


class UnsupportedError(ValueError):
    """The input is valid but outside the supported scope."""


@dataclass
class CheckResult:
    name: str
    passed: bool
    counterexample: Optional[dict] = None
    note: str = ""

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"


def equality_check(name: str, lhs: FpMatrix, rhs: FpMatrix) -> CheckResult:
    """Exact matrix equality with the first differing coordinate on failure."""
    if lhs.p != rhs.p or lhs.shape != rhs.shape:
        return CheckResult(
            name,
            False,
            note=f"shape mismatch: {lhs.shape} mod {lhs.p} vs {rhs.shape} mod {rhs.p}",
        )
    diff = np.argwhere(lhs.a != rhs.a)
    if diff.size == 0:
        return CheckResult(name, True)
    i, j = (int(x) for x in diff[0])
    return CheckResult(
        name,
        False,
        counterexample={"row": i, "col": j, "lhs": lhs.entry(i, j), "rhs": rhs.entry(i, j)},
    )


@dataclass
class Report:
    title: str
    subject: str = ""
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    conventions: str = CONVENTIONS

    def add(self, result: CheckResult) -> bool:
        self.checks.append(result)
        return result.passed

    def require_equal(self, name: str, lhs: FpMatrix, rhs: FpMatrix) -> bool:
        return self.add(equality_check(name, lhs, rhs))

    def add_flag(self, name: str, passed: bool, note: str = "") -> bool:
        return self.add(CheckResult(name, bool(passed), note=note))

    def merge(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(
                CheckResult(prefix + c.name, c.passed, c.counterexample, c.note)
            )
        for k, v in other.data.items():
            self.data.setdefault(prefix + k if prefix else k, v)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_status(self) -> int:
        return 0 if self.ok else 1

    def failed_names(self) -> list:
        return [c.name for c in self.checks if not c.passed]
