"""Law-check reports and the bounded enumeration policy shared by all checkers.

Instance spaces are finite products of enumerated carriers.  Small products
are swept exhaustively; products above the policy threshold are sampled with
a seeded generator so reports stay deterministic and honest about coverage.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from .fin_cat import FinMap


@dataclass(frozen=True)
class CheckPolicy:
    """How large an instance family may get before deterministic sampling."""

    exhaustive_threshold: int = 100_000
    sample_size: int = 2000
    seed: int = 0


@dataclass
class LawCheck:
    law: str
    passed: bool
    mode: str  # "exhaustive", "sampled", or "vacuous"
    instances: int
    counterexample: dict | None = None


@dataclass
class Report:
    checks: list[LawCheck] = field(default_factory=list)
    mode: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, law: str) -> LawCheck:
        for c in self.checks:
            if c.law == law:
                return c
        raise KeyError(law)

    def failed_laws(self) -> list[str]:
        return [c.law for c in self.checks if not c.passed]

    def extend(self, other: "Report") -> "Report":
        self.checks.extend(other.checks)
        self.notes.extend(other.notes)
        return self


def instance_stream(axes, policy: CheckPolicy, label: str):
    """Iterate the product of axes, or a seeded sample when it is too big.

    Returns (mode, iterator).  String seeding keeps draws stable across
    processes regardless of hash randomization.
    """
    sizes = [len(a) for a in axes]
    total = math.prod(sizes)
    if total == 0:
        return "vacuous", iter(())
    if total <= policy.exhaustive_threshold:
        return "exhaustive", itertools.product(*axes)
    rng = random.Random(f"{policy.seed}|{label}")

    def draw():
        for _ in range(policy.sample_size):
            yield tuple(a[rng.randrange(len(a))] for a in axes)

    return "sampled", draw()


def _merge_mode(current: str | None, new: str) -> str | None:
    if new == "vacuous":
        return current
    if current is None:
        return new
    if "sampled" in (current, new):
        return "sampled"
    return current


class LawRunner:
    """Accumulates one LawCheck from any number of instance families.

    ``violation(*assignment)`` returns None when the law holds and a witness
    dict otherwise; the first witness stops the law.
    """

    def __init__(self, law: str, policy: CheckPolicy):
        self.law = law
        self.policy = policy
        self._mode: str | None = None
        self._instances = 0
        self._witness: dict | None = None

    def run(self, combo: str, axes, violation) -> None:
        if self._witness is not None:
            return
        mode, stream = instance_stream(axes, self.policy, f"{self.law}|{combo}")
        self._mode = _merge_mode(self._mode, mode)
        for assignment in stream:
            self._instances += 1
            witness = violation(*assignment)
            if witness is not None:
                witness.setdefault("law", self.law)
                witness.setdefault("combo", combo)
                self._witness = witness
                return

    def result(self) -> LawCheck:
        return LawCheck(
            law=self.law,
            passed=self._witness is None,
            mode=self._mode or "vacuous",
            instances=self._instances,
            counterexample=self._witness,
        )


def describe(value):
    """Render a check value as JSON-compatible data for reports."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, FinMap):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): describe(v) for k, v in value.items()}
    if isinstance(value, (tuple, list)):
        return [describe(v) for v in value]
    return repr(value)
