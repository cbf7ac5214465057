"""Outcome values shared by the checking modules."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Verdict:
    """Result of a decidable check.

    status is 'holds', 'fails', or 'undecided'; a failing verdict
    carries a concrete witness (coordinate vectors or index tuples).
    """

    status: str
    witness: object = None
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    @property
    def fails(self) -> bool:
        return self.status == "fails"

    def __repr__(self):
        bits = [self.status]
        if self.note:
            bits.append(self.note)
        return f"Verdict({', '.join(bits)})"


@dataclass
class TheoremInstance:
    """One verified instance of a named statement.

    hypothesis_failures lists hypotheses the instance does not meet; in
    that case the statement was not falsified, merely inapplicable, and
    verdict is None.  checks holds the labelled sub-conclusions.
    """

    name: str
    verdict: Verdict | None = None
    hypothesis_failures: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    note: str = ""

    @property
    def outcome(self) -> str:
        if self.hypothesis_failures:
            return "hypothesis_failed"
        return self.verdict.status if self.verdict else "undecided"
