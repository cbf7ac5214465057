"""Error types shared across the package."""

from __future__ import annotations


class LielabError(Exception):
    """Base class for all package errors."""


class TorsionError(LielabError):
    """Raised for coefficient fields of characteristic 2 or 3.

    Halving and thirding of scalars must be possible; the constructions
    here divide by 2 and 3 freely.
    """

    def __init__(self, characteristic: int):
        self.characteristic = characteristic
        super().__init__(
            f"characteristic {characteristic} not supported: 2 and 3 must be invertible"
        )


class AmbientMismatch(LielabError):
    """Two objects live over different fields or ambient dimensions."""


class NotAssociative(LielabError):
    """A multiplication table failed the associativity check.

    Carries the offending basis index triple as ``witness``.
    """

    def __init__(self, witness, message: str = "product is not associative"):
        self.witness = witness
        super().__init__(f"{message}: basis triple {witness}")


class NotLie(LielabError):
    """A bracket table failed anticommutativity or the Jacobi identity."""

    def __init__(self, witness, message: str = "bracket is not a Lie bracket"):
        self.witness = witness
        super().__init__(f"{message}: basis witness {witness}")


class NotAnIdeal(LielabError):
    """A subspace offered as an ideal is not closed under the action."""

    def __init__(self, witness=None, message: str = "subspace is not an ideal"):
        self.witness = witness
        super().__init__(message)


class MissingInvolution(LielabError):
    """An operation needed an involution but the algebra has none."""


class NotAnInvolution(LielabError):
    """A candidate involution failed one of its defining laws."""

    def __init__(self, which: str, witness=None):
        self.which = which
        self.witness = witness
        super().__init__(f"not an involution: {which} fails")


class BudgetExceeded(LielabError):
    """An exhaustive enumeration would visit more elements than allowed."""

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"enumeration needs {required} elements, budget allows {budget}"
        )


class UndecidedError(LielabError):
    """A universal question cannot be settled over an infinite field."""


class HypothesisFailed(LielabError):
    """A verification was attempted on an instance outside its hypotheses.

    ``which`` names the failed hypothesis; ``detail`` explains it.
    """

    def __init__(self, which: str, detail: str = ""):
        self.which = which
        self.detail = detail
        msg = f"hypothesis failed: {which}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class NotInQAnn(LielabError):
    """The designated element is not a quadratic annihilator element."""

    def __init__(self, witness=None):
        self.witness = witness
        super().__init__("element is not in the quadratic annihilator")


class ParseError(LielabError):
    """Script syntax error with position and expectation."""

    def __init__(self, line: int, col: int, expected: str, found: str = ""):
        self.line = line
        self.col = col
        self.expected = expected
        self.found = found
        msg = f"line {line}, col {col}: expected {expected}"
        if found:
            msg += f", found {found!r}"
        super().__init__(msg)


class UndeclaredName(LielabError):
    """A script statement referenced a name never declared."""

    def __init__(self, name: str, line: int = 0):
        self.name = name
        self.line = line
        super().__init__(f"line {line}: undeclared name {name!r}")


class Redeclaration(LielabError):
    """A script statement re-declared an existing name."""

    def __init__(self, name: str, line: int = 0):
        self.name = name
        self.line = line
        super().__init__(f"line {line}: name {name!r} already declared")
