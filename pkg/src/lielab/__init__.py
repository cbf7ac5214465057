"""Exact computation with finite-dimensional algebras and their derivations."""

from .errors import (
    AmbientMismatch,
    BudgetExceeded,
    HypothesisFailed,
    LielabError,
    MissingInvolution,
    NotAnIdeal,
    NotAnInvolution,
    NotAssociative,
    NotInQAnn,
    NotLie,
    ParseError,
    Redeclaration,
    TorsionError,
    UndeclaredName,
    UndecidedError,
)
from .exactlin import Field, Subspace, kernel, rref, row_space, subspace_op
from .outcome import TheoremInstance, Verdict
from .algebra import (
    Algebra,
    Extension,
    abelian,
    attach_involution,
    center,
    change_basis,
    direct_sum,
    make_extension,
    matrix_algebra,
    minus,
    opposite,
    quotient_algebra,
    strictly_upper,
    subalgebra_algebra,
    table_algebra,
    upper_triangular,
    validate,
)
from .structure import (
    DegreeResult,
    annihilator,
    degree,
    degree_exceeds,
    ideal_generated,
    property_check,
    qann,
)
from .derivations import (
    AdImage,
    DerAlgebra,
    der_algebra,
    inner_derivations,
    restriction_ideal,
    sder,
    skew_part,
)
from .theorems import (
    THEOREM_NAMES,
    IdentityTrace,
    fuzz_qadann,
    involution_kind,
    qadann_trace,
    star_prime_ideals,
    verify,
)

__version__ = "0.1.0"
