"""Exact dense linear algebra over Q and prime fields F_p (p > 3).

Scalars are ``fractions.Fraction`` over Q and canonical residues in
``[0, p)`` over F_p.  Matrices over Q are object ndarrays of Fractions;
matrices over F_p are int64 ndarrays, which is what lets the enumeration
kernels stay vectorised.  Subspaces are kept in reduced row echelon
form, so equal subspaces have identical basis matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import AmbientMismatch, TorsionError

__all__ = ["Field", "Subspace", "rref", "kernel", "row_space", "subspace_op"]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """The coefficient field: Q or F_p with p a prime larger than 3."""

    __slots__ = ("kind", "characteristic")

    def __init__(self, characteristic: int):
        if characteristic == 0:
            self.kind = "rationals"
        else:
            if not _is_prime(characteristic):
                raise ValueError(f"characteristic must be 0 or prime, got {characteristic}")
            if characteristic in (2, 3):
                raise TorsionError(characteristic)
            self.kind = "prime"
        self.characteristic = characteristic

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        if p == 0:
            raise ValueError("prime field needs a positive characteristic")
        return cls(p)

    # -- scalar arithmetic ------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.kind == "prime"

    @property
    def order(self) -> int | None:
        return self.characteristic if self.is_finite else None

    def coerce(self, value):
        if self.is_finite:
            p = self.characteristic
            if isinstance(value, Fraction):
                if value.denominator % p == 0:
                    raise ZeroDivisionError(f"denominator divisible by {p}")
                return value.numerator * pow(value.denominator, p - 2, p) % p
            return int(value) % p
        if isinstance(value, Fraction):
            return value
        return Fraction(value)

    def zero(self):
        return 0 if self.is_finite else Fraction(0)

    def one(self):
        return 1 if self.is_finite else Fraction(1)

    def neg(self, a):
        return (-a) % self.characteristic if self.is_finite else -a

    def inv(self, a):
        if self.is_finite:
            a %= self.characteristic
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return pow(a, self.characteristic - 2, self.characteristic)
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def parse_scalar(self, text: str):
        if "/" in text:
            num, den = text.split("/", 1)
            return self.coerce(Fraction(int(num), int(den)))
        return self.coerce(int(text))

    def format_scalar(self, value) -> str:
        if self.is_finite:
            return str(int(value))
        f = Fraction(value)
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"

    def to_json(self, value):
        """F_p scalars serialise as ints, rationals as 'num/den' strings."""
        if self.is_finite:
            return int(value)
        f = Fraction(value)
        return f"{f.numerator}/{f.denominator}"

    # -- array constructors -----------------------------------------------

    def matrix(self, rows) -> np.ndarray:
        rows = list(rows)
        if self.is_finite:
            if len(rows) == 0:
                return np.zeros((0, 0), dtype=np.int64)
            a = np.array([[int(self.coerce(v)) for v in r] for r in rows], dtype=np.int64)
            return a
        if len(rows) == 0:
            return np.zeros((0, 0), dtype=object)
        a = np.empty((len(rows), len(rows[0])), dtype=object)
        for i, r in enumerate(rows):
            for j, v in enumerate(r):
                a[i, j] = self.coerce(v)
        return a

    def vector(self, seq) -> np.ndarray:
        return self.matrix([list(seq)])[0]

    def zeros(self, *shape) -> np.ndarray:
        if self.is_finite:
            return np.zeros(shape, dtype=np.int64)
        a = np.empty(shape, dtype=object)
        a[...] = Fraction(0)
        return a

    def eye(self, n: int) -> np.ndarray:
        a = self.zeros(n, n)
        for i in range(n):
            a[i, i] = self.one()
        return a

    def dot(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Exact matrix product; np.dot handles the object dtype."""
        out = np.dot(a, b)
        if self.is_finite:
            out = out % self.characteristic
        elif out.size and not isinstance(out.flat[0], Fraction):
            out = out + self.zeros(*out.shape)
        return out

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return a % self.characteristic if self.is_finite else a

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"


# ---------------------------------------------------------------------------


def _rref_fractions(a: np.ndarray):
    a = a.copy()
    rows, cols = a.shape
    row = 0
    pivots = []
    for col in range(cols):
        if row == rows:
            break
        pr = -1
        for r in range(row, rows):
            if a[r, col] != 0:
                pr = r
                break
        if pr < 0:
            continue
        if pr != row:
            a[[row, pr]] = a[[pr, row]]
        a[row] = a[row] * (1 / Fraction(a[row, col]))
        for r in range(rows):
            if r != row and a[r, col] != 0:
                a[r] = a[r] - a[r, col] * a[row]
        pivots.append(col)
        row += 1
    return a, row, np.array(pivots, dtype=np.int64)


def rref(m: np.ndarray, fld: Field):
    """Reduced row echelon form; returns (matrix, rank, pivot columns).

    Pivots are chosen first nonzero left to right, top to bottom, so the
    result is the canonical representative of the row space.
    """
    if m.ndim != 2:
        raise ValueError("rref expects a matrix")
    if fld.is_finite:
        return kernels.rref_mod_p(m, fld.characteristic)
    if m.shape[0] == 0 or m.shape[1] == 0:
        return m.copy(), 0, np.empty(0, dtype=np.int64)
    return _rref_fractions(m)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F^n held as an RREF basis; rows are the basis."""

    field: Field
    ambient: int
    basis: np.ndarray
    pivots: tuple = dc_field(default=())

    @classmethod
    def from_vectors(cls, fld: Field, ambient: int, vectors) -> "Subspace":
        rows = [list(v) for v in vectors]
        if not rows:
            return cls.zero(fld, ambient)
        m = fld.matrix(rows)
        if m.shape[1] != ambient:
            raise AmbientMismatch(f"vectors of length {m.shape[1]} in F^{ambient}")
        r, rank, piv = rref(m, fld)
        return cls(fld, ambient, r[:rank], tuple(int(c) for c in piv))

    @classmethod
    def zero(cls, fld: Field, ambient: int) -> "Subspace":
        return cls(fld, ambient, fld.zeros(0, ambient), ())

    @classmethod
    def full(cls, fld: Field, ambient: int) -> "Subspace":
        return cls(fld, ambient, fld.eye(ambient), tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def _check_vector(self, v: np.ndarray):
        if len(v) != self.ambient:
            raise AmbientMismatch(f"vector of length {len(v)} in F^{self.ambient}")

    def _check_peer(self, other: "Subspace"):
        if other.field != self.field or other.ambient != self.ambient:
            raise AmbientMismatch("subspaces live in different ambient spaces")

    def reduce_vector(self, v: np.ndarray) -> np.ndarray:
        """Residual of v after subtracting its projection onto the basis."""
        self._check_vector(v)
        if self.field.is_finite:
            v = self.field.reduce(np.array(v, dtype=np.int64))
        else:
            v = np.array(v, dtype=object)
        if self.dim == 0:
            return v
        coeffs = v[list(self.pivots)]
        return self.field.reduce(v - self.field.dot(coeffs, self.basis))

    def member(self, v) -> bool:
        res = self.reduce_vector(self.field.vector(v))
        return not any(x != 0 for x in res.flat)

    def coords(self, v) -> np.ndarray | None:
        """Coordinates of v in the basis, or None when v lies outside."""
        v = self.field.vector(v)
        self._check_vector(v)
        if self.dim == 0:
            return self.field.zeros(0) if not any(x != 0 for x in v.flat) else None
        coeffs = v[list(self.pivots)]
        res = self.field.reduce(v - self.field.dot(coeffs, self.basis))
        if any(x != 0 for x in res.flat):
            return None
        return coeffs

    def contains(self, other: "Subspace") -> bool:
        self._check_peer(other)
        return all(self.member(other.basis[i]) for i in range(other.dim))

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_peer(other)
        stacked = np.concatenate([self.basis, other.basis], axis=0)
        return Subspace.from_vectors(self.field, self.ambient, stacked)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_peer(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient)
        # coefficient solutions of a·B1 = b·B2 give the common vectors
        stacked = np.concatenate([self.basis.T, -other.basis.T], axis=1)
        stacked = self.field.reduce(stacked)
        combo = kernel(stacked, self.field)
        vecs = [
            self.field.dot(combo.basis[i][: self.dim], self.basis)
            for i in range(combo.dim)
        ]
        return Subspace.from_vectors(self.field, self.ambient, vecs)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and other.field == self.field
            and other.ambient == self.ambient
            and other.basis.shape == self.basis.shape
            and bool(np.array_equal(other.basis, self.basis))
        )

    def __repr__(self):
        return f"Subspace(dim {self.dim} of F^{self.ambient} over {self.field!r})"


def kernel(m: np.ndarray, fld: Field) -> Subspace:
    """Right null space {v : m v = 0} as a canonical Subspace."""
    rows, cols = m.shape
    r, rank, piv = rref(m, fld)
    piv = [int(c) for c in piv]
    free = [c for c in range(cols) if c not in piv]
    vecs = []
    for f in free:
        v = fld.zeros(cols)
        v[f] = fld.one()
        for i, pc in enumerate(piv):
            v[pc] = fld.neg(r[i, f])
        vecs.append(v)
    return Subspace.from_vectors(fld, cols, vecs)


def row_space(m: np.ndarray, fld: Field) -> Subspace:
    r, rank, piv = rref(m, fld)
    return Subspace(fld, m.shape[1], r[:rank], tuple(int(c) for c in piv))


def subspace_op(kind: str, a: Subspace, b=None):
    """Dispatch set operations on subspaces.

    kind: 'sum' | 'intersect' | 'contains' | 'member' | 'equal'.
    For 'member', b is a coordinate vector.
    """
    if kind == "sum":
        return a.sum(b)
    if kind == "intersect":
        return a.intersect(b)
    if kind == "contains":
        return a.contains(b)
    if kind == "member":
        return a.member(b)
    if kind == "equal":
        return a == b
    raise ValueError(f"unknown subspace op {kind!r}")
