"""Derivation algebras: Der, SDer, inner derivations, restriction ideals.

A derivation is stored as a dim-by-dim matrix acting on coordinates.
Der(A) is the kernel of one linear system (the Leibniz defects, dim**3
rows over dim**2 unknowns) and carries the commutator bracket; its
basis is the canonical RREF basis of that kernel, so every downstream
object (structure constants, quotients, witnesses) is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import Algebra, _ideal_defect, _validate_new, center
from .errors import AmbientMismatch, MissingInvolution, NotAnIdeal
from .exactlin import Subspace, kernel

__all__ = [
    "AdImage",
    "DerAlgebra",
    "der_algebra",
    "inner_derivations",
    "restriction_ideal",
    "sder",
    "skew_part",
]


@dataclass(frozen=True)
class DerAlgebra:
    """A Lie algebra of derivation matrices of a base algebra."""

    base: Algebra
    carrier: Subspace  # subspace of the dim*dim operator space, vec row-major
    lie: Algebra  # structure constants of the commutator on the carrier basis
    flavor: str  # 'full' | 'sder'

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @cached_property
    def matrices(self) -> np.ndarray:
        n = self.base.dim
        return self.carrier.basis.reshape(self.dim, n, n)

    def matrix(self, coords) -> np.ndarray:
        c = self.lie.coerce_vector(coords)
        n = self.base.dim
        return self.base.field.reduce(
            np.tensordot(c, self.carrier.basis, axes=([0], [0])).reshape(n, n)
        )

    def coords(self, mat: np.ndarray):
        return self.carrier.coords(np.asarray(mat).reshape(-1))

    def apply(self, coords, v) -> np.ndarray:
        return self.base.field.dot(self.matrix(coords), self.base.coerce_vector(v))

    def __repr__(self):
        return f"DerAlgebra({self.flavor}, dim {self.dim} of {self.base!r})"


def _leibniz_matrix(a: Algebra) -> np.ndarray:
    """Rows: defect of D on each product e_i e_j; columns: vec(D)."""
    n = a.dim
    fld = a.field
    lefts = [a.left_mult(a.basis_vector(i)) for i in range(n)]
    rights = [a.right_mult(a.basis_vector(j)) for j in range(n)]
    blocks = []
    for i in range(n):
        for j in range(n):
            block = fld.zeros(n, n * n)
            m = a.table[i, j]
            for k in range(n):
                block[k, k * n : (k + 1) * n] = m
            block[:, i::n] -= rights[j]
            block[:, j::n] -= lefts[i]
            blocks.append(fld.reduce(block))
    return np.concatenate(blocks, axis=0)


def _brackets_on(base: Algebra, carrier: Subspace, flavor: str) -> DerAlgebra:
    n = base.dim
    fld = base.field
    k = carrier.dim
    mats = carrier.basis.reshape(k, n, n)
    table = fld.zeros(k, k, k)
    for a in range(k):
        for b in range(a + 1, k):
            comm = fld.reduce(
                fld.dot(mats[a], mats[b]) - fld.dot(mats[b], mats[a])
            )
            coords = carrier.coords(comm.reshape(-1))
            if coords is None:
                raise NotAnIdeal((a, b), "derivation space not bracket-closed")
            table[a, b] = coords
            table[b, a] = fld.reduce(-coords)
    labels = tuple(f"d{i + 1}" for i in range(k))
    lie = _validate_new(
        Algebra(fld, k, "lie", table, None, None, (flavor_origin(flavor), base.origin), labels)
    )
    return DerAlgebra(base, carrier, lie, flavor)


def flavor_origin(flavor: str) -> str:
    return "der" if flavor == "full" else "sder"


def der_algebra(a: Algebra) -> DerAlgebra:
    """All derivations of an associative algebra."""
    if a.kind != "associative":
        raise ValueError("derivations are computed for associative algebras")
    carrier = kernel(_leibniz_matrix(a), a.field)
    return _brackets_on(a, carrier, "full")


def sder(a: Algebra) -> DerAlgebra:
    """Derivations commuting with the involution: D(x*) = D(x)*."""
    if a.involution is None:
        raise MissingInvolution("sder needs an involution")
    full = der_algebra(a)
    fld = a.field
    sig = a.involution
    eye = fld.eye(a.dim)
    commute = fld.reduce(np.kron(eye, sig.T) - np.kron(sig, eye))
    carrier = full.carrier.intersect(kernel(commute, fld))
    return _brackets_on(a, carrier, "sder")


def skew_part(a: Algebra):
    """(K, Z_K): the skew elements x* = -x and the center of that Lie algebra."""
    if a.involution is None:
        raise MissingInvolution("skew part needs an involution")
    from .structure import annihilator

    fld = a.field
    k_space = kernel(fld.reduce(a.involution + fld.eye(a.dim)), fld)
    z_k = annihilator(k_space, k_space, a)
    return k_space, z_k


@dataclass(frozen=True)
class AdImage:
    """The image of y -> ad y inside a derivation algebra.

    ``matrix`` rows are the carrier coordinates of ad applied to the
    source basis; ``kernel`` lives in the base algebra (it equals the
    center when the source is all of A) and ``image`` in the carrier
    coordinate space, where it is an ideal.
    """

    ambient: DerAlgebra
    source: Subspace
    matrix: np.ndarray  # (source.dim, ambient.dim)
    image: Subspace
    kernel: Subspace


def inner_derivations(d: DerAlgebra, source="A") -> AdImage:
    """Inner derivations ad y for y in the source ('A', 'K', or a Subspace)."""
    base = d.base
    fld = base.field
    if isinstance(source, str):
        if source == "A":
            src = base.full_space()
        elif source == "K":
            src = skew_part(base)[0]
        else:
            raise ValueError("source must be 'A', 'K', or a Subspace")
    else:
        src = source
        if src.field != fld or src.ambient != base.dim:
            raise AmbientMismatch("source does not live in the base algebra")
    rows = []
    for r in range(src.dim):
        ad_mat = base.ad(src.basis[r])
        coords = d.coords(ad_mat)
        if coords is None:
            raise NotAnIdeal(src.basis[r], "ad of source element is not in the carrier")
        rows.append(coords)
    m = np.stack(rows) if rows else fld.zeros(0, d.dim)
    image = Subspace.from_vectors(fld, d.dim, list(m))
    coeff = kernel(m.T, fld) if src.dim else Subspace.zero(fld, 0)
    vecs = [fld.dot(coeff.basis[i], src.basis) for i in range(coeff.dim)]
    ker = Subspace.from_vectors(fld, base.dim, vecs)
    w = _ideal_defect(d.lie, image)
    if w is not None:
        raise NotAnIdeal(w, "inner derivations do not form an ideal")
    return AdImage(d, src, m, image, ker)


def restriction_ideal(d: DerAlgebra, kind: str) -> Subspace:
    """I_Z (derivations mapping A into Z) or I_KZ (mapping K into Z).

    Both are ideals of the derivation algebra containing its center;
    both facts are validated before returning.
    """
    base = d.base
    fld = base.field
    if kind == "I_Z":
        targets = base.full_space()
    elif kind == "I_KZ":
        if d.flavor != "sder":
            raise ValueError("I_KZ is a subspace of SDer; pass a der of flavor sder")
        targets = skew_part(base)[0]
    else:
        raise ValueError("kind must be 'I_Z' or 'I_KZ'")
    z = center(base)
    # linear residual of reduction modulo the RREF basis of Z
    resid = fld.eye(base.dim)
    for r in range(z.dim):
        sel = fld.zeros(base.dim)
        sel[z.pivots[r]] = fld.one()
        resid = fld.reduce(resid - np.outer(z.basis[r], sel))
    blocks = []
    for t in range(targets.dim):
        v = targets.basis[t]
        cols = np.stack([fld.dot(d.matrices[a], v) for a in range(d.dim)], axis=1)
        blocks.append(fld.dot(resid, cols))
    if not blocks:
        return Subspace.full(fld, d.dim)
    coeff = kernel(np.concatenate(blocks, axis=0), fld)
    w = _ideal_defect(d.lie, coeff)
    if w is not None:
        raise NotAnIdeal(w, "restriction ideal failed bracket absorption")
    dz = center(d.lie)
    if not coeff.contains(dz):
        raise NotAnIdeal(None, "restriction ideal misses the center of Der")
    return coeff
