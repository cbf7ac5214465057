"""Derivation algebras, inner derivations, restriction ideals."""

import numpy as np
import pytest

from lielab.algebra import abelian, attach_involution, center, matrix_algebra, minus, upper_triangular
from lielab.derivations import (
    der_algebra,
    inner_derivations,
    restriction_ideal,
    sder,
    skew_part,
)
from lielab.errors import MissingInvolution
from lielab.exactlin import Field

F5 = Field.prime(5)
QQ = Field.rationals()


def m3t(fld=F5):
    return attach_involution(matrix_algebra(fld, 3), "transpose")


def test_der_m2_is_inner():
    m2 = matrix_algebra(F5, 2)
    d = der_algebra(m2)
    assert d.lie.dim == 3
    inn = inner_derivations(d, "A")
    assert inn.image.dim == 3
    # ad kernel is the center
    assert inn.kernel == center(m2)


def test_der_satisfies_leibniz():
    m2 = matrix_algebra(QQ, 2)
    d = der_algebra(m2)
    for r in range(d.lie.dim):
        mat = d.matrices[r]
        for i in range(m2.dim):
            for j in range(m2.dim):
                x, y = m2.basis_vector(i), m2.basis_vector(j)
                lhs = mat @ m2.mul(x, y)
                rhs = m2.mul(mat @ x, y) + m2.mul(x, mat @ y)
                assert np.array_equal(QQ.reduce(lhs), QQ.reduce(rhs))


def test_der_of_abelian_is_gl():
    a = abelian(F5, 2)
    assert der_algebra(a).lie.dim == 4  # every linear map


def test_der_bracket_matches_matrix_commutator():
    t3 = upper_triangular(F5, 3)
    d = der_algebra(t3)
    g = d.lie
    for i in range(min(3, g.dim)):
        for j in range(min(3, g.dim)):
            lhs = g.mul(g.basis_vector(i), g.basis_vector(j))
            mi, mj = d.matrices[i], d.matrices[j]
            comm = F5.reduce(mi @ mj - mj @ mi)
            assert np.array_equal(d.matrix(lhs), comm)


def test_ad_is_a_derivation_of_the_base():
    m2 = matrix_algebra(F5, 2)
    d = der_algebra(m2)
    inn = inner_derivations(d, "A")
    # [D, ad y] = ad D(y) for every derivation D
    lie = minus(m2)
    for r in range(d.lie.dim):
        mat = d.matrices[r]
        for j in range(m2.dim):
            y = m2.basis_vector(j)
            ady = lie.left_mult(y)
            lhs = F5.reduce(mat @ ady - ady @ mat)
            rhs = lie.left_mult(F5.reduce(mat @ y))
            assert np.array_equal(lhs, rhs)
    assert inn.image.dim == 3


def test_skew_part_of_m3_transpose():
    k, zk = skew_part(m3t())
    assert k.dim == 3
    assert zk.dim == 0


def test_skew_part_needs_involution():
    with pytest.raises(MissingInvolution):
        skew_part(matrix_algebra(F5, 3))


def test_sder_of_m3_transpose():
    d = sder(m3t())
    assert d.lie.dim == 3
    # every sder is inner by a skew element here
    inn = inner_derivations(d, "K")
    assert inn.image.dim == 3


def test_sder_commutes_with_star():
    a = m3t()
    d = sder(a)
    for r in range(d.lie.dim):
        mat = d.matrices[r]
        for j in range(a.dim):
            x = a.basis_vector(j)
            assert np.array_equal(
                F5.reduce(mat @ a.star(x)), a.star(F5.reduce(mat @ x))
            )


def test_restriction_ideal_iz_vanishes_for_m2():
    d = der_algebra(matrix_algebra(F5, 2))
    assert restriction_ideal(d, "I_Z").dim == 0


def test_restriction_ideal_ikz_vanishes_for_m3t():
    d = sder(m3t())
    assert restriction_ideal(d, "I_KZ").dim == 0


def test_restriction_ideal_nonzero_case():
    # commutative algebra: every derivation maps into the center
    t1 = abelian(F5, 2)
    d = der_algebra(t1)
    assert restriction_ideal(d, "I_Z").dim == d.lie.dim
