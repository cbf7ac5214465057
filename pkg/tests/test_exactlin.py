"""Exact linear algebra over Q and F_p."""

from fractions import Fraction

import numpy as np
import pytest

from lielab.errors import TorsionError
from lielab.exactlin import Field, Subspace, kernel, row_space, rref, subspace_op


F5 = Field.prime(5)
QQ = Field.rationals()


def test_prime_field_requires_prime():
    with pytest.raises(ValueError):
        Field.prime(6)


@pytest.mark.parametrize("p", [2, 3])
def test_small_characteristic_rejected(p):
    with pytest.raises(TorsionError):
        Field.prime(p)


def test_coerce_fraction_mod_p():
    # 1/2 = 3 mod 5
    assert F5.coerce(Fraction(1, 2)) == 3
    assert F5.coerce(-1) == 4
    assert QQ.coerce(2) == Fraction(2)


def test_scalar_round_trip():
    assert F5.parse_scalar("7") == 2
    assert QQ.parse_scalar("3/7") == Fraction(3, 7)
    assert QQ.format_scalar(Fraction(3, 7)) == "3/7"


def test_rref_canonical_over_q():
    m = QQ.matrix([[2, 4], [1, 2]])
    r, rank, pivots = rref(m, QQ)
    assert rank == 1
    assert list(pivots) == [0]
    assert r[0, 0] == 1 and r[0, 1] == 2


def test_rref_mod_p():
    m = F5.matrix([[2, 1], [0, 3]])
    r, rank, pivots = rref(m, F5)
    assert rank == 2
    assert np.array_equal(r[:2], F5.eye(2))


def test_kernel_dimensions():
    m = F5.matrix([[1, 2, 3], [2, 4, 6]])
    k = kernel(m, F5)
    assert k.dim == 2
    for r in range(k.dim):
        assert not (m @ k.basis[r] % 5).any()


def test_row_space_membership():
    s = row_space(F5.matrix([[1, 1, 0], [0, 0, 1]]), F5)
    assert s.member(F5.vector([2, 2, 3]))
    assert not s.member(F5.vector([1, 0, 0]))


def test_subspace_sum_intersect():
    a = Subspace.from_vectors(F5, 3, [F5.vector([1, 0, 0])])
    b = Subspace.from_vectors(F5, 3, [F5.vector([0, 1, 0])])
    assert a.sum(b).dim == 2
    assert a.intersect(b).dim == 0
    assert subspace_op("sum", a, b) == a.sum(b)


def test_subspace_coords_inverts_combination():
    basis = [QQ.vector([1, 2, 0]), QQ.vector([0, 1, 1])]
    s = Subspace.from_vectors(QQ, 3, basis)
    v = QQ.reduce(3 * basis[0] - 2 * basis[1])
    c = s.coords(v)
    assert c is not None
    assert np.array_equal(QQ.reduce(c @ s.basis), v)
    assert s.coords(QQ.vector([0, 0, 5])) is None


def test_zero_and_full():
    assert Subspace.zero(F5, 4).dim == 0
    full = Subspace.full(F5, 4)
    assert full.dim == 4
    assert full.member(F5.vector([1, 2, 3, 4]))


def test_reduce_vector_kills_members_only():
    s = Subspace.from_vectors(F5, 3, [F5.vector([1, 0, 2])])
    assert not s.reduce_vector(F5.vector([2, 0, 4])).any()
    assert s.reduce_vector(F5.vector([0, 1, 0])).any()
