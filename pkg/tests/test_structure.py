"""Annihilators, quadratic annihilators, property checks, degree."""

import numpy as np
import pytest

from lielab.algebra import (
    attach_involution,
    direct_sum,
    make_extension,
    matrix_algebra,
    minus,
    opposite,
    quotient_algebra,
    upper_triangular,
)
from lielab.errors import BudgetExceeded, UndecidedError
from lielab.exactlin import Field, Subspace
from lielab.structure import (
    annihilator,
    degree,
    degree_exceeds,
    ideal_generated,
    property_check,
    qann,
)

F5 = Field.prime(5)
QQ = Field.rationals()


def t3_lie(fld=F5):
    return minus(upper_triangular(fld, 3))


def sut3_space(fld=F5):
    # e12, e13, e23 inside the t3 coordinate order e11 e12 e13 e22 e23 e33
    rows = [
        [0, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 1, 0],
    ]
    return Subspace.from_vectors(fld, 6, [fld.vector(r) for r in rows])


def test_annihilator_of_whole_t3_is_center():
    g = t3_lie()
    full = Subspace.full(F5, 6)
    ann = annihilator(full, full, g)
    assert ann.dim == 1  # scalars


def test_annihilator_restricted_to_sut3():
    g = t3_lie()
    ann = annihilator(sut3_space(), Subspace.full(F5, 6), g)
    assert ann.dim == 0


def test_qann_t3_has_225_elements():
    g = t3_lie()
    full = Subspace.full(F5, 6)
    result = qann(full, full, g)
    assert len(result) == 225
    # closed under scalars but not sums
    assert result.non_closure_witness() is not None


def test_qann_member_mode_agrees_with_enumeration():
    g = t3_lie()
    full = Subspace.full(F5, 6)
    result = qann(full, full, g)
    e12 = F5.vector([0, 1, 0, 0, 0, 0])
    e23 = F5.vector([0, 0, 0, 0, 1, 0])
    assert qann(full, full, g, member=e12)
    assert qann(full, full, g, member=e23)
    assert not qann(full, full, g, member=F5.reduce(e12 + e23))
    assert result.contains_vector(e12)
    assert not result.contains_vector(F5.reduce(e12 + e23))


def test_qann_member_mode_over_q():
    g = t3_lie(QQ)
    full = Subspace.full(QQ, 6)
    e13 = QQ.vector([0, 0, 1, 0, 0, 0])
    assert qann(full, full, g, member=e13)
    assert not qann(full, full, g, member=QQ.vector([1, 0, 0, 0, 0, 0]))


def test_qann_enumeration_needs_finite_field():
    g = t3_lie(QQ)
    full = Subspace.full(QQ, 6)
    with pytest.raises(UndecidedError):
        qann(full, full, g)


def test_budget_guard():
    g = t3_lie()
    full = Subspace.full(F5, 6)
    with pytest.raises(BudgetExceeded):
        qann(full, full, g, budget=100)


def test_ideal_generated_by_e13_in_t3():
    t3 = upper_triangular(F5, 3)
    e13 = F5.vector([0, 0, 1, 0, 0, 0])
    ideal = ideal_generated(t3, [e13])
    assert ideal.dim == 1  # two-sided: t3 e13 t3 stays on the corner


def test_semiprime_matrix_algebra():
    assert property_check("semiprime", matrix_algebra(F5, 2)).holds


def test_semiprime_fails_for_t3():
    v = property_check("semiprime", upper_triangular(F5, 3))
    assert v.fails
    # witness generates a nilpotent ideal: aAa = 0
    (a,) = v.witness
    t3 = upper_triangular(F5, 3)
    for j in range(6):
        assert not t3.mul(t3.mul(a, t3.basis_vector(j)), a).any()


def test_prime_matrix_vs_direct_sum():
    m2 = matrix_algebra(F5, 2)
    assert property_check("prime", m2).holds
    v = property_check("prime", direct_sum(m2, m2))
    assert v.fails
    a, b = v.witness
    s = direct_sum(m2, m2)
    for j in range(8):
        assert not s.mul(s.mul(a, s.basis_vector(j)), b).any()


def test_snd_quotient_of_gl2_by_center():
    g = minus(matrix_algebra(F5, 2))
    q = quotient_algebra(g, annihilator(Subspace.full(F5, 4), Subspace.full(F5, 4), g))
    assert q.dim == 3
    assert property_check("snd", q).holds


def test_snd_fails_on_t3_even_mod_center():
    # e13 satisfies [e13, [e13, y]] = 0 for every y but is not central
    g = t3_lie()
    v = property_check("snd", g)
    assert v.fails
    z = annihilator(Subspace.full(F5, 6), Subspace.full(F5, 6), g)
    vq = property_check("snd", quotient_algebra(g, z))
    assert vq.fails


def test_essential_ideal():
    m2 = matrix_algebra(F5, 2)
    full = Subspace.full(F5, 4)
    assert property_check("essential", m2, full).holds
    zero = Subspace.zero(F5, 4)
    assert property_check("essential", m2, zero).fails


def test_weak_quotient():
    g = minus(matrix_algebra(F5, 2))
    sl2 = make_extension(g, [g.basis_vector(1), g.basis_vector(2)])
    assert property_check("weak_quotient", sl2).fails  # scalars kill sl2
    inner = sl2.inner_algebra()
    self_ext = make_extension(inner, [inner.basis_vector(i) for i in range(3)])
    assert property_check("weak_quotient", self_ext).holds


def test_star_semiprime_transpose():
    m2 = attach_involution(matrix_algebra(F5, 2), "transpose")
    assert property_check("star_semiprime", m2).holds
    assert property_check("star_prime", m2).holds


def test_star_prime_detects_swapped_factors():
    m2 = matrix_algebra(F5, 2)
    s = attach_involution(direct_sum(m2, opposite(m2)), "exchange")
    # not prime, but the involution swaps the two factors: *-prime
    assert property_check("prime", s).fails
    assert property_check("star_prime", s).holds


def test_degree_of_matrix_algebras():
    assert degree(matrix_algebra(F5, 2)).value == 2
    assert degree(matrix_algebra(F5, 3), budget=2_000_000).value == 3


def test_degree_of_commutative_is_one():
    t1 = upper_triangular(F5, 1)
    assert degree(t1).value == 1


def test_degree_explicit_element():
    m2 = matrix_algebra(F5, 2)
    res = degree(m2, x=F5.vector([1, 0, 0, 1]))
    assert res.value == 1  # central element


def test_degree_over_q_is_lower_bound():
    res = degree(matrix_algebra(QQ, 2))
    assert res.value == 2
    assert res.lower_bound_only


def test_degree_exceeds_early_exit():
    m3 = matrix_algebra(F5, 3)
    hit = degree_exceeds(m3, 2, budget=4_000_000)
    assert hit is not None
    w, d = hit
    assert d == 3
    assert degree(m3, x=w).value == 3
    assert degree_exceeds(matrix_algebra(F5, 2), 2) is None
