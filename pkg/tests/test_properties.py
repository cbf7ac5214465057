"""Property-based suite for the structural invariants."""

import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lielab.algebra import (
    abelian,
    change_basis,
    make_extension,
    matrix_algebra,
    minus,
    quotient_algebra,
    strictly_upper,
    upper_triangular,
)
from lielab.algebra import center as center_of
from lielab.derivations import der_algebra
from lielab.exactlin import Field, Subspace, kernel, rref, row_space
from lielab.structure import annihilator, property_check, qann

F5 = Field.prime(5)
F7 = Field.prime(7)
QQ = Field.rationals()

entries = st.integers(min_value=-6, max_value=6)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    )


@pytest.mark.parametrize("fld", [F5, QQ], ids=["F5", "Q"])
@settings(max_examples=60, deadline=None)
@given(rows=matrices())
def test_rank_nullity(fld, rows):
    m = fld.matrix(rows)
    _, rank, _ = rref(m, fld)
    assert rank + kernel(m, fld).dim == m.shape[1]


@pytest.mark.parametrize("fld", [F5, QQ], ids=["F5", "Q"])
@settings(max_examples=60, deadline=None)
@given(rows=matrices())
def test_rref_idempotent(fld, rows):
    m = fld.matrix(rows)
    r1, rank1, piv1 = rref(m, fld)
    r2, rank2, piv2 = rref(r1, fld)
    assert rank1 == rank2
    assert np.array_equal(r1, r2)
    assert np.array_equal(piv1, piv2)


@settings(max_examples=60, deadline=None)
@given(
    a=st.lists(st.lists(entries, min_size=4, max_size=4), min_size=1, max_size=3),
    b=st.lists(st.lists(entries, min_size=4, max_size=4), min_size=1, max_size=3),
)
def test_modular_dimension_law(a, b):
    s = row_space(F5.matrix(a), F5)
    t = row_space(F5.matrix(b), F5)
    assert s.sum(t).dim + s.intersect(t).dim == s.dim + t.dim


def _random_invertible(fld, n, rng):
    while True:
        rows = [[rng.randrange(5) for _ in range(n)] for _ in range(n)]
        m = fld.matrix(rows)
        _, rank, _ = rref(m, fld)
        if rank == n:
            return m


def _preset_pool(fld):
    return [
        matrix_algebra(fld, 2),
        upper_triangular(fld, 2),
        upper_triangular(fld, 3),
        strictly_upper(fld, 3),
        abelian(fld, 3),
    ]


def test_minus_of_rebased_associative_is_lie():
    """Anticommutativity and Jacobi for minus(A) on 100+ random tables.

    change_basis and minus both re-validate their results, so surviving
    the loop is the property.
    """
    rng = random.Random(20240817)
    count = 0
    pool = _preset_pool(F5) + _preset_pool(F7)
    while count < 110:
        base = pool[rng.randrange(len(pool))]
        g = _random_invertible(base.field, base.dim, rng)
        rebased = change_basis(base, g)
        lie = minus(rebased)
        assert lie.kind == "lie"
        count += 1
    assert count >= 100


def test_derivation_bracket_on_five_bases():
    """[D, ad y] = ad D(y) for all basis pairs of five derivation algebras."""
    bases = [
        matrix_algebra(F5, 2),
        matrix_algebra(F7, 2),
        upper_triangular(F5, 3),
        strictly_upper(F5, 3),
        matrix_algebra(QQ, 2),
    ]
    for base in bases:
        d = der_algebra(base)
        fld = base.field
        lie = minus(base)
        for r in range(d.lie.dim):
            mat = d.matrices[r]
            for j in range(base.dim):
                y = base.basis_vector(j)
                ady = lie.left_mult(y)
                lhs = fld.reduce(mat @ ady - ady @ mat)
                rhs = lie.left_mult(fld.reduce(mat @ y))
                assert np.array_equal(lhs, rhs), (base.origin, r, j)


def test_ann_subset_qann_random_instances():
    rng = random.Random(7)
    algebras = [
        minus(upper_triangular(F5, 3)),
        minus(matrix_algebra(F5, 2)),
        minus(strictly_upper(F5, 3)),
    ]
    checked = 0
    for _ in range(40):
        alg = algebras[rng.randrange(len(algebras))]
        pick = lambda: F5.vector([rng.randrange(5) for _ in range(alg.dim)])
        x_space = Subspace.from_vectors(F5, alg.dim, [pick(), pick()])
        y_space = Subspace.from_vectors(F5, alg.dim, [pick()])
        ann = annihilator(x_space, y_space, alg)
        for r in range(ann.dim):
            assert qann(x_space, y_space, alg, member=ann.basis[r])
            checked += 1
    assert checked > 10


def test_snd_implies_semiprime_on_enumerated_instances():
    g = minus(matrix_algebra(F5, 2))
    sl2 = make_extension(g, [g.basis_vector(1), g.basis_vector(2)]).inner_algebra()
    pool = [
        sl2,
        quotient_algebra(g, center_of(g)),
        minus(upper_triangular(F5, 3)),
        minus(strictly_upper(F5, 3)),
        der_algebra(matrix_algebra(F5, 2)).lie,
        minus(matrix_algebra(F7, 2)),
        abelian(F5, 2),
    ]
    nonvacuous = 0
    for alg in pool:
        snd = property_check("snd", alg)
        if snd.holds:
            nonvacuous += 1
            assert property_check("semiprime", alg).holds, alg.origin
    assert nonvacuous >= 3
