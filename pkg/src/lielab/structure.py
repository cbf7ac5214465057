"""Ideals, annihilators, quadratic annihilators, and property checks.

Universal statements ("no nonzero element such that ...") are decided by
exhaustive enumeration and therefore need a finite coefficient field;
over Q they come back undecided.  Enumerations honour an element budget
and abort with BudgetExceeded instead of sampling.  A counterexample to
semiprimeness or primeness always exists among principal ideals, which
is what makes single-element enumeration complete for those checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .algebra import Algebra, Extension, _ideal_defect, center  # noqa: F401
from .errors import (
    AmbientMismatch,
    BudgetExceeded,
    MissingInvolution,
    NotAnIdeal,
    UndecidedError,
)
from .exactlin import Field, Subspace, kernel, rref
from .outcome import Verdict

__all__ = [
    "DEFAULT_BUDGET",
    "QAnnSet",
    "DegreeResult",
    "annihilator",
    "center",
    "degree",
    "ideal_generated",
    "property_check",
    "qann",
]

DEFAULT_BUDGET = 10**6
_CHUNK = 1 << 15


def require_budget(required: int, budget: int | None) -> int:
    limit = DEFAULT_BUDGET if budget is None else budget
    if required > limit:
        raise BudgetExceeded(required, limit)
    return limit


def _require_finite(fld: Field, what: str) -> int:
    if not fld.is_finite:
        raise UndecidedError(f"{what} needs enumeration over a finite field")
    return fld.characteristic


# ---------------------------------------------------------------------------
# element enumeration (finite fields)


def _element_blocks(basis: np.ndarray, p: int, chunk: int = _CHUNK):
    """All span elements in lexicographic coefficient order, chunked."""
    d = basis.shape[0]
    total = p**d
    start = 0
    while start < total:
        count = min(chunk, total - start)
        coeffs = kernels.decode_block(start, count, p, d)
        yield (coeffs @ basis) % p
        start += count


def _projective_blocks(basis: np.ndarray, p: int, chunk: int = _CHUNK):
    """One representative per scalar line, leading coefficient one.

    Ordered by leading coordinate position, then lexicographically, and
    that order is what witness determinism relies on.
    """
    d = basis.shape[0]
    for lead in range(d):
        width = d - lead - 1
        total = p**width
        start = 0
        while start < total:
            count = min(chunk, total - start)
            coeffs = np.zeros((count, d), dtype=np.int64)
            coeffs[:, lead] = 1
            if width:
                coeffs[:, lead + 1 :] = kernels.decode_block(start, count, p, width)
            yield (coeffs @ basis) % p
            start += count


# ---------------------------------------------------------------------------
# annihilators and ideals


def _stacked_ad(alg: Algebra, vectors: np.ndarray) -> np.ndarray:
    mats = [alg.ad(vectors[i]) for i in range(vectors.shape[0])]
    if not mats:
        return alg.field.zeros(0, alg.dim)
    return np.concatenate(mats, axis=0)


def annihilator(x_space: Subspace, y_space: Subspace, alg: Algebra) -> Subspace:
    """{x in X : [x, Y] = 0}, a subspace of X.

    When X is an ideal and Y = X this is the centre of X; the bracket of
    an associative algebra is the commutator.
    """
    for s in (x_space, y_space):
        if s.field != alg.field or s.ambient != alg.dim:
            raise AmbientMismatch("subspace does not live in the algebra")
    stacked = _stacked_ad(alg, y_space.basis)
    if x_space.dim == 0 or y_space.dim == 0:
        return x_space if y_space.dim == 0 else Subspace.zero(alg.field, alg.dim)
    m = alg.field.dot(stacked, x_space.basis.T)
    coeff_kernel = kernel(m, alg.field)
    vecs = [
        alg.field.dot(coeff_kernel.basis[i], x_space.basis)
        for i in range(coeff_kernel.dim)
    ]
    return Subspace.from_vectors(alg.field, alg.dim, vecs)


def ideal_generated(alg: Algebra, generators, star: bool = False) -> Subspace:
    """Smallest ideal containing the generators.

    Lie: closure under bracketing with the whole algebra.  Associative:
    closure under products with basis elements from both sides (plus the
    involution image when star is set).
    """
    if isinstance(generators, Subspace):
        span = generators
        if span.field != alg.field or span.ambient != alg.dim:
            raise AmbientMismatch("generators live in a different space")
    else:
        span = Subspace.from_vectors(
            alg.field, alg.dim, [alg.coerce_vector(v) for v in generators]
        )
    if star and alg.involution is None:
        raise MissingInvolution("star ideal needs an involution")
    while True:
        extra = []
        for r in range(span.dim):
            v = span.basis[r]
            if star:
                w = alg.star(v)
                if not span.member(w):
                    extra.append(w)
            for i in range(alg.dim):
                ei = alg.basis_vector(i)
                w = alg.mul(ei, v)
                if not span.member(w):
                    extra.append(w)
                if alg.kind == "associative":
                    w = alg.mul(v, ei)
                    if not span.member(w):
                        extra.append(w)
        if not extra:
            return span
        span = span.sum(Subspace.from_vectors(alg.field, alg.dim, extra))


# ---------------------------------------------------------------------------
# quadratic annihilators


def _t3_predicate(v) -> bool:
    # scalar diagonal plus a row-one or column-three tail
    return v[0] == v[3] == v[5] and (v[1] == 0 or v[4] == 0)


def _t3_quotient_predicate(v) -> bool:
    return v[2] == 0 and v[4] == 0 and (v[0] == 0 or v[3] == 0)


def _known_qann_predicate(alg: Algebra):
    if alg.origin == ("minus", ("ut", 3)):
        return _t3_predicate
    if (
        len(alg.origin) == 3
        and alg.origin[0] == "quotient"
        and alg.origin[1] == ("minus", ("ut", 3))
        and alg.origin[2] is True
    ):
        return _t3_quotient_predicate
    return None


@dataclass
class QAnnSet:
    """Enumerated quadratic annihilator: an element list, not a subspace.

    The set is closed under scalar multiples but in general not under
    sums.  ``predicate`` is a closed-form membership test when one is
    known for the algebra at hand.
    """

    algebra: Algebra
    space: Subspace
    targets: Subspace
    elements: np.ndarray  # (count, dim), lexicographic order
    predicate: object = None

    def __len__(self) -> int:
        return self.elements.shape[0]

    def __iter__(self):
        return iter(self.elements)

    def member(self, v) -> bool:
        return qann(self.space, self.targets, self.algebra, member=v)

    def contains_vector(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64) % self.algebra.field.characteristic
        return bool((self.elements == v).all(axis=1).any())

    def non_closure_witness(self):
        """First pair (by enumeration order) whose sum drops out of the set."""
        n = len(self)
        p = self.algebra.field.characteristic
        bt = self.algebra.bracket_tensor
        tgt = self.targets.basis
        for i in range(n):
            sums = (self.elements[i][None, :] + self.elements[i:]) % p
            ok = kernels.batch_sq_kills(sums, bt, tgt, p)
            bad = np.nonzero(~ok)[0]
            if bad.size:
                j = i + int(bad[0])
                return self.elements[i], self.elements[j], sums[int(bad[0])]
        return None


def qann(
    x_space: Subspace,
    y_space: Subspace,
    alg: Algebra,
    member=None,
    budget: int | None = None,
):
    """Quadratic annihilator QAnn_X(Y) = {x in X : [x, [x, Y]] = 0}.

    member mode decides one element exactly over any field; enumerate
    mode (member is None) lists the whole set over a finite field.
    """
    for s in (x_space, y_space):
        if s.field != alg.field or s.ambient != alg.dim:
            raise AmbientMismatch("subspace does not live in the algebra")
    if member is not None:
        x = alg.coerce_vector(member)
        if not x_space.member(x):
            return False
        for r in range(y_space.dim):
            w = alg.bracket(x, alg.bracket(x, y_space.basis[r]))
            if not alg.is_zero(w):
                return False
        return True
    p = _require_finite(alg.field, "quadratic annihilator enumeration")
    require_budget(p**x_space.dim, budget)
    found = []
    if y_space.dim == 0:
        for block in _element_blocks(x_space.basis, p):
            found.append(block)
    else:
        for block in _element_blocks(x_space.basis, p):
            mask = kernels.batch_sq_kills(block, alg.bracket_tensor, y_space.basis, p)
            if mask.any():
                found.append(block[mask])
    elements = (
        np.concatenate(found, axis=0) if found else np.zeros((0, alg.dim), dtype=np.int64)
    )
    return QAnnSet(alg, x_space, y_space, elements, _known_qann_predicate(alg))


# ---------------------------------------------------------------------------
# property checks


def _first_nonzero(block: np.ndarray, mask: np.ndarray):
    hits = np.nonzero(mask)[0]
    return block[int(hits[0])] if hits.size else None


def _check_snd(alg: Algebra, budget) -> Verdict:
    if not alg.field.is_finite:
        return Verdict("undecided", note="needs enumeration over a finite field")
    p = alg.field.characteristic
    require_budget(p**alg.dim, budget)
    eye = np.eye(alg.dim, dtype=np.int64)
    for block in _projective_blocks(eye, p):
        mask = kernels.batch_sq_kills(block, alg.bracket_tensor, eye, p)
        w = _first_nonzero(block, mask)
        if w is not None:
            return Verdict("fails", (w,), note="absolute zero divisor")
    return Verdict("holds")


def _abelian_ideal(alg: Algebra, ideal: Subspace) -> bool:
    b = ideal.basis
    if b.shape[0] == 0:
        return True
    p = alg.field.characteristic
    ads = kernels.batch_ad(b, alg.bracket_tensor, p)
    prods = np.einsum("ikl,jl->ijk", ads, b) % p
    return not prods.any()


def _check_semiprime(alg: Algebra, budget) -> Verdict:
    if not alg.field.is_finite:
        return Verdict("undecided", note="needs enumeration over a finite field")
    p = alg.field.characteristic
    require_budget(p**alg.dim, budget)
    eye = np.eye(alg.dim, dtype=np.int64)
    if alg.kind == "lie":
        for block in _projective_blocks(eye, p):
            for row in block:
                ideal = ideal_generated(alg, [row])
                if _abelian_ideal(alg, ideal):
                    return Verdict("fails", (row,), note="generates an abelian ideal")
        return Verdict("holds")
    # associative: the ideal of x squares to zero iff x x = 0 and x e_i x = 0
    for block in _projective_blocks(eye, p):
        sq = kernels.batch_mul(block, block, alg.table, p)
        cand = np.nonzero(~sq.any(axis=1))[0]
        for idx in cand:
            x = block[int(idx)]
            if _sandwich_zero(alg, x, x):
                return Verdict("fails", (x,), note="generates a square-zero ideal")
    return Verdict("holds")


def _sandwich_zero(alg: Algebra, u: np.ndarray, v: np.ndarray) -> bool:
    # u v = 0 and u e_i v = 0 for every basis element
    if not alg.is_zero(alg.mul(u, v)):
        return False
    for i in range(alg.dim):
        if not alg.is_zero(alg.mul(alg.mul(u, alg.basis_vector(i)), v)):
            return False
    return True


def _constrained_kernel(alg: Algebra, mats) -> Subspace:
    """Common kernel of a sequence of matrices, stopping early at zero."""
    space = Subspace.full(alg.field, alg.dim)
    for m in mats:
        if space.dim == 0:
            break
        restricted = alg.field.dot(m, space.basis.T)
        coeff = kernel(restricted, alg.field)
        vecs = [
            alg.field.dot(coeff.basis[i], space.basis) for i in range(coeff.dim)
        ]
        space = Subspace.from_vectors(alg.field, alg.dim, vecs)
    return space


def _check_prime(alg: Algebra, budget) -> Verdict:
    if not alg.field.is_finite:
        return Verdict("undecided", note="needs enumeration over a finite field")
    p = alg.field.characteristic
    require_budget(p**alg.dim, budget)
    eye = np.eye(alg.dim, dtype=np.int64)
    if alg.kind == "lie":
        for block in _projective_blocks(eye, p):
            for row in block:
                ideal = ideal_generated(alg, [row])
                ann = annihilator(Subspace.full(alg.field, alg.dim), ideal, alg)
                if ann.dim > 0:
                    return Verdict(
                        "fails", (row, ann.basis[0]), note="orthogonal ideal pair"
                    )
        return Verdict("holds")
    lefts = [alg.left_mult(alg.basis_vector(i)) for i in range(alg.dim)]
    for block in _projective_blocks(eye, p):
        # an invertible left multiplication leaves the constraints no kernel
        ranks = kernels.batch_rank(_left_mult_batch(block, alg, p), p)
        for idx in np.nonzero(ranks < alg.dim)[0]:
            row = block[int(idx)]
            space = _constrained_kernel(alg, _prime_mats(alg, row, lefts))
            if space.dim > 0:
                return Verdict(
                    "fails", (row, space.basis[0]), note="orthogonal ideal pair"
                )
    return Verdict("holds")


def _left_mult_batch(block: np.ndarray, alg: Algebra, p: int) -> np.ndarray:
    return np.tensordot(block, alg.table, axes=([1], [0])).transpose(0, 2, 1) % p


def _prime_mats(alg: Algebra, row: np.ndarray, lefts):
    lx = alg.left_mult(row)
    yield lx
    for li in lefts:
        yield alg.field.dot(lx, li)


def _star_mats(alg: Algebra, row: np.ndarray, lefts):
    sigma = alg.involution
    for u in (row, alg.star(row)):
        lu = alg.left_mult(u)
        yield lu
        yield alg.field.dot(lu, sigma)
        for li in lefts:
            m = alg.field.dot(lu, li)
            yield m
            yield alg.field.dot(m, sigma)


def _check_star_prime(alg: Algebra, budget) -> Verdict:
    if alg.kind != "associative":
        raise ValueError("star primeness applies to associative algebras")
    if alg.involution is None:
        raise MissingInvolution("star primeness needs an involution")
    if not alg.field.is_finite:
        return Verdict("undecided", note="needs enumeration over a finite field")
    p = alg.field.characteristic
    require_budget(p**alg.dim, budget)
    eye = np.eye(alg.dim, dtype=np.int64)
    lefts = [alg.left_mult(alg.basis_vector(i)) for i in range(alg.dim)]
    for block in _projective_blocks(eye, p):
        ranks = kernels.batch_rank(_left_mult_batch(block, alg, p), p)
        for idx in np.nonzero(ranks < alg.dim)[0]:
            row = block[int(idx)]
            space = _constrained_kernel(alg, _star_mats(alg, row, lefts))
            if space.dim > 0:
                return Verdict(
                    "fails", (row, space.basis[0]), note="orthogonal star ideal pair"
                )
    return Verdict("holds")


def _check_star_semiprime(alg: Algebra, budget) -> Verdict:
    if alg.kind != "associative":
        raise ValueError("star semiprimeness applies to associative algebras")
    if alg.involution is None:
        raise MissingInvolution("star semiprimeness needs an involution")
    if not alg.field.is_finite:
        return Verdict("undecided", note="needs enumeration over a finite field")
    p = alg.field.characteristic
    require_budget(p**alg.dim, budget)
    eye = np.eye(alg.dim, dtype=np.int64)
    for block in _projective_blocks(eye, p):
        sq = kernels.batch_mul(block, block, alg.table, p)
        cand = np.nonzero(~sq.any(axis=1))[0]
        for idx in cand:
            x = block[int(idx)]
            xs = alg.star(x)
            if all(
                _sandwich_zero(alg, u, v)
                for u in (x, xs)
                for v in (x, xs)
            ):
                return Verdict("fails", (x,), note="generates a square-zero star ideal")
    return Verdict("holds")


def _check_essential(alg: Algebra, ideal: Subspace, budget) -> Verdict:
    if ideal.field != alg.field or ideal.ambient != alg.dim:
        raise AmbientMismatch("ideal lives in a different space")
    w = _ideal_defect(alg, ideal)
    if w is not None:
        raise NotAnIdeal(w)
    if ideal.dim == 0:
        return Verdict("fails", None, note="the zero ideal is never essential")
    if not alg.field.is_finite:
        return Verdict("undecided", note="needs enumeration over a finite field")
    p = alg.field.characteristic
    require_budget(p**alg.dim, budget)
    eye = np.eye(alg.dim, dtype=np.int64)
    for block in _projective_blocks(eye, p):
        for row in block:
            other = ideal_generated(alg, [row])
            if other.intersect(ideal).dim == 0:
                return Verdict("fails", (row,), note="generates an ideal missing I")
    return Verdict("holds")


def _check_weak_quotient(ext: Extension) -> Verdict:
    q = ext.ambient
    sub = ext.sub
    # containment [L, q] <= L for every q, linear in q so basis suffices
    for j in range(q.dim):
        ej = q.basis_vector(j)
        for r in range(sub.dim):
            w = q.bracket(sub.basis[r], ej)
            if not sub.member(w):
                return Verdict(
                    "fails", (sub.basis[r], ej, w), note="[L, q] leaves L"
                )
    ann = annihilator(Subspace.full(q.field, q.dim), sub, q)
    if ann.dim > 0:
        return Verdict("fails", (ann.basis[0],), note="nonzero element kills L")
    return Verdict("holds")


def property_check(kind: str, *target, budget: int | None = None) -> Verdict:
    """Decide a structural property.

    kind: 'semiprime' | 'prime' | 'snd' | 'essential' | 'weak_quotient'
    | 'star_prime' | 'star_semiprime'.  Targets: an Algebra; essential
    takes (Algebra, Subspace); weak_quotient takes an Extension.
    """
    if kind == "snd":
        return _check_snd(*target, budget)
    if kind == "semiprime":
        return _check_semiprime(*target, budget)
    if kind == "prime":
        return _check_prime(*target, budget)
    if kind == "essential":
        return _check_essential(*target, budget)
    if kind == "weak_quotient":
        return _check_weak_quotient(*target)
    if kind == "star_prime":
        return _check_star_prime(*target, budget)
    if kind == "star_semiprime":
        return _check_star_semiprime(*target, budget)
    raise ValueError(f"unknown property {kind!r}")


# ---------------------------------------------------------------------------
# degree


@dataclass
class DegreeResult:
    value: int
    lower_bound_only: bool
    witness: np.ndarray | None
    note: str = ""


def _center_data(alg: Algebra):
    """Basis of the associative center and its left-multiplication matrices."""
    zb = center(alg).basis
    zmats = [alg.left_mult(zb[i]) for i in range(zb.shape[0])]
    return zb, zmats


def _minpoly_degree_single(alg: Algebra, x: np.ndarray, zmats=None) -> int:
    """Smallest d with x^d in the Z-span of the lower powers of x.

    That d is the degree of the monic minimal polynomial of x with
    coefficients in the center.  In a non-unital algebra the element is
    replaced by left multiplication with the identity operator adjoined.
    """
    if alg.dim == 0:
        return 0
    fld = alg.field
    if zmats is None:
        _, zmats = _center_data(alg)
    if alg.unit is not None:
        power = alg.unit

        def coeff_rows(v):
            return [fld.dot(m, v) for m in zmats]

        def advance(v):
            return alg.mul(v, x)

        def flat(v):
            return v

    else:
        lx = alg.left_mult(x)
        power = fld.eye(alg.dim)

        def coeff_rows(v):
            return [v.reshape(-1)] + [fld.dot(m, v).reshape(-1) for m in zmats]

        def advance(v):
            return fld.dot(v, lx)

        def flat(v):
            return v.reshape(-1)

    rows = []
    d = 0
    while True:
        rows.extend(coeff_rows(power))
        power = advance(power)
        d += 1
        _, base_rank, _ = rref(np.stack(rows), fld)
        _, ext_rank, _ = rref(np.stack(rows + [flat(power)]), fld)
        if ext_rank == base_rank:
            return d


def _batch_degree_central(block: np.ndarray, alg: Algebra, p: int) -> np.ndarray:
    return kernels.batch_minpoly_deg(block, alg.table, alg.unit, p)


def _batch_degree_general(block: np.ndarray, alg: Algebra, zmats, p: int) -> np.ndarray:
    """Z-coefficient minimal polynomial degrees for a batch of elements."""
    count = block.shape[0]
    degs = np.zeros(count, dtype=np.int64)
    power = np.broadcast_to(alg.unit, block.shape).copy() % p
    rows = []
    for d in range(1, alg.dim + 1):
        rows.extend((power @ m.T) % p for m in zmats)
        power = kernels.batch_mul(power, block, alg.table, p)
        base = np.stack(rows, axis=1)
        ext = np.concatenate([base, power[:, None, :]], axis=1)
        member = kernels.batch_rank(base, p) == kernels.batch_rank(ext, p)
        hit = member & (degs == 0)
        degs[hit] = d
        if (degs > 0).all():
            break
    return degs


def degree(
    alg: Algebra,
    x=None,
    budget: int | None = None,
    samples: int = 16,
    seed: int = 0,
) -> DegreeResult:
    """deg(A): the largest minimal-polynomial degree over the center.

    Exact over a finite field (full enumeration, budget permitting);
    over Q the maximum over the basis and seeded random samples is
    reported as a lower bound only.
    """
    if alg.kind != "associative":
        raise ValueError("degree applies to associative algebras")
    zb, zmats = _center_data(alg)
    if x is not None:
        v = alg.coerce_vector(x)
        return DegreeResult(_minpoly_degree_single(alg, v, zmats), False, v)
    fld = alg.field
    if fld.is_finite:
        p = fld.characteristic
        require_budget(p**alg.dim, budget)
        eye = np.eye(alg.dim, dtype=np.int64)
        best = 0
        witness = None
        if alg.unit is not None:
            central = zb.shape[0] == 1
            for block in _projective_blocks(eye, p):
                if central:
                    degs = _batch_degree_central(block, alg, p)
                else:
                    degs = _batch_degree_general(block, alg, zmats, p)
                i = int(np.argmax(degs))
                if int(degs[i]) > best:
                    best = int(degs[i])
                    witness = block[i]
        else:
            for block in _projective_blocks(eye, p):
                for row in block:
                    d = _minpoly_degree_single(alg, row, zmats)
                    if d > best:
                        best = d
                        witness = row
        if best == 0:  # dimension zero
            return DegreeResult(0, False, None)
        return DegreeResult(best, False, witness)
    import random

    rng = random.Random(seed)
    candidates = [alg.basis_vector(i) for i in range(alg.dim)]
    for _ in range(samples):
        candidates.append(fld.vector([rng.randint(-9, 9) for _ in range(alg.dim)]))
    best = 0
    witness = None
    for v in candidates:
        d = _minpoly_degree_single(alg, v, zmats)
        if d > best:
            best = d
            witness = v
    return DegreeResult(best, True, witness, note="basis and sampled elements only")


def degree_exceeds(alg: Algebra, bound: int, budget: int | None = None):
    """First element (scan order) of degree above bound, or None.

    Cheaper than degree() when a witness exists: the projective scan
    stops at the first element whose minimal polynomial over the center
    is long enough, and only a witness-free scan pays for the whole
    enumeration.  Returns (witness, degree) or None.
    """
    if alg.kind != "associative":
        raise ValueError("degree applies to associative algebras")
    fld = alg.field
    if not fld.is_finite:
        raise UndecidedError("degree comparison needs enumeration over a finite field")
    if alg.dim == 0:
        return None
    zb, zmats = _center_data(alg)
    p = fld.characteristic
    limit = DEFAULT_BUDGET if budget is None else budget
    scanned = 0
    eye = np.eye(alg.dim, dtype=np.int64)
    for block in _projective_blocks(eye, p):
        if alg.unit is None:
            degs = np.array([_minpoly_degree_single(alg, row, zmats) for row in block])
        elif zb.shape[0] == 1:
            degs = _batch_degree_central(block, alg, p)
        else:
            degs = _batch_degree_general(block, alg, zmats, p)
        over = np.nonzero(degs > bound)[0]
        if over.size:
            i = int(over[0])
            return block[i].copy(), int(degs[i])
        scanned += block.shape[0] * (p - 1)
        if scanned > limit:
            raise BudgetExceeded(p**alg.dim, limit)
    return None
