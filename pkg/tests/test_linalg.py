import random
from fractions import Fraction

import pytest

from apolar_kit.linalg import (
    Basis,
    NotInSpan,
    SparseMatrix,
    in_span,
    kernel_basis,
    rank,
    rref,
    subspace_contains,
    subspace_intersection,
    subspace_sum,
)

from conftest import ALL_FIELDS, F2, Q


def dense(spec, rows):
    return SparseMatrix.from_dense(rows, spec)


def test_rref_rank_one():
    b, piv, r = rref(dense(Q, [[1, 2], [2, 4]]))
    assert r == 1 and piv == (0,)
    assert b.dense() == [[1, 2]]


def test_rref_identity():
    b, piv, r = rref(dense(Q, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    assert r == 3 and b == Basis.full(3, Q)


def test_rref_mod_2():
    assert rank(dense(F2, [[1, 1], [1, -1]])) == 1


def test_kernel_single_row():
    k = kernel_basis(dense(Q, [[1, 1, 0]]))
    assert k.dim == 2
    assert k.contains({0: Fraction(1), 1: Fraction(-1)}) and k.contains({2: Fraction(1)})


def test_kernel_identity_is_zero():
    assert kernel_basis(dense(Q, [[1, 0], [0, 1]])).dim == 0


def test_kernel_canonical():
    k = kernel_basis(dense(Q, [[1, 2], [2, 4]]))
    # canonical RREF representative of span{(-2, 1)}
    assert k.dense() == [[1, Fraction(-1, 2)]]


def test_in_span_examples():
    b = Basis.span([{0: 1, 2: 1}, {1: 1, 2: 3}], 4, Q)
    assert in_span({0: 1, 1: 1, 2: 4}, b) == [1, 1]
    assert in_span({}, b) == [0, 0]
    with pytest.raises(NotInSpan):
        in_span({3: 1}, b)


def test_subspace_ops_examples():
    e1 = Basis.span([{0: 1}], 3, Q)
    e2 = Basis.span([{1: 1}], 3, Q)
    assert subspace_contains(e1, e1)
    assert subspace_intersection(e1, e2).dim == 0
    assert subspace_sum(e1, e2).dim == 2


def test_from_entries_rejects_duplicates():
    with pytest.raises(ValueError):
        SparseMatrix.from_entries(2, 2, [(0, 0, 1), (0, 0, 2)], Q)


def test_transpose_roundtrip():
    m = dense(Q, [[1, 2, 0], [0, 0, 3]])
    assert m.transpose().transpose() == m
    assert m.transpose().to_dense() == [[1, 0], [2, 0], [0, 3]]


def _random_matrix(rng, spec, nrows, ncols, density=0.4):
    rows = []
    for _ in range(nrows):
        row = []
        for _ in range(ncols):
            if rng.random() < density:
                row.append(rng.randrange(spec.p) if spec.p else rng.randint(-9, 9))
            else:
                row.append(0)
        rows.append(row)
    return dense(spec, rows)


@pytest.mark.parametrize("spec", ALL_FIELDS, ids=lambda s: s.name)
def test_random_properties(spec):
    rng = random.Random(7 + spec.p)
    for _ in range(40):
        nr, nc = rng.randint(1, 8), rng.randint(1, 8)
        m = _random_matrix(rng, spec, nr, nc)
        b, piv, r = rref(m)
        # idempotence and rank-nullity
        assert rref(b.matrix())[0] == b
        assert r + kernel_basis(m).dim == nc
        # kernel vectors are killed
        for v in kernel_basis(m).rows:
            assert not m.apply(v)
        # in_span reconstructs random combinations
        coeffs = [rng.randint(-3, 3) for _ in b.rows]
        v = {}
        for c, row in zip(coeffs, b.rows):
            for k, a in row.items():
                v[k] = spec.add(v.get(k, spec.zero), spec.mul(spec.coerce(c), a))
        v = {k: a for k, a in v.items() if a}
        got = in_span(v, b)
        assert got == [spec.coerce(c) for c in coeffs]
        # dimension formula for sum and intersection
        a2 = rref(_random_matrix(rng, spec, rng.randint(1, 5), nc))[0]
        assert subspace_sum(b, a2).dim + subspace_intersection(b, a2).dim == b.dim + a2.dim
        assert subspace_contains(subspace_sum(b, a2), subspace_intersection(b, a2))


def test_rational_growth_is_contained():
    # Hilbert-like matrix: fraction-free elimination must stay exact and fast
    n = 12
    m = dense(Q, [[Fraction(1, i + j + 1) for j in range(n)] for i in range(n)])
    assert rank(m) == n
