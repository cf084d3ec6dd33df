from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fatsep.exactlin import (
    DEFAULT_PRIME,
    ContainmentError,
    DenseMatrix,
    FieldMismatchError,
    FieldSpec,
    Subspace,
    complement_basis,
    format_scalar,
    kernel_basis,
    matrix,
    rank,
    rref,
)

from conftest import fraction_rref

small = st.integers(min_value=-5, max_value=5)


@st.composite
def int_matrices(draw, max_rows=6, max_cols=6):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(small) for _ in range(c)] for _ in range(r)]


def test_field_spec_basics():
    F = FieldSpec.prime()
    assert F.p == DEFAULT_PRIME and not F.is_rational
    assert str(F) == f"GF({DEFAULT_PRIME})"
    assert str(FieldSpec.rational()) == "QQ"
    assert F(-1) == DEFAULT_PRIME - 1
    assert F(Fraction(1, 2)) * 2 % F.p == 1
    assert FieldSpec.rational()("3/4") == Fraction(3, 4)
    assert FieldSpec.from_json(F.to_json()) == F


@pytest.mark.parametrize("p", [4, 2, 1, 2**64 + 13])
def test_field_spec_rejects_bad_primes(p):
    with pytest.raises(ValueError):
        FieldSpec.prime(p)


def test_prime_field_rejects_nonunit_denominator():
    with pytest.raises((ValueError, ZeroDivisionError)):
        FieldSpec.prime(7)(Fraction(1, 7))


def test_scalar_arithmetic_and_mismatch():
    F, Q = FieldSpec.prime(7), FieldSpec.rational()
    a, b = F.scalar(3), F.scalar(5)
    assert (a + b).value == 1 and (a * b).value == 1 and (a - b).value == 5
    assert (a * a.inverse()).value == 1
    assert (Q.scalar(1) / Q.scalar(3)).value == Fraction(1, 3)
    with pytest.raises(FieldMismatchError):
        a + Q.scalar(1)


def test_format_scalar():
    assert format_scalar(7) == "7"
    assert format_scalar(Fraction(-3, 4)) == "-3/4"
    assert format_scalar(Fraction(6, 3)) == "2"


def test_rank_examples(field):
    assert rank(matrix(field, [[1, 2], [2, 4]])) == 1
    assert rank(matrix(field, [[1, 0], [0, 1]])) == 2
    assert rank(DenseMatrix.zeros(field, 3, 0)) == 0
    assert rank(DenseMatrix.zeros(field, 0, 3)) == 0


def test_rref_example(QQ):
    R, piv = rref(matrix(QQ, [[2, 4, 2], [1, 3, 4]]))
    assert piv == (0, 1)
    assert R.tolist() == [[1, 0, -5], [0, 1, 3]]


def test_kernel_convention(QQ):
    basis = kernel_basis(matrix(QQ, [[1, 1, 1]]))
    assert basis == [(-1, 1, 0), (-1, 0, 1)]


def test_field_mismatch_in_product():
    with pytest.raises(FieldMismatchError):
        matrix(FieldSpec.prime(), [[1]]) @ matrix(FieldSpec.rational(), [[1]])


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_rref_matches_fraction_oracle(rows):
    R, piv = rref(matrix(FieldSpec.rational(), rows))
    R2, piv2 = fraction_rref(rows)
    assert piv == piv2
    assert R.tolist() == R2


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_rref_matches_modular_oracle(rows):
    p = 101
    R, piv = rref(matrix(FieldSpec.prime(p), rows))
    R2, piv2 = fraction_rref(rows, p)
    assert piv == piv2
    assert R.tolist() == R2


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_rank_nullity_and_kernel(rows):
    for F in (FieldSpec.rational(), FieldSpec.prime()):
        M = matrix(F, rows)
        K = M.kernel()
        assert K.rows + M.rank() == M.cols
        if K.rows:
            assert not any((M @ K.transpose()).entries)
            assert K.rank() == K.rows


@settings(max_examples=40, deadline=None)
@given(int_matrices(max_rows=4, max_cols=5), int_matrices(max_rows=4, max_cols=5))
def test_complement_basis_spans_sum(a_rows, b_rows):
    Q = FieldSpec.rational()
    cols = min(len(a_rows[0]), len(b_rows[0]))
    sub = [r[:cols] for r in a_rows]
    ambient = [r[:cols] for r in b_rows] + sub
    comp = complement_basis(ambient, sub, Q)
    r_sub = rank(matrix(Q, sub))
    r_amb = rank(matrix(Q, ambient))
    assert len(comp) == r_amb - r_sub
    assert rank(matrix(Q, sub + comp)) == r_amb
    assert all(c in [tuple(x) for x in ambient] or list(c) in ambient for c in comp)


def test_complement_basis_first_fit(QQ):
    ambient = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]]
    comp = complement_basis(ambient, [[1, 0, 0]], QQ)
    assert [list(c) for c in comp] == [[0, 1, 0], [0, 0, 1]]


def test_complement_basis_containment_error(QQ):
    with pytest.raises(ContainmentError):
        complement_basis([[1, 0]], [[0, 1]], QQ)


def test_subspace_quotient_map(field):
    V = Subspace.span_rows(field, 4, [[1, 2, 0, 1], [0, 0, 1, 1]])
    Q = V.quotient_map()
    assert Q.rows == V.codim == 2
    assert not any((Q @ V.basis.transpose()).entries)
    assert Q.rank() == 2
    assert V.contains(matrix(field, [[1, 2, 1, 2]]))
    assert not V.contains(matrix(field, [[0, 1, 0, 0]]))
    W = V + Subspace.span_rows(field, 4, [[0, 1, 0, 0]])
    assert W.dim == 3
    assert Subspace.whole(field, 3).codim == 0


def test_select_and_scatter_columns(QQ):
    M = matrix(QQ, [[1, 2, 3]])
    assert M.select_columns([2, 0]).tolist() == [[3, 1]]
    assert M.scatter_columns([4, 0, 2], 5).tolist() == [[2, 0, 3, 0, 1]]
