from __future__ import annotations

from itertools import combinations_with_replacement
from math import comb

import pytest

from fatsep.cischeme import CI37_POINT, load_fixture
from fatsep.exactlin import FieldSpec
from fatsep.resolution import (
    GenericityError,
    OSequence,
    ShiftMultiset,
    artinian_reduction,
    is_o_sequence,
    last_betti_shifts,
    macaulay_bound,
    permissible_check,
    socle_dims,
    socle_vectors,
    verify_rank_bound,
    verify_socle_subset_permissible,
    verify_teofat,
)
from fatsep.scheme import FatPointScheme, delta_hf, hilbert_function, reduce_multiplicity
from fatsep.suites import random_corpus

Q = FieldSpec.rational()


def lex_ideal_growth(a: int, t: int) -> int:
    """h_{t+1} of R / (lex segment ideal L with dim (R/L)_t = a), via R_1 * L_t."""
    nv = 2
    while comb(nv - 1 + t, t) < a:
        nv += 1
    nv += 1
    mons_t = sorted((m for m in _exponents(nv, t)), reverse=True)  # lex, x_0 first
    L = mons_t[: len(mons_t) - a]
    generated = {tuple(e + (k == j) for k, e in enumerate(m)) for m in L for j in range(nv)}
    return comb(nv + t, t + 1) - len(generated)


def _exponents(nv, t):
    for c in combinations_with_replacement(range(nv), t):
        e = [0] * nv
        for v in c:
            e[v] += 1
        yield tuple(e)


def test_macaulay_examples():
    assert macaulay_bound(0, 3) == 0
    assert macaulay_bound(3, 1) == 6
    assert macaulay_bound(4, 2) == 5
    with pytest.raises(ValueError):
        macaulay_bound(2, 0)


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_macaulay_matches_lex_ideal_oracle(t):
    for a in range(31):
        assert macaulay_bound(a, t) == lex_ideal_growth(a, t), (a, t)


def test_is_o_sequence():
    assert is_o_sequence((1, 7))
    assert is_o_sequence((1,))
    assert is_o_sequence(OSequence((1, 2, 3, 4, 5)))
    assert not is_o_sequence((1, 2, 0, 1))
    assert not is_o_sequence((2, 1))
    assert not is_o_sequence((1, 1, 2))
    assert is_o_sequence((1, 2, 3, 4, 4, 3, 1, 0))


def test_permissible_check():
    H = hilbert_function(load_fixture("example2"))
    assert permissible_check(H, (5, 6))
    assert not permissible_check(H, (1, 1))
    assert not permissible_check(H, (0, 0))
    P = hilbert_function(FatPointScheme(2, Q, ((1, 0, 0),), (1,)))
    assert permissible_check(P, (0,))  # the empty scheme


def test_artinian_reduction_dims(field):
    Z = load_fixture("example2", field)
    A = artinian_reduction(Z, 0)
    assert A.dims == (1, 2, 3, 4, 4, 3, 1, 0)
    assert sum(A.dims) == Z.degree
    assert A.linear_form.degree == 1
    assert len(A.standard_monomials(4)) == 4
    P = FatPointScheme(2, field, ((1, 2, 3),), (1,))
    assert artinian_reduction(P, 5).dims == (1, 0)


def test_artinian_reduction_empty():
    with pytest.raises(Exception):
        artinian_reduction(FatPointScheme(2, Q), 0)


def test_genericity_failure_reports_field():
    # Every GF(5)-rational point of the plane: each linear form vanishes on some
    # of them, so none is a nonzerodivisor.
    F = FieldSpec.prime(5)
    pts = [(1, a, b) for a in range(5) for b in range(5)] + [(0, 1, b) for b in range(5)] + [(0, 0, 1)]
    Z = FatPointScheme(2, F, tuple(pts), (1,) * len(pts))
    with pytest.raises(GenericityError, match="GF\\(5\\)"):
        artinian_reduction(Z, 0)


def test_socle_examples(field):
    assert socle_dims(load_fixture("example2", field), 0) == {5: 1, 6: 1}
    assert socle_dims(FatPointScheme(3, field, ((1, 1, 1, 1),), (1,)), 0) == {0: 1}
    assert tuple(last_betti_shifts(FatPointScheme(3, field, ((1, 1, 1, 1),), (1,)), 0)) == (3,)


def test_ci37_shifts(field):
    Z2 = load_fixture("ci37", field)
    assert socle_dims(Z2, 0) == {10: 2, 13: 1, 14: 1}
    assert tuple(last_betti_shifts(Z2, 0)) == (12, 12, 15, 16)
    Z1 = reduce_multiplicity(Z2, CI37_POINT)
    assert tuple(last_betti_shifts(Z1, 0)) == (11, 12, 14, 16)


def test_top_degree_has_full_socle():
    for Z in random_corpus(5, 10, FieldSpec.prime()):
        A = artinian_reduction(Z, 0)
        assert socle_dims(Z, 0).get(A.top) == A.dims[A.top]
        assert sum(socle_dims(Z, 0).values()) == len(last_betti_shifts(Z, 0))


def test_seed_independence():
    Z = load_fixture("ci37")
    assert socle_dims(Z, 0) == socle_dims(Z, 1) == socle_dims(Z, 99)
    assert artinian_reduction(Z, 0).linear_form != artinian_reduction(Z, 1).linear_form


def test_socle_vectors():
    B = ShiftMultiset((12, 12, 15, 16))
    assert socle_vectors(B, 2, 2) == {(10, 10), (10, 13), (10, 14), (13, 14)}
    assert socle_vectors(B, 4, 2) == {(10, 10, 13, 14)}
    assert socle_vectors((7, 8), 2, 2) == {(5, 6)}
    with pytest.raises(ValueError):
        socle_vectors(B, 5, 2)


def test_shift_multiset_sorted():
    assert ShiftMultiset((5, 3, 3)).shifts == (3, 3, 5)
    with pytest.raises(ValueError):
        ShiftMultiset((0,))


def test_verifiers_on_fixtures():
    Z2 = load_fixture("ci37")
    assert verify_teofat(Z2, CI37_POINT)
    assert verify_rank_bound(Z2)
    assert verify_socle_subset_permissible(Z2, CI37_POINT)
    Z = load_fixture("example2")
    assert verify_socle_subset_permissible(Z, 0)
    for n in (2, 3):
        for m in (1, 2, 3, 4):
            P = FatPointScheme(n, Q, ((1,) + (0,) * n,), (m,))
            assert verify_teofat(P, 0)
            assert len(last_betti_shifts(P)) == comb(m + n - 2, n - 1)
            assert verify_socle_subset_permissible(P, 0)


def test_reduced_ci_teofat():
    from fatsep.cischeme import CIType, GridSpec, grid_ci

    X, _ = grid_ci(GridSpec.default(CIType((2, 3))))
    assert tuple(last_betti_shifts(X)) == (5,)
    assert all(verify_teofat(X, i) for i in range(X.s))


def test_corpus_theorems():
    for Z in random_corpus(11, 15, FieldSpec.prime()):
        assert is_o_sequence(delta_hf(hilbert_function(Z)))
        assert verify_rank_bound(Z, 3)
        for i in range(Z.s):
            assert verify_teofat(Z, i, 3)
            assert verify_socle_subset_permissible(Z, i, 3)
