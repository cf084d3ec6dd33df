from __future__ import annotations

import random
from itertools import combinations_with_replacement
from math import comb

import pytest

from fatsep.cischeme import CI37_POINT, load_fixture
from fatsep.exactlin import FieldSpec
from fatsep.polyring import HomogeneousForm, monomial_basis
from fatsep.scheme import FatPointScheme, HilbertFunction, hilbert_function, ideal_basis, membership, reduce_multiplicity
from fatsep.separator import (
    SeparatorProfile,
    SeparatorSet,
    colon_check,
    intermediate_hf,
    is_separator,
    minimal_separators,
    nu,
    profile_from_hfs,
    quotient_dim,
    saturation_check,
    separating_set,
    separator_degrees,
)
from fatsep.suites import random_corpus

Q = FieldSpec.rational()


@pytest.fixture(scope="module")
def corpus():
    # Length law corpus: n in {2,3}, s <= 6, m_i <= 3.
    return random_corpus(2024, 20, FieldSpec.prime(), max_points=6)


def test_nu():
    Z = FatPointScheme(3, Q, ((1, 0, 0, 0),), (3,))
    assert nu(Z, 0) == 6
    assert nu(load_fixture("example2"), 0) == 2
    assert nu(FatPointScheme(3, Q, ((1, 0, 0, 0),), (1,)), 0) == 1


def test_quotient_dim_example2(field):
    Z = load_fixture("example2", field)
    assert [quotient_dim(Z, 0, t) for t in (4, 5, 6)] == [0, 1, 2]


def test_profile_from_hfs():
    HZ = HilbertFunction((1, 3, 6, 10, 14, 17, 18), 18, 6)
    HZp = HilbertFunction((1, 3, 6, 10, 14, 16), 16, 5)
    assert profile_from_hfs(HZ, HZp).degrees == (5, 6)
    assert profile_from_hfs(HZ, HZ).degrees == ()
    with pytest.raises(ValueError):
        profile_from_hfs(HZp, HZ)


def test_profile_type():
    with pytest.raises(ValueError):
        SeparatorProfile((3, 2))
    p = SeparatorProfile((1, 1, 4))
    assert p.count(1) == 2 and p.count_upto(3) == 2 and str(p) == "(1,1,4)"


def test_separator_degrees_worked_values(field):
    Z = load_fixture("example2", field)
    assert {separator_degrees(Z, i).degrees for i in range(Z.s)} == {(5, 6)}
    Z2 = load_fixture("ci37", field)
    assert separator_degrees(Z2, CI37_POINT).degrees == (10, 13)
    assert separator_degrees(reduce_multiplicity(Z2, CI37_POINT), CI37_POINT).degrees == (12,)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_fat_point_separators_are_monomials(n, m):
    Z = FatPointScheme(n, Q, ((1,) + (0,) * n,), (m,))
    S = minimal_separators(Z, 0)
    assert S.profile.degrees == (m - 1,) * comb(m + n - 2, n - 1)
    expected = {HomogeneousForm(Q, n + 1, m - 1, {(0,) + mono: 1}) for mono in monomial_basis(n, m - 1)}
    assert set(S.forms) == expected


def test_reduced_points_classical_separator(field):
    Z = FatPointScheme(2, field, ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)), (1, 1, 1, 1))
    for i in range(4):
        (F,) = minimal_separators(Z, i).forms
        others = [j for j in range(4) if j != i]
        from fatsep.polyring import evaluate

        assert evaluate(F, Z.points[i].coords) != 0
        assert all(evaluate(F, Z.points[j].coords) == 0 for j in others)


def test_is_separator_cases(field):
    Z = load_fixture("example2", field)
    S = minimal_separators(Z, 0)
    assert [F.degree for F in S.forms] == [5, 6]
    assert all(is_separator(Z, 0, F) for F in S.forms)
    assert not any(is_separator(Z, 0, F) for F in ideal_basis(Z, 6))
    assert not is_separator(Z, 0, HomogeneousForm.constant(field, 3))


def test_reverse_order_gives_same_profile(field):
    Z = load_fixture("ci37", field)
    fwd = minimal_separators(Z, CI37_POINT)
    rev = minimal_separators(Z, CI37_POINT, reverse=True)
    assert fwd.profile == rev.profile
    assert [F.degree for F in rev.forms] == [10, 13]


def test_separating_sets():
    Z = load_fixture("ci37")
    D = separating_set(Z, CI37_POINT)
    assert [p.degrees for p in D.levels] == [(10, 13), (12,)]
    assert str(D) == "{(12),(10,13)}"
    P3 = FatPointScheme(2, Q, ((1, 0, 0),), (3,))
    assert [p.degrees for p in separating_set(P3, 0).levels] == [(2, 2, 2), (1, 1), (0,)]
    X = FatPointScheme(2, Q, ((1, 0, 0), (0, 1, 0)), (1, 1))
    assert [p.degrees for p in separating_set(X, 0).levels] == [(1,)]


def test_intermediate_hf(field):
    Z = load_fixture("example2", field)
    assert intermediate_hf(Z, 0, 0) == hilbert_function(Z)
    assert intermediate_hf(Z, 0, 1).stable_value == 17
    assert intermediate_hf(Z, 0, 2) == hilbert_function(reduce_multiplicity(Z, 0))
    with pytest.raises(ValueError):
        intermediate_hf(Z, 0, 3)


def test_colon_and_saturation_example2(field):
    Z = load_fixture("example2", field)
    for i in (0, 3):
        assert colon_check(Z, i, 1, 8) and colon_check(Z, i, 2, 8)
        assert all(saturation_check(Z, i, j, 8) for j in range(3))


def test_colon_ci37():
    Z = load_fixture("ci37")
    assert colon_check(Z, CI37_POINT, 1, 6)
    assert colon_check(Z, CI37_POINT, 2)
    assert saturation_check(Z, CI37_POINT, 1)


def test_checks_detect_wrong_generators():
    Z = load_fixture("example2")
    S = minimal_separators(Z, 0)
    L = HomogeneousForm.linear(Z.field, (1, 1, 1))
    through_p = HomogeneousForm.linear(Z.field, (-1, 1, 0))  # vanishes at P_1 = (1:1:1)
    # Multiplying by a form through P_1 makes the colon the whole ring.
    fake = SeparatorSet((S.forms[0] * through_p, S.forms[1]), S.profile)
    assert not colon_check(Z, 0, 1, separators=fake)
    # A form that is a unit at P_1 leaves the colon unchanged.
    unit = SeparatorSet((S.forms[0] * L, S.forms[1]), S.profile)
    assert colon_check(Z, 0, 1, separators=unit)
    # Adjoining a linear form that misses every point is not saturated.
    lin = SeparatorSet((L,), SeparatorProfile((1,)))
    assert not saturation_check(Z, 0, 1, separators=lin)


def test_length_law_and_laws_on_corpus(corpus):
    for Z in corpus:
        HZ = hilbert_function(Z)
        for i in range(Z.s):
            prof = separator_degrees(Z, i)
            assert len(prof) == nu(Z, i) == Z.degree - reduce_multiplicity(Z, i).degree
            Hp = hilbert_function(reduce_multiplicity(Z, i))
            for t in range(HZ.t_stab + 2):
                assert Hp.delta(t) == HZ.delta(t) - prof.count(t)
                assert quotient_dim(Z, i, t) == prof.count_upto(t)
            S = minimal_separators(Z, i)
            assert all(is_separator(Z, i, F) for F in S.forms)
            assert minimal_separators(Z, i, reverse=True).profile == prof


def test_reduced_specialization(corpus):
    for Z in corpus:
        X = FatPointScheme(Z.n, Z.field, Z.points, (1,) * Z.s)
        HX = hilbert_function(X)
        for i in range(X.s):
            (d,) = separator_degrees(X, i).degrees
            Hp = hilbert_function(reduce_multiplicity(X, i))
            assert [t for t in range(HX.t_stab + 2) if HX(t) != Hp(t)] == list(range(d, HX.t_stab + 2))


def test_intermediate_stable_values_descend(corpus):
    for Z in corpus[:8]:
        i = 0
        vals = [intermediate_hf(Z, i, j).stable_value for j in range(nu(Z, i) + 1)]
        assert vals == [Z.degree - j for j in range(len(vals))]
