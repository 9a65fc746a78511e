from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gedlab.combinat import (EMPTY, Partition, PowerSumExpr, bernoulli, binomial, clear_lr_table,
                             double_symmetric_sum, double_symmetric_sum_bruteforce,
                             expansion_is_complete, faulhaber, lr_coefficient, lr_expansion,
                             lr_records, num_standard_tableaux, partitions_in_box, seed_lr_table)
from oracles import brute_double_sum, faulhaber_brute, is_horizontal_strip, lr_by_schur


def partitions(max_weight=6, max_len=4):
    return st.lists(st.integers(1, max_weight), max_size=max_len).map(
        lambda xs: Partition(sorted(xs, reverse=True))).filter(lambda p: p.weight <= max_weight)


def test_binomial_examples():
    assert binomial(5, 2) == 10
    assert binomial(3, 0) == 1
    assert binomial(2, 5) == 0
    assert binomial(4, -1) == 0


def test_partition_basics():
    lam = Partition((3, 1, 0))
    assert lam == (3, 1) and lam.weight == 4
    assert lam.conjugate() == (2, 1, 1)
    assert lam.fits_in(2, 3) and not lam.fits_in(1, 3)
    assert lam.complement(2, 3) == (2,)
    with pytest.raises(ValueError):
        Partition((1, 2))


def test_partitions_in_box_count():
    # number of partitions in an a x b box is C(a+b, a)
    for a in range(4):
        for b in range(4):
            assert len(partitions_in_box(a, b)) == binomial(a + b, a)


def test_lr_examples():
    assert lr_coefficient((1,), (1,), (2,)) == 1
    assert lr_coefficient((1,), (1,), (1, 1)) == 1
    assert lr_coefficient((2, 1), (1,), (3, 2)) == 0
    assert lr_coefficient((2, 1), (2, 1), (3, 2, 1)) == 2
    assert lr_coefficient((1,), (1,), (3,)) == 0


@given(partitions(4, 3), partitions(4, 3))
def test_lr_matches_schur_oracle(lam, mu):
    expected = lr_by_schur(lam, mu)
    got = {tuple(nu): c for nu, c in lr_expansion(lam, mu).items()}
    assert got == expected


@given(partitions(), partitions())
def test_lr_symmetry(lam, mu):
    for nu, c in lr_expansion(lam, mu).items():
        assert lr_coefficient(mu, lam, nu) == c


@given(partitions(6, 4), st.integers(1, 4))
def test_pieri(lam, r):
    exp = lr_expansion(lam, Partition((r,)))
    assert set(exp.values()) <= {1}
    for nu in partitions_in_box(len(lam) + 1, (lam[0] if lam else 0) + r, lam.weight + r):
        assert (nu in exp) == is_horizontal_strip(nu, lam)


@given(partitions(), partitions())
def test_lr_dimension_identity(lam, mu):
    assert expansion_is_complete(lam, mu, lr_expansion(lam, mu))


def test_standard_tableaux():
    assert num_standard_tableaux(Partition((2, 1))) == 2
    assert num_standard_tableaux(Partition((3, 2))) == 5
    assert num_standard_tableaux(EMPTY) == 1


def test_lr_seed_roundtrip():
    lr_expansion((2, 1), (2, 1))
    lr_expansion((3,), (1, 1))
    rows = lr_records()
    clear_lr_table()
    assert seed_lr_table(rows) >= 2
    assert lr_coefficient((2, 1), (2, 1), (3, 2, 1)) == 2


def test_seed_rejects_incomplete_group():
    clear_lr_table()
    assert seed_lr_table([((1,), (1,), (2,), 1)]) == 0
    assert lr_coefficient((1,), (1,), (1, 1)) == 1


def test_bernoulli_convention():
    assert [bernoulli(r) for r in range(5)] == [1, Fraction(1, 2), Fraction(1, 6), 0, Fraction(-1, 30)]


def test_faulhaber_examples():
    assert faulhaber(1)(4) == 10
    assert faulhaber(2)(3) == 14
    assert faulhaber(0)(7) == 7


@given(st.integers(0, 10), st.integers(0, 200))
def test_faulhaber_brute(p, n):
    assert faulhaber(p)(n) == faulhaber_brute(p, n)


def test_double_sum_examples():
    p1x = PowerSumExpr({((1,), ()): 1}, 1)
    assert double_symmetric_sum(p1x, 1, 3, 2) == 12
    assert double_symmetric_sum(PowerSumExpr.constant(1), 1, 4, 5) == 20
    p1p1 = PowerSumExpr({((1,), (1,)): 1}, 2)
    assert double_symmetric_sum(p1p1, 1, 2, 2) == 9
    with pytest.raises(ValueError):
        double_symmetric_sum(p1p1, 3, 2, 5)


def test_power_sum_expr_cap():
    with pytest.raises(ValueError):
        PowerSumExpr({((2, 1), (1, 1)): 1}, 4)


@st.composite
def power_sum_exprs(draw, cap=4):
    terms = {}
    for _ in range(draw(st.integers(1, 3))):
        total = draw(st.integers(0, cap))
        a = draw(st.integers(0, total))
        lam = _split(a, draw)
        mu = _split(total - a, draw)
        terms[(Partition(sorted(lam, reverse=True)), Partition(sorted(mu, reverse=True)))] = \
            Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 3)))
    return PowerSumExpr(terms, cap)


def _split(w, draw):
    parts = []
    while w:
        x = draw(st.integers(1, w))
        parts.append(x)
        w -= x
    return parts


@given(power_sum_exprs(), st.integers(1, 3), st.integers(1, 8), st.integers(1, 8))
def test_double_sum_vs_enumeration(F, k, N, m):
    if k > min(N, m):
        return
    closed = double_symmetric_sum(F, k, N, m)
    assert closed == double_symmetric_sum_bruteforce(F, k, N, m)
    assert closed == brute_double_sum(F.terms, k, N, m)
