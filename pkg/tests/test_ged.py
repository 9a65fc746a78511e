import pytest
from hypothesis import given, strategies as st

from gedlab.chowring import ProductCtx
from gedlab.ged import (MathInconsistency, SupportSpec, aluffi_ged, check_cm_degrees,
                        chern_mather_degrees, cm_degrees_from_moments, cm_degrees_projective_route,
                        ged_det, ged_neuro, pushforward_moments, variety_dimension)
from oracles import determinantal_degree, projective_space_cm

SMALL = [(N, m, k) for N in range(1, 8) for m in range(1, 8) for k in range(1, min(N, m, 3) + 1)]


def test_variety_dimension_examples():
    assert variety_dimension(2, 2, 1) == 2
    assert variety_dimension(3, 2, 1) == 3
    for N, m in [(2, 3), (4, 4), (5, 2)]:
        k = min(N, m)
        assert variety_dimension(N, m, k) == N * m - 1
    with pytest.raises(ValueError):
        variety_dimension(2, 2, 3)


def test_quadric():
    res = ged_det(2, 2, 1)
    assert res.ged == 6
    assert res.cm_degrees == (4, 4, 2)
    assert res.degree_X == 2


def test_regressions():
    # agreed values of both evaluation paths
    assert ged_det(3, 2, 1).ged == 10
    assert ged_det(3, 3, 1).ged == 39
    assert ged_det(3, 3, 2).ged == 39
    assert ged_det(4, 4, 2).ged == 1350
    assert ged_det(3, 2, 1).cm_degrees == (6, 9, 8, 3)


@pytest.mark.parametrize("N,m,k", SMALL)
def test_degree_product_formula(N, m, k):
    res = ged_det(N, m, k)
    assert res.degree_X == determinantal_degree(N, m, k)


@pytest.mark.parametrize("N,m", [(N, m) for N in range(1, 7) for m in range(1, 7)])
def test_full_space(N, m):
    res = ged_det(N, m, min(N, m))
    assert res.ged == 1
    assert list(res.cm_degrees) == projective_space_cm(N * m - 1)


@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 5))
def test_transpose_and_duality(N, m, k):
    if k > min(N, m):
        return
    assert ged_det(N, m, k).ged == ged_det(m, N, k).ged
    if k < min(N, m):
        assert ged_det(N, m, k).ged == ged_det(N, m, min(N, m) - k).ged


@pytest.mark.parametrize("N,m,k", SMALL[:40])
def test_two_routes_agree(N, m, k):
    ctx = ProductCtx(N, m, k)
    d = variety_dimension(N, m, k)
    M = pushforward_moments(ctx)
    assert cm_degrees_from_moments(M, d) == cm_degrees_projective_route(M, d)
    assert len(M) == d + 2


def test_nonnegativity_guard():
    ctx = ProductCtx(2, 2, 1)
    with pytest.raises(MathInconsistency):
        check_cm_degrees(ctx, [1, -1, 2])


def test_aluffi_on_projective_space():
    for d in range(8):
        assert aluffi_ged(projective_space_cm(d), d) == 1


def test_support_spec():
    assert SupportSpec.parse("1,2").dim(3) == 9
    assert SupportSpec({2}).dim(2) == 3
    assert SupportSpec({0, 1}).dim(4) == 5
    assert SupportSpec({1, 2}).degree == 2
    for bad in ("", " , ", "-1"):
        with pytest.raises(ValueError):
            SupportSpec.parse(bad)


def test_neuro_examples():
    r = ged_neuro(2, 2, SupportSpec({1}), 1)
    assert r.ged == 6 and r.N == 2 and r.n == 2
    assert ged_neuro(2, 2, SupportSpec({2}), 1).core() == ged_det(3, 2, 1).core()
    with pytest.raises(ValueError):
        ged_neuro(0, 2, SupportSpec({1}), 1)


@given(st.integers(1, 4), st.integers(1, 4))
def test_support_only_through_dimension(n, m):
    a = ged_neuro(n, m, SupportSpec({1}), 1)
    b = ged_det(n, m, 1)
    assert a.core() == b.core()


def test_grading_bookkeeping():
    for N, m, k in SMALL:
        ctx = ProductCtx(N, m, k)
        assert variety_dimension(N, m, k) - k * k + 1 == ctx.dimB
