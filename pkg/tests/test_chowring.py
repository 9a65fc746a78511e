import pytest
from hypothesis import given, strategies as st

from gedlab.bundles import taut_chern
from gedlab.chowring import (ChowClass, ContextMismatch, GrassClass, GrassCtx, IntegralityError,
                             ProductCtx, integrate, multiply, pairing, stabilize_pullback)
from gedlab.combinat import EMPTY, Partition, partitions_in_box

CTXS = [ProductCtx(N, m, k) for N in range(1, 6) for m in range(1, 5) for k in range(1, min(N, m) + 1)]


def S(ctx, lam=(), mu=()):
    return ChowClass.schubert(ctx, lam, mu)


def test_ctx_validation():
    with pytest.raises(ValueError):
        ProductCtx(2, 2, 3)
    ctx = ProductCtx(5, 4, 2)
    assert ctx.rect1 == (3, 2) and ctx.rect2 == (2, 2)
    assert ctx.dimB == 2 * 3 + 2 * 2


def test_multiply_examples():
    ctx = ProductCtx(4, 4, 2)
    assert S(ctx, (1,)) * S(ctx, (1,)) == S(ctx, (2,)) + S(ctx, (1, 1))
    a = S(ctx, (2, 1), (1,)) * 3 - S(ctx, (), (2,))
    assert ChowClass.unit(ctx) * a == a
    small = ProductCtx(3, 2, 1)
    assert multiply(S(small, (1,)), S(small, (1,))) == S(small, (1, 1))


def test_integrate_examples():
    ctx = ProductCtx(2, 2, 1)
    assert integrate(S(ctx, (1,), (1,))) == 1
    assert integrate(S(ctx, (1,))) == 0
    assert integrate(S(ProductCtx(4, 4, 2), (2, 2), (2, 2))) == 1


def test_rejects_out_of_box():
    with pytest.raises(ValueError):
        S(ProductCtx(2, 2, 1), (2,))


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        S(ProductCtx(2, 2, 1)) + S(ProductCtx(3, 2, 1))


@pytest.mark.parametrize("ctx", CTXS, ids=str)
def test_poincare_duality(ctx):
    rows, cols = ctx.rect1
    full2 = Partition((ctx.rect2[1],) * ctx.rect2[0])
    for lam in partitions_in_box(rows, cols):
        comp = lam.complement(rows, cols)
        for mu in partitions_in_box(rows, cols, comp.weight):
            value = integrate(S(ctx, lam, full2) * S(ctx, mu))
            assert value == (1 if mu == comp else 0)


def random_class(ctx, draw, max_terms=4):
    ring_labels = [(a, b) for a in partitions_in_box(*ctx.rect1) for b in partitions_in_box(*ctx.rect2)]
    picks = draw(st.lists(st.sampled_from(ring_labels), min_size=1, max_size=max_terms))
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(picks), max_size=len(picks)))
    return ChowClass(ctx, {p: c for p, c in zip(picks, coeffs)})


@given(st.data())
def test_ring_axioms(data):
    ctx = data.draw(st.sampled_from(CTXS))
    a, b, c = (random_class(ctx, data.draw) for _ in range(3))
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(st.data())
def test_pairing_is_integrate_of_product(data):
    ctx = data.draw(st.sampled_from(CTXS))
    a, b = random_class(ctx, data.draw), random_class(ctx, data.draw)
    assert pairing(a, b) == integrate(a * b)


@pytest.mark.parametrize("N,m,k", [(N, m, k) for N in range(1, 9) for m in range(1, 9)
                                   for k in range(1, min(N, m, 3) + 1)])
def test_whitney_tautological(N, m, k):
    ctx = ProductCtx(N, m, k)
    one = ChowClass.unit(ctx)
    assert taut_chern(ctx, "U_S").total_chern * taut_chern(ctx, "Q_S").total_chern == one
    assert taut_chern(ctx, "U_k").total_chern * taut_chern(ctx, "Q_k").total_chern == one


def test_taut_examples():
    ctx = ProductCtx(2, 2, 1)
    q = taut_chern(ctx, "Q_S")
    assert q.rank == 1 and q.total_chern == ChowClass.unit(ctx) + S(ctx, (1,))
    u = taut_chern(ctx, "U_S")
    assert u.rank == 1 and u.total_chern == ChowClass.unit(ctx) - S(ctx, (1,))


def test_pullback_examples():
    src, dst = GrassCtx(6, 4), GrassCtx(5, 3)
    assert stabilize_pullback(src, dst, GrassClass.schubert(src, (2, 1))) == GrassClass.schubert(dst, (2, 1))
    src, dst = GrassCtx(5, 4), GrassCtx(2, 1)
    assert stabilize_pullback(src, dst, GrassClass.schubert(src, (1, 1, 1))).is_zero()
    assert stabilize_pullback(src, dst, GrassClass.unit(src)) == GrassClass.unit(dst)
    with pytest.raises(ContextMismatch):
        stabilize_pullback(GrassCtx(5, 3), GrassCtx(5, 2), GrassClass.unit(GrassCtx(5, 3)))


@given(st.integers(1, 2), st.integers(1, 3), st.integers(0, 2), st.data())
def test_pullback_multiplicative_low_degree(k, T, extra, data):
    # N >= k + T: grades <= T are preserved
    N = k + T
    Np = N + extra + 1
    src, dst = GrassCtx(Np, Np - k), GrassCtx(N, N - k)
    low = [lam for lam in partitions_in_box(src.rows, src.cols) if lam.weight <= T]

    def cls():
        picks = data.draw(st.lists(st.sampled_from(low), min_size=1, max_size=3))
        return GrassClass(src, {p: data.draw(st.integers(-2, 2)) for p in picks})

    a, b = cls(), cls()
    lhs = stabilize_pullback(src, dst, (a * b).truncate(T))
    rhs = (stabilize_pullback(src, dst, a) * stabilize_pullback(src, dst, b)).truncate(T)
    assert lhs == rhs


def test_exact_div_guard():
    ctx = ProductCtx(2, 2, 1)
    assert (S(ctx, (1,)) * 4).exact_div(2) == S(ctx, (1,)) * 2
    with pytest.raises(IntegralityError):
        (S(ctx, (1,)) * 3).exact_div(2)


def test_grade_bookkeeping():
    ctx = ProductCtx(3, 3, 1)
    a = S(ctx, (1,), (1,)) + S(ctx, (1, 1))
    assert a.max_grade == 2
    assert a.component(2) == a and a.component(1).is_zero()
    assert S(ctx, EMPTY).truncate(0) == ChowClass.unit(ctx)
