"""Torus localization on ``Gr_{N-k}(C^N) x Gr_k(C^m)`` at integer weights.

Independent of the Schubert-basis code: every class is evaluated at a fixed
point ``p_{R,T}`` as a symmetric function of the equivariant Chern roots and
divided by the Euler class of the tangent space there.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterator, Sequence

from .chowring import IntegralityError, ProductCtx
from .combinat import binomial


@dataclass(frozen=True)
class FixedPoint:
    """``R``: 1-based indices spanning ``U_S`` (size N-k); ``T``: indices spanning ``U_k`` (size k)."""

    R: tuple[int, ...]
    T: tuple[int, ...]


@dataclass(frozen=True)
class WeightSpec:
    u: tuple[int, ...]
    w: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(int(x) for x in self.u))
        object.__setattr__(self, "w", tuple(int(x) for x in self.w))
        if len(set(self.u)) != len(self.u) or len(set(self.w)) != len(self.w):
            raise ValueError("torus weights must be pairwise distinct")

    @classmethod
    def default(cls, N: int, m: int) -> "WeightSpec":
        return cls(tuple(range(1, N + 1)), tuple(range(1, m + 1)))

    @classmethod
    def random(cls, N: int, m: int, seed: int, spread: int = 1000) -> "WeightSpec":
        rng = random.Random(seed)
        return cls(tuple(rng.sample(range(-spread, spread + 1), N)),
                   tuple(rng.sample(range(-spread, spread + 1), m)))


def _unrank_subset(rank: int, n: int, r: int) -> tuple[int, ...]:
    """The ``rank``-th r-subset of {1..n} in lexicographic order."""
    out = []
    x = 1
    for slot in range(r, 0, -1):
        while True:
            block = binomial(n - x, slot - 1)
            if rank < block:
                out.append(x)
                x += 1
                break
            rank -= block
            x += 1
    return tuple(out)


def num_fixed_points(ctx: ProductCtx) -> int:
    return binomial(ctx.N, ctx.k) * binomial(ctx.m, ctx.k)


def fixed_point_at(ctx: ProductCtx, rank: int) -> FixedPoint:
    per = binomial(ctx.m, ctx.k)
    a, b = divmod(rank, per)
    return FixedPoint(_unrank_subset(a, ctx.N, ctx.N - ctx.k), _unrank_subset(b, ctx.m, ctx.k))


def fixed_points(ctx: ProductCtx) -> Iterator[FixedPoint]:
    for R in combinations(range(1, ctx.N + 1), ctx.N - ctx.k):
        for T in combinations(range(1, ctx.m + 1), ctx.k):
            yield FixedPoint(R, T)


def euler_class_at(pt: FixedPoint, ws: WeightSpec) -> int:
    u, w = ws.u, ws.w
    notR = [a for a in range(1, len(u) + 1) if a not in pt.R]
    notT = [g for g in range(1, len(w) + 1) if g not in pt.T]
    e = 1
    for i in pt.R:
        for a in notR:
            e *= u[a - 1] - u[i - 1]
    for b in pt.T:
        for g in notT:
            e *= w[g - 1] - w[b - 1]
    return e


def elementary(values: Sequence[int], upto: int) -> list[int]:
    e = [1] + [0] * upto
    for v in values:
        for i in range(upto, 0, -1):
            e[i] += e[i - 1] * v
    return e


def complete(values: Sequence[int], upto: int) -> list[int]:
    h = [1] + [0] * upto
    for v in values:
        for i in range(1, upto + 1):
            h[i] += h[i - 1] * v
    return h


def _roots(pt: FixedPoint, ws: WeightSpec) -> tuple[list[int], list[int]]:
    """Chern roots at ``pt`` of E (affine tangent bundle) and of Q_S^v (x) U_k."""
    u, w = ws.u, ws.w
    notR = [a for a in range(1, len(u) + 1) if a not in pt.R]
    notT = [g for g in range(1, len(w) + 1) if g not in pt.T]
    proj = [w[b - 1] - u[a - 1] for a in notR for b in pt.T]
    E = (proj
         + [w[g - 1] - u[a - 1] for a in notR for g in notT]
         + [w[b - 1] - u[i - 1] for i in pt.R for b in pt.T])
    return E, proj


def _moment_numerators(pt: FixedPoint, ws: WeightSpec, ctx: ProductCtx) -> list[int]:
    """``c_i(E) s_{dimB-i}(Q_S^v U_k)`` at ``pt`` for i = 0..d+1."""
    E, proj = _roots(pt, ws)
    dimB = ctx.dimB
    e = elementary(E, len(E))
    h = complete([-x for x in proj], dimB)
    return [e[i] * h[dimB - i] if i <= dimB else 0 for i in range(len(E) + 1)]


def restrict_integrand(j: int, pt: FixedPoint, ws: WeightSpec, ctx: ProductCtx) -> int:
    """Equivariant integrand of ``A_j = deg(c_j^Ma . H^j)`` restricted to ``pt``:
    ``sum_i C(d+1-i, j+1) c_i(E) s_{dimB-i}(Q_S^v U_k)``."""
    d = ctx.k * (ctx.N + ctx.m - ctx.k) - 1
    if not 0 <= j <= d:
        raise ValueError(f"j={j} outside 0..{d}")
    nums = _moment_numerators(pt, ws, ctx)
    return sum(binomial(d + 1 - i, j + 1) * x for i, x in enumerate(nums))


def localize(ctx: ProductCtx, ws: WeightSpec, integrand: Callable[[FixedPoint], Sequence[int]],
             start: int = 0, stop: int | None = None) -> list[Fraction]:
    """Sum ``integrand(p) / e(T_p B)`` over fixed points with rank in [start, stop).

    The integrand returns a vector; each entry is accumulated separately.
    """
    stop = num_fixed_points(ctx) if stop is None else stop
    totals: list[Fraction] | None = None
    for r in range(start, stop):
        pt = fixed_point_at(ctx, r)
        vals = integrand(pt)
        eu = euler_class_at(pt, ws)
        if totals is None:
            totals = [Fraction(0)] * len(vals)
        for idx, v in enumerate(vals):
            if v:
                totals[idx] += Fraction(v, eu)
    return totals or []


def _chunk(args):
    ctx, ws, start, stop = args
    return localize(ctx, ws, lambda pt: _moment_numerators(pt, ws, ctx), start, stop)


def localized_moments(ctx: ProductCtx, ws: WeightSpec | None = None, workers: int = 1) -> list[int]:
    """``M_i`` for i = 0..d+1 by localization; raises if any sum is not an integer."""
    ws = ws or WeightSpec.default(ctx.N, ctx.m)
    if len(ws.u) != ctx.N or len(ws.w) != ctx.m:
        raise ValueError("weights do not match the base dimensions")
    total = num_fixed_points(ctx)
    if workers > 1 and total > 256:
        step = math.ceil(total / workers)
        jobs = [(ctx, ws, s, min(s + step, total)) for s in range(0, total, step)]
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_chunk, jobs))
        sums = [sum(col, Fraction(0)) for col in zip(*parts)]
    else:
        sums = _chunk((ctx, ws, 0, total))
    out = []
    for i, s in enumerate(sums):
        if s.denominator != 1:
            raise IntegralityError(f"localized moment M_{i} = {s} is not an integer for {ctx}")
        out.append(s.numerator)
    return out


def localized_cm_degrees(ctx: ProductCtx, ws: WeightSpec | None = None, workers: int = 1) -> list[int]:
    d = ctx.k * (ctx.N + ctx.m - ctx.k) - 1
    M = localized_moments(ctx, ws, workers)
    return [sum(binomial(d + 1 - i, j + 1) * x for i, x in enumerate(M)) for j in range(d + 1)]


def integrate_localized(j: int, ctx: ProductCtx, ws: WeightSpec | None = None) -> int:
    """``A_j`` as a sum over all ``C(N,k) C(m,k)`` fixed points."""
    ws = ws or WeightSpec.default(ctx.N, ctx.m)
    total, = localize(ctx, ws, lambda pt: (restrict_integrand(j, pt, ws, ctx),))
    if total.denominator != 1:
        raise IntegralityError(f"localized A_{j} = {total} is not an integer for {ctx}")
    return total.numerator
