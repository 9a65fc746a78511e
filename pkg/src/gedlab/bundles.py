"""Formal vector bundles on the Grassmannian product: Chern classes, duals,
Whitney sums, tensor products through the Chern character, Segre classes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .chowring import (ChowClass, ContextMismatch, GrassClass, ProductCtx,
                       special_classes)
from .combinat import binomial

TAUTOLOGICAL = ("U_S", "Q_S", "U_k", "Q_k")


@dataclass(eq=False)
class BundleClass:
    """Rank plus total Chern class; ``total_chern`` is truncated at ``dimB``."""

    ctx: ProductCtx
    rank: int
    total_chern: ChowClass

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        if self.total_chern.ctx != self.ctx:
            raise ContextMismatch("Chern class lives on a different base")
        if self.total_chern.component(0) != ChowClass.unit(self.ctx):
            raise ValueError("total Chern class must start with 1")

    @cached_property
    def chern_classes(self) -> list[ChowClass]:
        """``[c_0, ..., c_dimB]``, homogeneous."""
        return self.total_chern.components()

    def chern(self, i: int) -> ChowClass:
        if i < 0 or i > self.ctx.dimB:
            return ChowClass(self.ctx)
        return self.chern_classes[i]

    @cached_property
    def segre_classes(self) -> list[ChowClass]:
        c = self.chern_classes
        s = [ChowClass.unit(self.ctx)]
        for t in range(1, self.ctx.dimB + 1):
            acc = ChowClass(self.ctx)
            for i in range(1, t + 1):
                if not c[i].is_zero() and not s[t - i].is_zero():
                    acc = acc - c[i] * s[t - i]
            s.append(acc)
        return s

    @cached_property
    def power_sums(self) -> list[ChowClass]:
        """Power sums of the Chern roots, ``p_j = j! ch_j``; ``p_0 = rank``."""
        return chern_to_power_sums(self.rank, self.chern_classes)

    def __eq__(self, other):
        if not isinstance(other, BundleClass):
            return NotImplemented
        return (self.ctx == other.ctx and self.rank == other.rank
                and self.total_chern == other.total_chern)

    def __repr__(self):
        return f"BundleClass(rank={self.rank}, c={self.total_chern!r})"


def chern_to_power_sums(rank: int, c: list[ChowClass]) -> list[ChowClass]:
    # Newton: p_i = sum_{j<i} (-1)^{j-1} c_j p_{i-j} + (-1)^{i-1} i c_i
    ctx = c[0].ctx
    p = [ChowClass.unit(ctx) * rank]
    for i in range(1, len(c)):
        acc = c[i] * ((-1) ** (i - 1) * i)
        for j in range(1, i):
            if not c[j].is_zero() and not p[i - j].is_zero():
                term = c[j] * p[i - j]
                acc = acc + term if j % 2 else acc - term
        p.append(acc)
    return p


def power_sums_to_chern(p: list[ChowClass]) -> list[ChowClass]:
    # Newton: i c_i = sum_{j=1}^{i} (-1)^{j-1} c_{i-j} p_j
    ctx = p[0].ctx
    c = [ChowClass.unit(ctx)]
    for i in range(1, len(p)):
        acc = ChowClass(ctx)
        for j in range(1, i + 1):
            if not c[i - j].is_zero() and not p[j].is_zero():
                term = c[i - j] * p[j]
                acc = acc + term if j % 2 else acc - term
        c.append(acc.exact_div(i))
    return c


def _sum(classes: list[ChowClass], ctx: ProductCtx) -> ChowClass:
    out = ChowClass(ctx)
    for cl in classes:
        out = out + cl
    return out


def chern_character(e: BundleClass) -> ChowClass:
    return _sum([pj * Fraction(1, math.factorial(j)) for j, pj in enumerate(e.power_sums)], e.ctx)


def from_chern_character(ctx: ProductCtx, ch: ChowClass) -> BundleClass:
    comps = ch.components()
    rank = comps[0].coefficient(((), ()))
    if Fraction(rank).denominator != 1:
        raise ValueError("rank part of a Chern character must be an integer")
    p = [cl * math.factorial(j) for j, cl in enumerate(comps)]
    for j, pj in enumerate(p):
        if not pj.is_integral():
            raise ValueError(f"ch_{j} is not the Chern character of an integral bundle")
    return BundleClass(ctx, int(rank), _sum(power_sums_to_chern(p), ctx))


def trivial(ctx: ProductCtx, rank: int) -> BundleClass:
    return BundleClass(ctx, rank, ChowClass.unit(ctx))


def taut_chern(ctx: ProductCtx, which: str) -> BundleClass:
    """Tautological bundles U_S, Q_S on the first factor and U_k, Q_k on the second."""
    if which not in TAUTOLOGICAL:
        raise ValueError(f"unknown tautological bundle {which!r}; expected one of {TAUTOLOGICAL}")
    factor = ctx.first if which.endswith("S") else ctx.second
    kind = which[0]
    rank = factor.sub_rank if kind == "U" else factor.quotient_rank
    total = GrassClass(factor)
    for cl in special_classes(factor, kind):
        total = total + cl
    if which.endswith("S"):
        lifted = ChowClass.lift(ctx, first=total)
    else:
        lifted = ChowClass.lift(ctx, second=total)
    return BundleClass(ctx, rank, lifted)


def dual(e: BundleClass) -> BundleClass:
    comps = e.chern_classes
    total = _sum([cl if i % 2 == 0 else -cl for i, cl in enumerate(comps)], e.ctx)
    return BundleClass(e.ctx, e.rank, total)


def direct_sum(e: BundleClass, f: BundleClass) -> BundleClass:
    if e.ctx != f.ctx:
        raise ContextMismatch("bundles live on different bases")
    return BundleClass(e.ctx, e.rank + f.rank, e.total_chern * f.total_chern)


def tensor(e: BundleClass, f: BundleClass) -> BundleClass:
    """Chern class of ``e (x) f`` from ``ch(e (x) f) = ch(e) ch(f)``.

    Works with the integral normalization ``p_j = j! ch_j`` so that the
    product rule reads ``p_j = sum_t C(j, t) p_t(e) p_{j-t}(f)``. Raises
    ``IntegralityError`` if the reconstructed Chern classes are not integral.
    """
    if e.ctx != f.ctx:
        raise ContextMismatch("bundles live on different bases")
    ctx = e.ctx
    pe, pf = e.power_sums, f.power_sums
    p = []
    for j in range(ctx.dimB + 1):
        acc = ChowClass(ctx)
        for t in range(j + 1):
            if pe[t].is_zero() or pf[j - t].is_zero():
                continue
            acc = acc + (pe[t] * pf[j - t]) * binomial(j, t)
        p.append(acc)
    c = power_sums_to_chern(p)
    return BundleClass(ctx, e.rank * f.rank, _sum(c, ctx))


def segre(e: BundleClass, t: int) -> ChowClass:
    """Degree-``t`` part of ``c(e)^{-1}``; zero for ``t < 0`` or ``t > dimB``."""
    if t < 0 or t > e.ctx.dimB:
        return ChowClass(e.ctx)
    return e.segre_classes[t]
