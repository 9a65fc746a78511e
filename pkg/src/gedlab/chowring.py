"""Chow rings of Grassmannians and of products of two Grassmannians in the
Schubert (resp. Kuenneth-Schubert) basis.

Conventions: on ``Gr_{d}(C^n)`` (``d``-dimensional subspaces) the Schubert
classes are indexed by partitions in the ``d x (n - d)`` box, i.e. at most
``sub_rank`` rows and at most ``quotient_rank`` columns, and
``c(Q) = sum_i sigma_(i)``, ``c(U) = sum_i (-1)^i sigma_(1^i)``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from numbers import Rational
from typing import Iterable, Mapping

from .combinat import EMPTY, Partition, lr_expansion, partitions_in_box


class IntegralityError(ArithmeticError):
    """An exact computation produced a non-integer where theory demands one."""


class ContextMismatch(ValueError):
    pass


@dataclass(frozen=True)
class GrassCtx:
    dim: int
    sub_rank: int

    def __post_init__(self):
        if self.dim < 1 or not 0 <= self.sub_rank <= self.dim:
            raise ValueError(f"invalid Grassmannian Gr_{self.sub_rank}(C^{self.dim})")

    @property
    def quotient_rank(self) -> int:
        return self.dim - self.sub_rank

    @property
    def rows(self) -> int:
        return self.sub_rank

    @property
    def cols(self) -> int:
        return self.quotient_rank

    @property
    def top_degree(self) -> int:
        return self.rows * self.cols


@dataclass(frozen=True)
class ProductCtx:
    """Base ``Gr_{N-k}(C^N) x Gr_k(C^m)``."""

    N: int
    m: int
    k: int

    def __post_init__(self):
        if not 1 <= self.k <= min(self.N, self.m):
            raise ValueError(f"rank k={self.k} must satisfy 1 <= k <= min(N={self.N}, m={self.m})")

    @property
    def first(self) -> GrassCtx:
        return GrassCtx(self.N, self.N - self.k)

    @property
    def second(self) -> GrassCtx:
        return GrassCtx(self.m, self.k)

    @property
    def rect1(self) -> tuple[int, int]:
        return (self.N - self.k, self.k)

    @property
    def rect2(self) -> tuple[int, int]:
        return (self.k, self.m - self.k)

    @property
    def dimB(self) -> int:
        return self.k * (self.N - self.k) + self.k * (self.m - self.k)


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class GrassRing:
    """Multiplication data for one Grassmannian; products are memoized lazily."""

    def __init__(self, ctx: GrassCtx):
        self.ctx = ctx
        self.basis = partitions_in_box(ctx.rows, ctx.cols)
        self.index = {p: i for i, p in enumerate(self.basis)}
        self.grade = [p.weight for p in self.basis]
        self.size = len(self.basis)
        self.dim = ctx.top_degree
        self.top = self.index[Partition([ctx.cols] * ctx.rows)]
        self.dual = [self.index[p.complement(ctx.rows, ctx.cols)] for p in self.basis]
        self._table: dict[int, tuple] = {}
        self._lock = threading.Lock()

    def product(self, i: int, j: int) -> tuple:
        """sigma_i * sigma_j as a tuple of (index, coefficient)."""
        key = i * self.size + j
        hit = self._table.get(key)
        if hit is not None:
            return hit
        if self.grade[i] + self.grade[j] > self.dim:
            res: tuple = ()
        else:
            rows, cols = self.ctx.rows, self.ctx.cols
            res = tuple((self.index[nu], c)
                        for nu, c in lr_expansion(self.basis[i], self.basis[j]).items()
                        if nu.fits_in(rows, cols))
        with self._lock:
            self._table[key] = res
            self._table[j * self.size + i] = res
        return res

    # generic ring interface used by _Graded
    def key_grade(self, key: int) -> int:
        return self.grade[key]

    def label(self, key: int):
        return self.basis[key]

    def key_of(self, label) -> int | None:
        return self.index.get(Partition(label))

    @property
    def top_key(self) -> int:
        return self.top

    def mul(self, a: Mapping[int, object], b: Mapping[int, object], max_grade: int | None = None) -> dict:
        cap = self.dim if max_grade is None else min(max_grade, self.dim)
        grade = self.grade
        bl = sorted(((grade[j], j, cb) for j, cb in b.items()))
        out: dict[int, object] = {}
        for i, ca in a.items():
            gi = grade[i]
            for gj, j, cb in bl:
                if gi + gj > cap:
                    break
                c = ca * cb
                for nu, x in self.product(i, j):
                    out[nu] = out.get(nu, 0) + c * x
        return out


class ProductRing:
    """Kuenneth product of two Grassmannian rings; keys are ``i1 * n2 + i2``."""

    def __init__(self, ctx: ProductCtx):
        self.ctx = ctx
        self.r1 = grass_ring(ctx.first)
        self.r2 = grass_ring(ctx.second)
        self.n2 = self.r2.size
        self.size = self.r1.size * self.n2
        self.dim = ctx.dimB
        self.top = self.r1.top * self.n2 + self.r2.top

    def key_grade(self, key: int) -> int:
        i1, i2 = divmod(key, self.n2)
        return self.r1.grade[i1] + self.r2.grade[i2]

    def label(self, key: int):
        i1, i2 = divmod(key, self.n2)
        return (self.r1.basis[i1], self.r2.basis[i2])

    def key_of(self, label) -> int | None:
        lam, mu = label
        i1, i2 = self.r1.key_of(lam), self.r2.key_of(mu)
        if i1 is None or i2 is None:
            return None
        return i1 * self.n2 + i2

    @property
    def top_key(self) -> int:
        return self.top

    def dual_key(self, key: int) -> int:
        i1, i2 = divmod(key, self.n2)
        return self.r1.dual[i1] * self.n2 + self.r2.dual[i2]

    def mul(self, a: Mapping[int, object], b: Mapping[int, object], max_grade: int | None = None) -> dict:
        cap = self.dim if max_grade is None else min(max_grade, self.dim)
        n2 = self.n2
        g1, g2 = self.r1.grade, self.r2.grade
        p1, p2 = self.r1.product, self.r2.product
        bl = sorted((g1[j1] + g2[j2], j1, j2, cb)
                    for j1, j2, cb in ((*divmod(k, n2), c) for k, c in b.items()))
        out: dict[int, object] = {}
        get = out.get
        for ka, ca in a.items():
            i1, i2 = divmod(ka, n2)
            ga = g1[i1] + g2[i2]
            for gb, j1, j2, cb in bl:
                if ga + gb > cap:
                    break
                t1 = p1(i1, j1)
                if not t1:
                    continue
                t2 = p2(i2, j2)
                if not t2:
                    continue
                c = ca * cb
                for k1, x in t1:
                    base = k1 * n2
                    cx = c * x
                    for k2, y in t2:
                        key = base + k2
                        out[key] = get(key, 0) + cx * y
        return out


@lru_cache(maxsize=None)
def grass_ring(ctx: GrassCtx) -> GrassRing:
    return GrassRing(ctx)


@lru_cache(maxsize=None)
def product_ring(ctx: ProductCtx) -> ProductRing:
    return ProductRing(ctx)


class _Graded:
    """Sparse exact class over a ring with a homogeneous basis."""

    __slots__ = ("ctx", "ring", "_c")

    def __init__(self, ctx, ring, coeffs: Mapping[int, object]):
        self.ctx = ctx
        self.ring = ring
        self._c = {k: _normalize(v) for k, v in coeffs.items() if v != 0}

    def _new(self, coeffs):
        return type(self)._from_keys(self.ctx, coeffs)

    def _check(self, other):
        if not isinstance(other, type(self)) or other.ctx != self.ctx:
            raise ContextMismatch(f"cannot combine classes over {self.ctx} and {getattr(other, 'ctx', other)}")

    @property
    def terms(self) -> dict:
        return {self.ring.label(k): v for k, v in self._c.items()}

    def coefficient(self, label) -> object:
        key = self.ring.key_of(label)
        return 0 if key is None else self._c.get(key, 0)

    def component(self, grade: int):
        g = self.ring.key_grade
        return self._new({k: v for k, v in self._c.items() if g(k) == grade})

    def components(self) -> list:
        out: list[dict] = [dict() for _ in range(self.ring.dim + 1)]
        g = self.ring.key_grade
        for k, v in self._c.items():
            out[g(k)][k] = v
        return [self._new(c) for c in out]

    def truncate(self, max_grade: int):
        g = self.ring.key_grade
        return self._new({k: v for k, v in self._c.items() if g(k) <= max_grade})

    @property
    def max_grade(self) -> int:
        g = self.ring.key_grade
        return max((g(k) for k in self._c), default=-1)

    def is_zero(self) -> bool:
        return not self._c

    def integrate(self):
        return self._c.get(self.ring.top_key, 0)

    def __add__(self, other):
        self._check(other)
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, 0) + v
        return self._new(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._new({k: -v for k, v in self._c.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return self._new({k: v * other for k, v in self._c.items()})
        self._check(other)
        return self._new(self.ring.mul(self._c, other._c))

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self * other
        return NotImplemented

    def exact_div(self, d: int):
        """Divide by an integer, requiring integral coefficients in the result."""
        out = {}
        for k, v in self._c.items():
            q, r = divmod(v, d) if isinstance(v, int) else (None, None)
            if r != 0:
                raise IntegralityError(f"coefficient {v} not divisible by {d} in {self.ring.label(k)}")
            out[k] = q
        return self._new(out)

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for v in self._c.values())

    def __eq__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return self.ctx == other.ctx and self._c == other._c

    def __hash__(self):
        return hash((self.ctx, frozenset(self._c.items())))

    def __repr__(self):
        body = " + ".join(f"{v}*{self.ring.label(k)}" for k, v in sorted(self._c.items()))
        return f"{type(self).__name__}({body or '0'})"


class GrassClass(_Graded):
    """Class on a single Grassmannian, keyed by partitions."""

    __slots__ = ()

    def __init__(self, ctx: GrassCtx, terms: Mapping = ()):
        ring = grass_ring(ctx)
        coeffs: dict[int, object] = {}
        for lam, c in dict(terms).items():
            key = ring.key_of(lam)
            if key is None:
                raise ValueError(f"{lam} does not fit the {ctx.rows}x{ctx.cols} box")
            coeffs[key] = coeffs.get(key, 0) + c
        super().__init__(ctx, ring, coeffs)

    @classmethod
    def _from_keys(cls, ctx, coeffs):
        obj = cls.__new__(cls)
        _Graded.__init__(obj, ctx, grass_ring(ctx), coeffs)
        return obj

    @classmethod
    def unit(cls, ctx: GrassCtx) -> "GrassClass":
        return cls(ctx, {EMPTY: 1})

    @classmethod
    def schubert(cls, ctx: GrassCtx, lam) -> "GrassClass":
        return cls(ctx, {Partition(lam): 1})


class ChowClass(_Graded):
    """Class on ``Gr_{N-k}(C^N) x Gr_k(C^m)`` keyed by pairs of partitions."""

    __slots__ = ()

    def __init__(self, ctx: ProductCtx, terms: Mapping = ()):
        ring = product_ring(ctx)
        coeffs: dict[int, object] = {}
        for (lam, mu), c in dict(terms).items():
            key = ring.key_of((lam, mu))
            if key is None:
                raise ValueError(f"({lam}, {mu}) does not fit rectangles {ctx.rect1}, {ctx.rect2}")
            coeffs[key] = coeffs.get(key, 0) + c
        super().__init__(ctx, ring, coeffs)

    @classmethod
    def _from_keys(cls, ctx, coeffs):
        obj = cls.__new__(cls)
        _Graded.__init__(obj, ctx, product_ring(ctx), coeffs)
        return obj

    @classmethod
    def unit(cls, ctx: ProductCtx) -> "ChowClass":
        return cls(ctx, {(EMPTY, EMPTY): 1})

    @classmethod
    def schubert(cls, ctx: ProductCtx, lam=(), mu=()) -> "ChowClass":
        return cls(ctx, {(Partition(lam), Partition(mu)): 1})

    @classmethod
    def lift(cls, ctx: ProductCtx, first: GrassClass | None = None,
             second: GrassClass | None = None) -> "ChowClass":
        """Exterior product ``pr_1^* first * pr_2^* second``; missing factors are 1."""
        if first is None:
            first = GrassClass.unit(ctx.first)
        if second is None:
            second = GrassClass.unit(ctx.second)
        if first.ctx != ctx.first or second.ctx != ctx.second:
            raise ContextMismatch("factor contexts do not match the product")
        n2 = product_ring(ctx).n2
        return cls._from_keys(ctx, {i * n2 + j: a * b for i, a in first._c.items()
                                    for j, b in second._c.items()})


def multiply(a: _Graded, b: _Graded) -> _Graded:
    return a * b


def integrate(a: _Graded):
    return a.integrate()


def pairing(a: ChowClass, b: ChowClass):
    """``integrate(a * b)`` through Poincare duality, without expanding the product."""
    a._check(b)
    ring = a.ring
    if isinstance(ring, GrassRing):
        dual = ring.dual
        return _normalize(sum(v * b._c.get(dual[k], 0) for k, v in a._c.items()))
    dk = ring.dual_key
    return _normalize(sum(v * b._c.get(dk(k), 0) for k, v in a._c.items()))


def stabilize_pullback(src: GrassCtx, dst: GrassCtx, cls: GrassClass) -> GrassClass:
    """Pullback along ``Gr_{N-k}(C^N) -> Gr_{N'-k}(C^N')``, ``U -> U + C^{N'-N}``.

    Schubert classes that fit the destination box are kept, others vanish.
    """
    if src.quotient_rank != dst.quotient_rank:
        raise ContextMismatch(f"quotient ranks differ: {src.quotient_rank} vs {dst.quotient_rank}")
    if src.dim < dst.dim:
        raise ValueError("pullback goes from the larger Grassmannian to the smaller one")
    if cls.ctx != src:
        raise ContextMismatch("class does not live on the source Grassmannian")
    rows, cols = dst.rows, dst.cols
    return GrassClass(dst, {lam: c for lam, c in cls.terms.items() if lam.fits_in(rows, cols)})


def special_classes(ctx: GrassCtx, which: str) -> list[GrassClass]:
    """Homogeneous Chern classes ``[c_0, c_1, ...]`` of the tautological bundles."""
    if which == "Q":
        shapes = [Partition((i,)) if i else EMPTY for i in range(ctx.quotient_rank + 1)]
        signs = [1] * len(shapes)
    elif which == "U":
        shapes = [Partition((1,) * i) for i in range(ctx.sub_rank + 1)]
        signs = [(-1) ** i for i in range(len(shapes))]
    else:
        raise ValueError(which)
    return [GrassClass(ctx, {lam: s}) if lam.fits_in(ctx.rows, ctx.cols) else GrassClass(ctx)
            for lam, s in zip(shapes, signs)]
