"""Generic ED degree of rank-bounded matrix varieties and of the neurovarieties
of shallow polynomial layers.

Pipeline for ``X = {f : C^N -> C^m, rank f <= k}`` projectivized:

* base ``B = Gr_{N-k}(C^N) x Gr_k(C^m)`` and ``Z = P(Q_S^v (x) U_k) -> B``;
* ``E = Q_S^*U_k + Q_S^*Q_k + U_S^*U_k`` is the affine-cone tangent bundle
  (rank ``d + 1``), containing ``O_Z(-1)``; the Nash tangent bundle is
  ``E (x) O_Z(1) / O``, so ``c(T~) = sum_i c_i(E) (1 + xi)^{d+1-i}``;
* ``int_Z beta xi^e = int_B beta s_{e-k^2+1}(Q_S^v (x) U_k)``;
* Aluffi's alternating sum turns Chern-Mather degrees into gED.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import reduce

from .bundles import BundleClass, direct_sum, dual, segre, taut_chern, tensor
from .chowring import IntegralityError, ProductCtx, grass_ring, pairing, product_ring
from .combinat import binomial


class MathInconsistency(ArithmeticError):
    """Two routes that must agree did not, or an invariant failed."""


@dataclass(frozen=True)
class SupportSpec:
    """Exponents with nonzero coefficient in the activation polynomial."""

    S: frozenset

    def __init__(self, S):
        S = frozenset(int(s) for s in S)
        if not S or min(S) < 0:
            raise ValueError("support must be a nonempty set of nonnegative integers")
        object.__setattr__(self, "S", S)

    @classmethod
    def parse(cls, text: str) -> "SupportSpec":
        items = [t.strip() for t in text.split(",") if t.strip()]
        if not items:
            raise ValueError("empty support")
        return cls(int(t) for t in items)

    @property
    def degree(self) -> int:
        return max(self.S)

    def dim(self, n: int) -> int:
        """``N_S(n) = sum_{s in S} C(n + s - 1, s)``."""
        return sum(binomial(n + s - 1, s) for s in self.S)

    def __str__(self):
        return ",".join(str(s) for s in sorted(self.S))


@dataclass(frozen=True)
class GedResult:
    N: int
    m: int
    k: int
    d: int
    cm_degrees: tuple[int, ...]
    ged: int
    degree_X: int
    n: int | None = None
    support: SupportSpec | None = None

    def core(self) -> tuple:
        return (self.N, self.m, self.k, self.d, self.cm_degrees, self.ged, self.degree_X)


def variety_dimension(N: int, m: int, k: int) -> int:
    ProductCtx(N, m, k)
    return k * (N + m - k) - 1


def nash_bundle(ctx: ProductCtx) -> BundleClass:
    """``Q_S^* U_k + Q_S^* Q_k + U_S^* U_k`` on the base (rank ``d + 1``)."""
    return _bundles(ctx)[0]


def projection_bundle(ctx: ProductCtx) -> BundleClass:
    """``Q_S^v (x) U_k``, whose projectivization is the resolution ``Z``."""
    return _bundles(ctx)[1]


_BUNDLE_CACHE: dict[ProductCtx, tuple[BundleClass, BundleClass]] = {}
_LOCK = threading.Lock()


def _bundles(ctx: ProductCtx) -> tuple[BundleClass, BundleClass]:
    hit = _BUNDLE_CACHE.get(ctx)
    if hit is not None:
        return hit
    qs_dual = dual(taut_chern(ctx, "Q_S"))
    us_dual = dual(taut_chern(ctx, "U_S"))
    uk = taut_chern(ctx, "U_k")
    qk = taut_chern(ctx, "Q_k")
    proj = tensor(qs_dual, uk)
    parts = [proj, tensor(qs_dual, qk), tensor(us_dual, uk)]
    E = reduce(direct_sum, parts)
    with _LOCK:
        _BUNDLE_CACHE.setdefault(ctx, (E, proj))
    return _BUNDLE_CACHE[ctx]


def pushforward_moments(ctx: ProductCtx) -> list[int]:
    """``M_i = int_Z c_i(E) xi^{d-i} = int_B c_i(E) s_{dimB-i}(Q_S^v U_k)`` for i = 0..d+1."""
    E, proj = _bundles(ctx)
    d = variety_dimension(ctx.N, ctx.m, ctx.k)
    out = []
    for i in range(d + 2):
        value = pairing(E.chern(i), segre(proj, ctx.dimB - i))
        if not isinstance(value, int):
            raise IntegralityError(f"moment M_{i} = {value} is not an integer for {ctx}")
        out.append(value)
    return out


def cm_degrees_from_moments(moments: list[int], d: int) -> list[int]:
    """``A_j = deg(c_j^Ma . H^j) = sum_i C(d+1-i, j+1) M_i`` (twisted Nash bundle)."""
    return [sum(binomial(d + 1 - i, j + 1) * M for i, M in enumerate(moments))
            for j in range(d + 1)]


def cm_degrees_projective_route(moments: list[int], d: int) -> list[int]:
    """Same degrees through ``c(T) = c(E)/(1 - xi)`` followed by the ``O(1)`` twist
    of the rank-``d`` projective tangent bundle; only a cross-check."""
    out = []
    for j in range(d + 1):
        q = d - j
        total = 0
        # c_q(F(1)) = sum_g C(d-g, q-g) c_g(F) xi^{q-g};  c_g(F) = sum_i c_i(E) xi^{g-i}
        for g in range(q + 1):
            for i in range(g + 1):
                total += binomial(d - g, q - g) * moments[i]
        out.append(total)
    return out


def aluffi_ged(cm_degrees: list[int], d: int) -> int:
    return sum((-1) ** (d + j) * (2 ** (j + 1) - 1) * A for j, A in enumerate(cm_degrees))


def check_cm_degrees(ctx: ProductCtx, A: list[int]) -> None:
    for j, a in enumerate(A):
        if a < 0:
            raise MathInconsistency(f"negative Chern-Mather degree A_{j} = {a} for {ctx}")


def chern_mather_degrees(ctx: ProductCtx) -> list[int]:
    d = variety_dimension(ctx.N, ctx.m, ctx.k)
    moments = pushforward_moments(ctx)
    A = cm_degrees_from_moments(moments, d)
    if A != cm_degrees_projective_route(moments, d):
        raise MathInconsistency(f"Nash-bundle and projective-tangent routes disagree for {ctx}")
    check_cm_degrees(ctx, A)
    return A


_RESULTS: dict[tuple[int, int, int], GedResult] = {}


def ged_det(N: int, m: int, k: int) -> GedResult:
    """gED of the projectivized ``m x N`` matrices of rank at most ``k``."""
    key = (N, m, k)
    hit = _RESULTS.get(key)
    if hit is not None:
        return hit
    ctx = ProductCtx(N, m, k)
    d = variety_dimension(N, m, k)
    A = chern_mather_degrees(ctx)
    ged = aluffi_ged(A, d)
    if ged < 0:
        raise MathInconsistency(f"negative gED {ged} for {ctx}")
    res = GedResult(N, m, k, d, tuple(A), ged, A[d])
    with _LOCK:
        _RESULTS.setdefault(key, res)
    return _RESULTS[key]


def ged_neuro(n: int, m: int, S: SupportSpec, k: int) -> GedResult:
    """gED of the width-``k`` neurovariety with input dim ``n``, output dim ``m``."""
    if n < 1:
        raise ValueError("input dimension must be positive")
    N = S.dim(n)
    base = ged_det(N, m, k)
    return GedResult(base.N, base.m, base.k, base.d, base.cm_degrees, base.ged,
                     base.degree_X, n=n, support=S)


def clear_caches() -> None:
    """Drop memoized results, bundles and ring multiplication tables (not the LR table)."""
    with _LOCK:
        _RESULTS.clear()
        _BUNDLE_CACHE.clear()
    grass_ring.cache_clear()
    product_ring.cache_clear()
