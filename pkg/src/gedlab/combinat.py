"""Exact combinatorial substrate: partitions, Littlewood-Richardson numbers,
Faulhaber polynomials and double symmetric sums over subsets.

Everything here works over Python integers and ``fractions.Fraction``; no
floating point is used.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Mapping


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Trailing zeros are stripped on construction, so ``Partition((2, 1, 0))``
    and ``Partition((2, 1))`` are the same object value.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def weight(self) -> int:
        return sum(self)

    def fits_in(self, rows: int, cols: int) -> bool:
        return len(self) <= rows and (not self or self[0] <= cols)

    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def complement(self, rows: int, cols: int) -> "Partition":
        """Complement inside the ``rows x cols`` rectangle, rotated by 180 degrees."""
        if not self.fits_in(rows, cols):
            raise ValueError(f"{self} does not fit in {rows}x{cols}")
        padded = list(self) + [0] * (rows - len(self))
        return Partition(cols - p for p in reversed(padded))

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"


EMPTY = Partition()


def partitions_in_box(rows: int, cols: int, size: int | None = None) -> list[Partition]:
    """All partitions fitting in ``rows x cols``, ordered by weight then reverse-lex."""
    out: list[Partition] = []

    def rec(prefix: list[int], max_part: int, remaining_rows: int) -> None:
        out.append(Partition(prefix))
        if remaining_rows == 0:
            return
        for p in range(max_part, 0, -1):
            prefix.append(p)
            rec(prefix, p, remaining_rows - 1)
            prefix.pop()

    rec([], cols, rows)
    if size is not None:
        out = [p for p in out if p.weight == size]
    out.sort(key=lambda p: (p.weight, tuple(-x for x in p)))
    return out


def binomial(n: int, k: int) -> int:
    """C(n, k) for 0 <= k <= n, else 0."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def num_standard_tableaux(lam: Partition) -> int:
    """Hook length formula."""
    n = lam.weight
    conj = lam.conjugate()
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    return math.factorial(n) // hooks


# --------------------------------------------------------------------------
# Littlewood-Richardson coefficients via lattice-word tableau counting.

_LR_LOCK = threading.Lock()
_LR_TABLE: dict[tuple[Partition, Partition], dict[Partition, int]] = {}
_LR_FRESH: set[tuple[Partition, Partition]] = set()


def _strips(shape, prev_counts, size, label):
    """Yield (new_shape, per-row counts) for adding a horizontal strip of
    ``size`` boxes labelled ``label`` keeping the reading word lattice with
    respect to ``label - 1`` (whose per-row counts are ``prev_counts``)."""
    nrows = len(shape) + 1
    old = list(shape) + [0]

    def rec(r, left, counts, prev_cum, cur_cum):
        if r == nrows:
            if left == 0:
                new = [old[i] + counts[i] for i in range(nrows)]
                yield tuple(x for x in new if x), tuple(counts)
            return
        cap = left if r == 0 else min(left, old[r - 1] - old[r])
        for x in range(cap, -1, -1):
            if label > 1 and cur_cum + x > prev_cum:
                continue
            counts.append(x)
            pc = prev_cum + (prev_counts[r] if r < len(prev_counts) else 0)
            yield from rec(r + 1, left - x, counts, pc, cur_cum + x)
            counts.pop()

    yield from rec(0, size, [], 0, 0)


def _lr_expand(lam: Partition, mu: Partition) -> dict[Partition, int]:
    out: dict[Partition, int] = {}

    def rec(i, shape, prev_counts):
        if i == len(mu):
            key = Partition(shape)
            out[key] = out.get(key, 0) + 1
            return
        for new, counts in _strips(shape, prev_counts, mu[i], i + 1):
            rec(i + 1, new, counts)

    rec(0, tuple(lam), ())
    return out


def lr_expansion(lam: Partition, mu: Partition) -> Mapping[Partition, int]:
    """Schur expansion of ``s_lam * s_mu`` as ``{nu: c^nu_{lam,mu}}``.

    Memoized; the smaller partition is used as the content of the tableaux.
    """
    lam, mu = Partition(lam), Partition(mu)
    key = (lam, mu) if (lam.weight, lam) >= (mu.weight, mu) else (mu, lam)
    table = _LR_TABLE.get(key)
    if table is None:
        table = _lr_expand(*key)
        with _LR_LOCK:
            if key not in _LR_TABLE:
                _LR_TABLE[key] = table
                _LR_FRESH.add(key)
            table = _LR_TABLE[key]
    return table


def lr_coefficient(lam: Partition, mu: Partition, nu: Partition) -> int:
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if nu.weight != lam.weight + mu.weight:
        return 0
    return lr_expansion(lam, mu).get(nu, 0)


def expansion_is_complete(lam: Partition, mu: Partition, expansion: Mapping[Partition, int]) -> bool:
    """Dimension check: sum c^nu f^nu == C(|lam|+|mu|, |lam|) f^lam f^mu."""
    lhs = sum(c * num_standard_tableaux(nu) for nu, c in expansion.items())
    rhs = (binomial(lam.weight + mu.weight, lam.weight)
           * num_standard_tableaux(lam) * num_standard_tableaux(mu))
    return lhs == rhs


def lr_records(fresh_only: bool = False) -> list[tuple[Partition, Partition, Partition, int]]:
    with _LR_LOCK:
        keys = sorted(_LR_FRESH if fresh_only else _LR_TABLE)
        rows = [(lam, mu, nu, c) for lam, mu in keys
                for nu, c in sorted(_LR_TABLE[(lam, mu)].items())]
        if fresh_only:
            _LR_FRESH.clear()
    return rows


def seed_lr_table(records: Iterable[tuple[Partition, Partition, Partition, int]]) -> int:
    """Install externally stored coefficients; returns the number of complete
    expansions accepted. Incomplete groups are dropped and recomputed on demand."""
    groups: dict[tuple[Partition, Partition], dict[Partition, int]] = {}
    for lam, mu, nu, c in records:
        lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
        key = (lam, mu) if (lam.weight, lam) >= (mu.weight, mu) else (mu, lam)
        groups.setdefault(key, {})[nu] = int(c)
    accepted = 0
    with _LR_LOCK:
        for key, exp in groups.items():
            if key in _LR_TABLE or not expansion_is_complete(*key, exp):
                continue
            _LR_TABLE[key] = exp
            accepted += 1
    return accepted


def clear_lr_table() -> None:
    with _LR_LOCK:
        _LR_TABLE.clear()
        _LR_FRESH.clear()


# --------------------------------------------------------------------------
# Bernoulli numbers and Faulhaber polynomials.

@lru_cache(maxsize=None)
def bernoulli(r: int) -> Fraction:
    """Bernoulli numbers with B_1 = +1/2, the convention under which
    sum_{k<=n} k^p = 1/(p+1) sum_r C(p+1, r) B_r n^(p+1-r)."""
    if r == 0:
        return Fraction(1)
    # sum_{j=0}^{r} C(r+1, j) B_j = r + 1
    acc = sum(binomial(r + 1, j) * bernoulli(j) for j in range(r))
    return (Fraction(r + 1) - acc) / (r + 1)


@dataclass(frozen=True)
class FaulhaberPoly:
    """sum_{k=1}^{n} k^p as a polynomial in n; ``coefficients[i]`` multiplies n^i."""

    p: int
    coefficients: tuple[Fraction, ...]

    def __call__(self, n: int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * n + c
        return acc


@lru_cache(maxsize=None)
def faulhaber(p: int) -> FaulhaberPoly:
    if p < 0:
        raise ValueError("exponent must be nonnegative")
    coeffs = [Fraction(0)] * (p + 2)
    for r in range(p + 1):
        coeffs[p + 1 - r] += Fraction(binomial(p + 1, r)) * bernoulli(r) / (p + 1)
    return FaulhaberPoly(p, tuple(coeffs))


def power_sum_upto(e: int, n: int) -> int:
    """sum_{j=1}^{n} j^e via Faulhaber; e = 0 gives n."""
    value = faulhaber(e)(n)
    assert value.denominator == 1
    return value.numerator


# --------------------------------------------------------------------------
# Double symmetric sums.

@dataclass
class PowerSumExpr:
    """F(x, y) = sum c_{lam,mu} p_lam(x) p_mu(y), with |lam| + |mu| <= degree_cap."""

    terms: dict[tuple[Partition, Partition], Fraction] = field(default_factory=dict)
    degree_cap: int = 0

    def __post_init__(self):
        self.terms = {(Partition(a), Partition(b)): Fraction(c)
                      for (a, b), c in self.terms.items() if c}
        for lam, mu in self.terms:
            if lam.weight + mu.weight > self.degree_cap:
                raise ValueError(f"term {(lam, mu)} exceeds degree cap {self.degree_cap}")

    @classmethod
    def constant(cls, c=1) -> "PowerSumExpr":
        return cls({(EMPTY, EMPTY): Fraction(c)}, 0)

    def evaluate(self, xs: Iterable[int], ys: Iterable[int]) -> Fraction:
        xs, ys = list(xs), list(ys)
        total = Fraction(0)
        for (lam, mu), c in self.terms.items():
            px = math.prod(sum(x ** part for x in xs) for part in lam)
            py = math.prod(sum(y ** part for y in ys) for part in mu)
            total += c * px * py
        return total


def set_partitions(items: list) -> Iterator[list[list]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in set_partitions(rest):
        for i in range(len(smaller)):
            yield smaller[:i] + [[first] + smaller[i]] + smaller[i + 1:]
        yield [[first]] + smaller


def distinct_index_sum(exponents: list[int], n: int) -> int:
    """sum over pairwise distinct j_1..j_s in [1, n] of prod j_b^{e_b},
    by Moebius inversion over set partitions into products of power sums."""
    total = 0
    for blocks in set_partitions(list(range(len(exponents)))):
        term = 1
        for block in blocks:
            size = len(block)
            term *= (-1) ** (size - 1) * math.factorial(size - 1)
            term *= power_sum_upto(sum(exponents[b] for b in block), n)
        total += term
    return total


@lru_cache(maxsize=None)
def subset_power_sum(lam: Partition, k: int, n: int) -> int:
    """S_lam(n) = sum over k-subsets A of [n] of p_lam(A), without enumerating subsets."""
    total = 0
    for pattern in set_partitions(list(range(len(lam)))):
        s = len(pattern)
        if s > k:
            continue
        exps = [sum(lam[t] for t in block) for block in pattern]
        total += binomial(n - s, k - s) * distinct_index_sum(exps, n)
    return total


def double_symmetric_sum(F: PowerSumExpr, k: int, N: int, m: int) -> Fraction:
    """G(N, m) = sum_{|A|=k, A in [N]} sum_{|B|=k, B in [m]} F(A, B)."""
    if k < 1 or k > min(N, m):
        raise ValueError(f"need 1 <= k <= min(N, m), got k={k}, N={N}, m={m}")
    total = Fraction(0)
    for (lam, mu), c in F.terms.items():
        total += c * subset_power_sum(lam, k, N) * subset_power_sum(mu, k, m)
    return total


def double_symmetric_sum_bruteforce(F: PowerSumExpr, k: int, N: int, m: int) -> Fraction:
    """Reference implementation enumerating all subset pairs."""
    return sum((F.evaluate(A, B) for A in combinations(range(1, N + 1), k)
                for B in combinations(range(1, m + 1), k)), Fraction(0))
