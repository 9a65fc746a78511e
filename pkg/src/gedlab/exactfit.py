"""Exact rational interpolation with fraction-free (Bareiss) elimination."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


def solve_exact(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[Fraction] | None:
    """Solve ``rows @ x = rhs`` over Q.

    Returns None if the system is inconsistent. Raises ``ValueError`` if it is
    consistent but underdetermined, since then no interpolant is unique.
    """
    nvars = len(rows[0]) if rows else 0
    rhs = [Fraction(b) for b in rhs]
    scale = math.lcm(*(b.denominator for b in rhs)) if rhs else 1
    M = [list(map(int, r)) + [int(b * scale)] for r, b in zip(rows, rhs)]
    nrows = len(M)
    prev = 1
    pivots: list[int] = []
    r = 0
    for col in range(nvars):
        piv = next((i for i in range(r, nrows) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, nrows):
            for j in range(col + 1, nvars + 1):
                M[i][j] = (M[r][col] * M[i][j] - M[i][col] * M[r][j]) // prev
            M[i][col] = 0
        prev = M[r][col]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    if any(M[i][nvars] != 0 for i in range(r, nrows)):
        return None
    if len(pivots) < nvars:
        raise ValueError("interpolation system is underdetermined")
    x = [Fraction(0)] * nvars
    for i in range(r - 1, -1, -1):
        col = pivots[i]
        acc = Fraction(M[i][nvars]) - sum(M[i][j] * x[j] for j in range(col + 1, nvars))
        x[col] = acc / M[i][col]
    return [v / scale for v in x]


@dataclass(frozen=True)
class BivariatePoly:
    """``sum c[(a, b)] n^a m^b`` with exact rational coefficients."""

    coeffs: dict = field(default_factory=dict)

    def __call__(self, n: int, m: int) -> Fraction:
        return sum((c * n ** a * m ** b for (a, b), c in self.coeffs.items()), Fraction(0))

    @property
    def total_degree(self) -> int:
        return max((a + b for (a, b), c in self.coeffs.items() if c), default=0)

    def __eq__(self, other):
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        strip = lambda d: {k: v for k, v in d.items() if v}
        return strip(self.coeffs) == strip(other.coeffs)

    def __hash__(self):
        return hash(frozenset((k, v) for k, v in self.coeffs.items() if v))

    def __str__(self):
        parts = []
        for (a, b), c in sorted(self.coeffs.items(), key=lambda t: (-(t[0][0] + t[0][1]), t[0])):
            if not c:
                continue
            mono = "*".join(x for x in (f"n^{a}" if a > 1 else "n" if a else "",
                                         f"m^{b}" if b > 1 else "m" if b else "") if x)
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(parts) or "0"


def monomials(degree: int) -> list[tuple[int, int]]:
    return [(a, t - a) for t in range(degree + 1) for a in range(t, -1, -1)]


def box_monomials(deg_n: int, deg_m: int) -> list[tuple[int, int]]:
    """``n^a m^b`` with a <= deg_n, b <= deg_m."""
    return [(a, b) for a in range(deg_n + 1) for b in range(deg_m + 1)]


def interpolate(points: Sequence[tuple[int, int]], values: Sequence[int], degree: int | None = None,
                basis: Sequence[tuple[int, int]] | None = None) -> BivariatePoly | None:
    """Unique polynomial in the span of ``basis`` (default: total degree <=
    ``degree``) through all points, or None if none fits."""
    if basis is None:
        if degree is None:
            raise ValueError("give a degree or an explicit monomial basis")
        basis = monomials(degree)
    mons = list(basis)
    rows = [[n ** a * m ** b for a, b in mons] for n, m in points]
    sol = solve_exact(rows, values)
    if sol is None:
        return None
    return BivariatePoly({mon: c for mon, c in zip(mons, sol)})
