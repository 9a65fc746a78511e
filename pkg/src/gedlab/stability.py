"""Grid experiments on gED(n, m): exact polynomial fits with held-out checks,
comparison of a support against its top-degree monomial, and scans in N."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .exactfit import BivariatePoly, interpolate
from .ged import GedResult, SupportSpec, ged_det, ged_neuro

Range = tuple[int, int]


@dataclass
class FitReport:
    support: SupportSpec
    k: int | str
    poly: BivariatePoly | None
    degree: int | None
    fit_window: tuple[Range, Range]
    validation_points: list[tuple[int, int, object, int]]
    stable: bool
    detected_threshold: tuple[int, int] | None
    message: str = ""


@dataclass
class ReductionReport:
    support: SupportSpec
    k: int | str
    n_range: Range
    m_range: Range
    table: list[dict]
    agreement_region: tuple[int, int] | None
    upward_closed: bool
    first_disagreements: list[tuple[int, int]]
    message: str = ""


def _grid(n_range: Range, m_range: Range) -> list[tuple[int, int]]:
    return [(n, m) for n in range(n_range[0], n_range[1] + 1)
            for m in range(m_range[0], m_range[1] + 1)]


def _border(n_range: Range, m_range: Range) -> list[tuple[int, int]]:
    (n0, n1), (m0, m1) = n_range, m_range
    pts = [(n1 + 1, m) for m in range(m0, m1 + 2)]
    pts += [(n, m1 + 1) for n in range(n0, n1 + 1)]
    return pts


FULL = "min"


def width_at(k, N: int, m: int) -> int:
    """``k``, or ``min(N, m)`` when ``k == "min"`` (the full space at every point)."""
    return min(N, m) if k == FULL else k


def _values(S: SupportSpec, k, pts, evaluate) -> list[int]:
    out = []
    for n, m in pts:
        kk = width_at(k, S.dim(n), m)
        if kk > min(S.dim(n), m):
            raise ValueError(f"width k={kk} exceeds min(N_S({n})={S.dim(n)}, m={m})")
        out.append(evaluate(n, m, S, kk).ged)
    return out


def fit_polynomial(S: SupportSpec, k: int, n_range: Range, m_range: Range, max_degree: int,
                   evaluate: Callable[..., GedResult] = ged_neuro) -> FitReport:
    """Least-degree exact interpolant of gED on the window, checked on the
    outer border ``n = n_hi + 1`` or ``m = m_hi + 1``."""
    window = (tuple(n_range), tuple(m_range))
    pts = _grid(n_range, m_range)
    side = min(n_range[1] - n_range[0], m_range[1] - m_range[0]) + 1
    if max_degree < 0 or side < max_degree + 1:
        raise ValueError(f"window {window} too small to determine a degree-{max_degree} polynomial")
    values = _values(S, k, pts, evaluate)
    poly, degree = None, None
    for D in range(max_degree + 1):
        poly = interpolate(pts, values, D)
        if poly is not None:
            degree = D
            break
    if poly is None:
        return FitReport(S, k, None, None, window, [], False, None,
                         f"no polynomial of total degree <= {max_degree} fits the window")
    held = _border(n_range, m_range)
    actual = _values(S, k, held, evaluate)
    checks = [(n, m, poly(n, m), a) for (n, m), a in zip(held, actual)]
    stable = all(p == a for _, _, p, a in checks)
    msg = "held-out border reproduced exactly" if stable else "held-out border not reproduced"
    return FitReport(S, k, poly, degree, window, checks, stable,
                     (n_range[0], m_range[0]) if stable else None, msg)


def search_stable_fit(S: SupportSpec, k: int, n_max: int, m_max: int, max_degree: int,
                      n_min: int = 1, m_min: int = 1,
                      evaluate: Callable[..., GedResult] = ged_neuro) -> FitReport:
    """Scan windows ``[n0, n_max-1] x [m0, m_max-1]`` (held-out border at n_max,
    m_max), raising the lower corner until a fit validates.

    Returns the first validating report, or the last attempt with
    ``stable=False`` and a message saying no window in budget validated.
    """
    last: FitReport | None = None
    tried = 0
    for total in range(n_min + m_min, n_max + m_max - 1):
        for n0 in range(n_min, n_max):
            m0 = total - n0
            if m0 < m_min or m0 > m_max - 1:
                continue
            n1, m1 = n_max - 1, m_max - 1
            if k != FULL and min(S.dim(n0), m0) < k:
                continue
            side = min(n1 - n0, m1 - m0) + 1
            deg = min(max_degree, side - 1)
            rep = fit_polynomial(S, k, (n0, n1), (m0, m1), deg, evaluate)
            tried += 1
            if rep.stable:
                rep.message += f" (window {tried} of the scan)"
                return rep
            last = rep
    if last is None:
        raise ValueError("no admissible window inside the budget")
    last.message = (f"no window within n <= {n_max}, m <= {m_max}, degree <= {max_degree} "
                    f"validates ({tried} windows tried); last: {last.message}")
    return last


def _upward_closed(agree: dict[tuple[int, int], bool]) -> bool:
    return all(agree[q] for p, ok in agree.items() if ok
               for q in agree if q[0] >= p[0] and q[1] >= p[1])


def verify_monomial_reduction(S: SupportSpec, k: int, n_range: Range, m_range: Range,
                              evaluate: Callable[..., GedResult] = ged_neuro) -> ReductionReport:
    """Compare gED for support ``S`` with the monomial support ``{deg S}`` on a grid."""
    top = SupportSpec({S.degree})
    table, agree = [], {}
    for n, m in _grid(n_range, m_range):
        if k != FULL and k > min(top.dim(n), m):
            continue
        a = evaluate(n, m, S, width_at(k, S.dim(n), m))
        b = evaluate(n, m, top, width_at(k, top.dim(n), m))
        same = a.ged == b.ged
        agree[(n, m)] = same
        table.append({"n": n, "m": m, "N_S": S.dim(n), "N_r": top.dim(n),
                      "ged_S": a.ged, "ged_r": b.ged, "agree": same})
    region = None
    best = -1
    for (n0, m0) in agree:
        block = [p for p in agree if p[0] >= n0 and p[1] >= m0]
        if all(agree[p] for p in block) and len(block) > best:
            region, best = (n0, m0), len(block)
    closed = _upward_closed(agree)
    bad = sorted((p for p, ok in agree.items() if not ok), key=lambda p: (p[0] + p[1], p))
    if region is None:
        msg = ("no agreement region: the tested grid is below the stable range, "
               "or the two supports differ there")
        if bad:
            n, m = max(agree, key=lambda p: (p[0] + p[1], p))
            if not agree[(n, m)]:
                msg += f"; still disagreeing at the largest tested point ({n}, {m})"
    else:
        msg = f"agreement for n >= {region[0]}, m >= {region[1]} within the grid"
    if not closed:
        msg += "; agreeing points are not upward-closed"
    return ReductionReport(S, k, tuple(n_range), tuple(m_range), table, region, closed, bad[:10], msg)


def stability_in_N(m: int, k: int, N_range: Range,
                   evaluate: Callable[[int, int, int], GedResult] = ged_det) -> dict:
    """gED(N, m, k) along N. ``constant_from`` marks the start of the longest
    constant suffix, or is None when the last two values already differ."""
    rows = [(N, evaluate(N, m, k).ged) for N in range(N_range[0], N_range[1] + 1)]
    if not rows:
        raise ValueError("empty N range")
    start = rows[-1][0]
    for N, g in reversed(rows):
        if g != rows[-1][1]:
            break
        start = N
    length = sum(1 for N, _ in rows if N >= start)
    flagged = length >= 2 or len(rows) == 1
    return {"m": m, "k": k, "rows": rows, "constant_from": start if flagged else None,
            "constant_suffix_length": length if flagged else 0}
