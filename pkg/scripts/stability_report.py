"""Regression data for the stability experiments: gED(N, m, 1) grid, fit search for
S = {1}, the S = {1,2} vs {2} reduction table, and scans in N.

    python3 scripts/stability_report.py --n-max 10 --m-max 8
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from gedlab.ged import SupportSpec, ged_det
from gedlab.stability import search_stable_fit, stability_in_N, verify_monomial_reduction


@dataclass
class ReportConfig:
    n_max: int = 10
    m_max: int = 8
    max_degree: int = 8
    reduction_max: int = 6


def grid(cfg: ReportConfig) -> None:
    print(f"gED(N, m, 1) for N <= {cfg.n_max}, m <= {cfg.m_max}")
    print("m\\N " + " ".join(f"{N:>10}" for N in range(1, cfg.n_max + 1)))
    for m in range(1, cfg.m_max + 1):
        print(f"{m:>3} " + " ".join(f"{ged_det(N, m, 1).ged:>10}" for N in range(1, cfg.n_max + 1)))
    diag = [ged_det(N, N, 1).ged for N in range(1, min(cfg.n_max, cfg.m_max) + 1)]
    print("diagonal:", diag)
    print("successive ratios:", [round(b / a, 3) for a, b in zip(diag, diag[1:])])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=ReportConfig.n_max)
    ap.add_argument("--m-max", type=int, default=ReportConfig.m_max)
    ap.add_argument("--max-degree", type=int, default=ReportConfig.max_degree)
    ap.add_argument("--reduction-max", type=int, default=ReportConfig.reduction_max)
    cfg = ReportConfig(**vars(ap.parse_args()))
    grid(cfg)

    rep = search_stable_fit(SupportSpec({1}), 1, cfg.n_max, cfg.m_max, cfg.max_degree)
    print("\nfit search S={1}, k=1:", rep.message)
    print("  window", rep.fit_window, "poly", rep.poly)
    for n, m, p, a in rep.validation_points[:6]:
        print(f"  ({n},{m}) predicted {p} actual {a}")

    red = verify_monomial_reduction(SupportSpec({1, 2}), 1, (1, cfg.reduction_max), (1, cfg.reduction_max))
    print("\nreduction S={1,2} vs {2}, k=1:", red.message)
    for row in red.table:
        print("  n={n} m={m} N_S={N_S} N_r={N_r} ged_S={ged_S} ged_r={ged_r} agree={agree}".format(**row))

    for m, k in [(2, 1), (3, 1), (3, 2), (4, 2)]:
        tab = stability_in_N(m, k, (k, cfg.n_max))
        print(f"\nN-scan m={m} k={k}:", [g for _, g in tab["rows"]], "constant from", tab["constant_from"])


if __name__ == "__main__":
    main()
