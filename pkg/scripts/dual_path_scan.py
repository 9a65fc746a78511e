"""Compare Schubert-basis and localization Chern-Mather degrees over a box of (N, m, k).

    python3 scripts/dual_path_scan.py --N 1..8 --m 1..6 --k 1..3 --seed 7
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from gedlab.chowring import ProductCtx
from gedlab.cli import parse_range
from gedlab.ged import ged_det
from gedlab.localization import WeightSpec, localized_cm_degrees


@dataclass
class ScanConfig:
    N: tuple[int, int] = (1, 8)
    m: tuple[int, int] = (1, 6)
    k: tuple[int, int] = (1, 3)
    seed: int = 7
    workers: int = 1


def scan(cfg: ScanConfig) -> list[dict]:
    rows = []
    for N in range(cfg.N[0], cfg.N[1] + 1):
        for m in range(cfg.m[0], cfg.m[1] + 1):
            for k in range(cfg.k[0], min(cfg.k[1], N, m) + 1):
                t0 = time.perf_counter()
                A = list(ged_det(N, m, k).cm_degrees)
                t1 = time.perf_counter()
                ctx = ProductCtx(N, m, k)
                B = localized_cm_degrees(ctx, WeightSpec.default(N, m), cfg.workers)
                C = localized_cm_degrees(ctx, WeightSpec.random(N, m, cfg.seed), cfg.workers)
                t2 = time.perf_counter()
                rows.append({"N": N, "m": m, "k": k, "ged": ged_det(N, m, k).ged,
                             "agree": A == B == C, "t_schubert": t1 - t0, "t_local": t2 - t1})
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=parse_range, default=ScanConfig.N)
    ap.add_argument("--m", type=parse_range, default=ScanConfig.m)
    ap.add_argument("--k", type=parse_range, default=ScanConfig.k)
    ap.add_argument("--seed", type=int, default=ScanConfig.seed)
    ap.add_argument("--workers", type=int, default=1)
    cfg = ScanConfig(**vars(ap.parse_args()))
    rows = scan(cfg)
    print(f"{'N':>3} {'m':>3} {'k':>3} {'gED':>14} agree  t_schub  t_local")
    for r in rows:
        print(f"{r['N']:>3} {r['m']:>3} {r['k']:>3} {r['ged']:>14} {str(r['agree']):>5} "
              f"{r['t_schubert']:8.3f} {r['t_local']:8.3f}")
    bad = [r for r in rows if not r["agree"]]
    print(f"{len(rows)} triples, {len(bad)} disagreements")


if __name__ == "__main__":
    main()
