"""Command-line entry point: ``python -m gedlab <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path

from . import persist
from .chowring import IntegralityError, ProductCtx
from .ged import GedResult, MathInconsistency, SupportSpec, aluffi_ged, ged_det, ged_neuro
from .localization import WeightSpec, localized_cm_degrees, num_fixed_points
from .stability import FULL, fit_polynomial, search_stable_fit, stability_in_N, verify_monomial_reduction

log = logging.getLogger("gedlab")

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_BUDGET = 0, 2, 3, 4


class UsageError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class RunConfig:
    method: str = "schubert"
    format: str = "json"
    lr_cache: str | None = None
    seed: int | None = None
    workers: int = 1
    max_degree: int = 6
    max_fixed_points: int = 2_000_000
    max_dimb: int = 40

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        return cls(**{f.name: getattr(ns, f.name) for f in fields(cls)})


CONFIG_KEYS = {f.name for f in fields(RunConfig)} | {
    "rows", "cols", "rank", "n", "m", "support", "width", "search"}


def parse_range(text: str) -> tuple[int, int]:
    """``"a..b"`` or ``"a"``; inclusive."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            r = (int(lo), int(hi))
        else:
            r = (int(text), int(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; expected a or a..b") from None
    if r[0] > r[1]:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return r


def _support(text: str) -> SupportSpec:
    try:
        return SupportSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad support {text!r}: {exc}") from None


def _width(text: str):
    if text == FULL:
        return FULL
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad width {text!r}") from None
    if k < 1:
        raise argparse.ArgumentTypeError("width must be positive")
    return k


def _span(r: tuple[int, int]) -> range:
    return range(r[0], r[1] + 1)


# --------------------------------------------------------------------------
# evaluation

def _check_dims(N: int, m: int, k: int) -> None:
    if min(N, m) < 1 or k < 1:
        raise UsageError(f"dimensions must be positive (rows={m}, cols={N}, rank={k})")
    if k > min(N, m):
        raise UsageError(f"rank exceeds min(rows, cols): rank={k}, rows={m}, cols={N}")


def _check_budget(ctx: ProductCtx, cfg: RunConfig) -> None:
    if cfg.method in ("schubert", "both") and ctx.dimB > cfg.max_dimb:
        raise BudgetExceeded(f"dim B = {ctx.dimB} exceeds max_dimb = {cfg.max_dimb} for {ctx}")
    if cfg.method in ("localization", "both") and num_fixed_points(ctx) > cfg.max_fixed_points:
        raise BudgetExceeded(f"{num_fixed_points(ctx)} fixed points exceed "
                             f"max_fixed_points = {cfg.max_fixed_points} for {ctx}")


def _weights(N: int, m: int, cfg: RunConfig) -> WeightSpec:
    return WeightSpec.default(N, m) if cfg.seed is None else WeightSpec.random(N, m, cfg.seed)


def evaluate_det(N: int, m: int, k: int, cfg: RunConfig) -> dict:
    """One point, serialized as a flat record."""
    _check_dims(N, m, k)
    ctx = ProductCtx(N, m, k)
    _check_budget(ctx, cfg)
    d = k * (N + m - k) - 1
    rec: dict = {"N": N, "m": m, "k": k, "d": d, "method": cfg.method}
    if cfg.method in ("schubert", "both"):
        res = ged_det(N, m, k)
        A = list(res.cm_degrees)
    if cfg.method in ("localization", "both"):
        B = localized_cm_degrees(ctx, _weights(N, m, cfg), cfg.workers)
        rec["seed"] = cfg.seed
        if cfg.method == "localization":
            A = B
        else:
            diff = [j for j in range(d + 1) if A[j] != B[j]]
            rec["paths_agree"] = not diff
            rec["comparison"] = [{"j": j, "schubert": A[j], "localization": B[j]}
                                 for j in range(d + 1)]
            if diff:
                raise MathInconsistency(f"Schubert and localization disagree at j = {diff} for {ctx}")
    rec["cm_degrees"] = A
    rec["ged"] = aluffi_ged(A, d)
    rec["degree_X"] = A[d]
    return rec


def _evaluate_job(args):
    return evaluate_det(*args)


def evaluate_many(points: list[tuple[int, int, int]], cfg: RunConfig) -> list[dict]:
    if cfg.workers > 1 and len(points) > 1 and cfg.method == "schubert":
        with ProcessPoolExecutor(cfg.workers) as pool:
            return list(pool.map(_evaluate_job, [(N, m, k, cfg) for N, m, k in points]))
    return [evaluate_det(N, m, k, cfg) for N, m, k in points]


def _prefetch(points: list[tuple[int, int, int]], cfg: RunConfig) -> None:
    """Warm the in-process gED cache for a grid, in parallel when asked."""
    if cfg.workers <= 1 or len(points) < 2:
        return
    todo = sorted({p for p in points if p[2] <= min(p[0], p[1])})
    with ProcessPoolExecutor(cfg.workers) as pool:
        results = list(pool.map(_ged_job, todo))
    from . import ged
    for key, res in zip(todo, results):
        ged._RESULTS.setdefault(key, res)


def _ged_job(p) -> GedResult:
    return ged_det(*p)


# --------------------------------------------------------------------------
# commands

def cmd_det(ns, cfg: RunConfig):
    pts = [(N, m, k) for m in _span(ns.rows) for N in _span(ns.cols) for k in _span(ns.rank)]
    rows = evaluate_many(pts, cfg)
    return rows[0] if len(rows) == 1 else rows


def cmd_neuro(ns, cfg: RunConfig):
    S = ns.support
    out = []
    for n in _span(ns.n):
        if n < 1:
            raise UsageError("input dimension n must be positive")
        N = S.dim(n)
        for m in _span(ns.m):
            for k in _span(ns.width):
                if k > min(N, m):
                    raise UsageError(f"width exceeds min(N_S, m): width={k}, N_S={N}, m={m}")
                rec = evaluate_det(N, m, k, cfg)
                rec.update({"n": n, "support": str(S), "N_S": N})
                out.append(rec)
    return out[0] if len(out) == 1 else out


def _grid_points(S: SupportSpec, k, n_hi: int, m_hi: int, n_lo: int = 1, m_lo: int = 1):
    return [(S.dim(n), m, min(S.dim(n), m) if k == FULL else k) for n in range(n_lo, n_hi + 1) for m in range(m_lo, m_hi + 1)]


def _guard_grid(S: SupportSpec, k, n_hi: int, m_hi: int, cfg: RunConfig) -> None:
    kk = min(S.dim(n_hi), m_hi) if k == FULL else k
    ctx = ProductCtx(max(S.dim(n_hi), kk), max(m_hi, kk), kk)
    if ctx.dimB > cfg.max_dimb:
        raise BudgetExceeded(f"grid corner needs dim B = {ctx.dimB} > max_dimb = {cfg.max_dimb}")


def _fit_report(rep) -> dict:
    return {
        "support": str(rep.support), "k": rep.k,
        "poly": None if rep.poly is None else str(rep.poly),
        "coefficients": None if rep.poly is None else
        [{"n_exp": a, "m_exp": b, "coeff": c} for (a, b), c in sorted(rep.poly.coeffs.items()) if c],
        "degree": rep.degree, "fit_window": {"n": list(rep.fit_window[0]), "m": list(rep.fit_window[1])},
        "validation_points": [{"n": n, "m": m, "predicted": p, "actual": a}
                              for n, m, p, a in rep.validation_points],
        "stable": rep.stable, "detected_threshold": rep.detected_threshold, "message": rep.message,
    }


def cmd_fit(ns, cfg: RunConfig):
    S, k = ns.support, ns.width
    _guard_grid(S, k, ns.n[1] + 1, ns.m[1] + 1, cfg)
    _prefetch(_grid_points(S, k, ns.n[1] + 1, ns.m[1] + 1, ns.n[0], ns.m[0]), cfg)
    try:
        if ns.search:
            rep = search_stable_fit(S, k, ns.n[1] + 1, ns.m[1] + 1, cfg.max_degree, ns.n[0], ns.m[0])
        else:
            rep = fit_polynomial(S, k, ns.n, ns.m, cfg.max_degree)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return _fit_report(rep)


def cmd_verify_monomial(ns, cfg: RunConfig):
    S, k = ns.support, ns.width
    top = SupportSpec({S.degree})
    _guard_grid(S, k, ns.n[1], ns.m[1], cfg)
    _prefetch(_grid_points(S, k, ns.n[1], ns.m[1], ns.n[0], ns.m[0])
              + _grid_points(top, k, ns.n[1], ns.m[1], ns.n[0], ns.m[0]), cfg)
    rep = verify_monomial_reduction(S, k, ns.n, ns.m)
    if cfg.format != "json":
        return rep.table
    return {"support": str(rep.support), "monomial": str(top), "k": rep.k,
            "grid": {"n": list(rep.n_range), "m": list(rep.m_range)}, "table": rep.table,
            "agreement_region": rep.agreement_region, "upward_closed": rep.upward_closed,
            "first_disagreements": rep.first_disagreements, "message": rep.message}


def cmd_stability(ns, cfg: RunConfig):
    m, k = ns.rows[0], ns.rank[0]
    for N in _span(ns.cols):
        _check_dims(N, m, k)
        _check_budget(ProductCtx(N, m, k), RunConfig(method="schubert", max_dimb=cfg.max_dimb))
    _prefetch([(N, m, k) for N in _span(ns.cols)], cfg)
    tab = stability_in_N(m, k, ns.cols)
    if cfg.format != "json":
        return [{"N": N, "m": m, "k": k, "ged": g,
                 "constant_suffix": tab["constant_from"] is not None and N >= tab["constant_from"]}
                for N, g in tab["rows"]]
    tab["rows"] = [{"N": N, "ged": g} for N, g in tab["rows"]]
    return tab


def selftest(cfg: RunConfig) -> list[dict]:
    """Fast checks of known values and of the two evaluation paths."""
    from .combinat import lr_coefficient
    checks = [
        ("lr (2,1)x(2,1) -> (3,2,1)", lr_coefficient((2, 1), (2, 1), (3, 2, 1)), 2),
        ("quadric gED", ged_det(2, 2, 1).ged, 6),
        ("full space gED", ged_det(4, 3, 3).ged, 1),
        ("duality gED(4,4,1) = gED(4,4,3)", ged_det(4, 4, 1).ged, ged_det(4, 4, 3).ged),
    ]
    for N, m, k in [(2, 2, 1), (3, 3, 2), (4, 3, 2), (5, 4, 2)]:
        ctx = ProductCtx(N, m, k)
        checks.append((f"dual path {N},{m},{k}", list(ged_det(N, m, k).cm_degrees),
                       localized_cm_degrees(ctx, _weights(N, m, cfg))))
    return [{"check": name, "value": got, "expected": want, "ok": got == want}
            for name, got, want in checks]


# --------------------------------------------------------------------------
# parser

def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("run options")
    g.add_argument("--method", choices=("schubert", "localization", "both"))
    g.add_argument("--format", choices=("json", "csv", "table"))
    g.add_argument("--lr-cache", dest="lr_cache", help=f"LR coefficient cache (default ${persist.CACHE_ENV})")
    g.add_argument("--seed", type=int, help="randomize localization weights")
    g.add_argument("--workers", type=int)
    g.add_argument("--max-degree", dest="max_degree", type=int)
    g.add_argument("--max-fixed-points", dest="max_fixed_points", type=int)
    g.add_argument("--max-dimb", dest="max_dimb", type=int)
    g.add_argument("--config", help="JSON file with defaults for any of the flags")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gedlab", description="gED of determinantal neurovarieties")
    sub = ap.add_subparsers(dest="command")

    p = sub.add_parser("det", help="rank <= k matrices with the given rows (m) and cols (N)")
    p.add_argument("--rows", type=parse_range)
    p.add_argument("--cols", type=parse_range)
    p.add_argument("--rank", type=parse_range)
    _common(p)

    p = sub.add_parser("neuro", help="width-k neurovariety with support S")
    p.add_argument("--n", type=parse_range)
    p.add_argument("--m", type=parse_range)
    p.add_argument("--support", type=_support)
    p.add_argument("--width", type=parse_range)
    _common(p)

    p = sub.add_parser("fit", help="exact polynomial fit of gED over an (n, m) window")
    p.add_argument("--n", type=parse_range)
    p.add_argument("--m", type=parse_range)
    p.add_argument("--support", type=_support)
    p.add_argument("--width", type=_width, help='integer, or "min" for the full space')
    p.add_argument("--search", action="store_true",
                   help="scan windows inside the ranges instead of fitting one")
    _common(p)

    p = sub.add_parser("verify-monomial", help="compare support S with its top-degree monomial")
    p.add_argument("--n", type=parse_range)
    p.add_argument("--m", type=parse_range)
    p.add_argument("--support", type=_support)
    p.add_argument("--width", type=_width, help='integer, or "min" for the full space')
    _common(p)

    p = sub.add_parser("stability-in-n", help="gED along N (cols) at fixed rows and rank")
    p.add_argument("--rows", type=parse_range)
    p.add_argument("--cols", type=parse_range)
    p.add_argument("--rank", type=parse_range)
    _common(p)

    p = sub.add_parser("selftest", help="quick consistency checks")
    _common(p)
    return ap


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    data = {k.replace("-", "_"): v for k, v in data.items()}
    unknown = set(data) - CONFIG_KEYS
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    return data


def _coerce(key: str, value, command: str):
    if key in ("rows", "cols", "rank", "n", "m"):
        return parse_range(str(value))
    if key == "width":
        return parse_range(str(value)) if command == "neuro" else _width(str(value))
    if key == "support":
        return _support(",".join(map(str, value)) if isinstance(value, list) else str(value))
    return value


def _resolve(ns: argparse.Namespace) -> RunConfig:
    conf = _load_config(ns.config)
    defaults = RunConfig()
    for key, value in conf.items():
        if getattr(ns, key, None) in (None, False):
            setattr(ns, key, _coerce(key, value, ns.command))
    for f in fields(RunConfig):
        if getattr(ns, f.name, None) is None:
            setattr(ns, f.name, getattr(defaults, f.name))
    if ns.lr_cache is None:
        env = persist.default_cache_path()
        ns.lr_cache = str(env) if env else None
    cfg = RunConfig.from_args(ns)
    if cfg.method not in ("schubert", "localization", "both"):
        raise UsageError(f"bad method {cfg.method!r}")
    if cfg.format not in ("json", "csv", "table"):
        raise UsageError(f"bad format {cfg.format!r}")
    if cfg.workers < 1 or cfg.max_degree < 0:
        raise UsageError("workers must be >= 1 and max_degree >= 0")
    return cfg


COMMANDS = {"det": cmd_det, "neuro": cmd_neuro, "fit": cmd_fit,
            "verify-monomial": cmd_verify_monomial, "stability-in-n": cmd_stability}


def render(payload, fmt: str) -> str:
    if fmt == "json":
        return persist.dumps(payload)
    rows = payload if isinstance(payload, list) else [payload]
    flat = [{k: v for k, v in r.items() if k != "comparison"} for r in rows]
    return persist.to_csv(flat) if fmt == "csv" else persist.to_table(flat)


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _resolve(ns)
        cache = Path(cfg.lr_cache) if cfg.lr_cache else None
        if cache:
            persist.load_lr_cache(cache)
        if ns.command == "selftest":
            payload = selftest(cfg)
            code = EXIT_OK if all(r["ok"] for r in payload) else EXIT_MATH
        else:
            for key in ("rows", "cols", "rank", "n", "m", "support", "width"):
                if hasattr(ns, key) and getattr(ns, key) is None:
                    raise UsageError(f"missing --{key}")
            payload = COMMANDS[ns.command](ns, cfg)
            code = EXIT_OK
        if cache:
            persist.append_lr_cache(cache)
    except UsageError as exc:
        print(f"gedlab: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MathInconsistency, IntegralityError) as exc:
        print(f"gedlab: mathematical inconsistency: {exc}", file=sys.stderr)
        return EXIT_MATH
    except BudgetExceeded as exc:
        print(f"gedlab: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, argparse.ArgumentTypeError) as exc:
        print(f"gedlab: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(render(payload, cfg.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
