"""Canonical JSON/CSV output and the on-disk LR-coefficient cache."""

from __future__ import annotations

import csv
import io
import json
import logging
import os
from fractions import Fraction
from pathlib import Path

from .combinat import lr_records, seed_lr_table

log = logging.getLogger(__name__)

CACHE_ENV = "GEDLAB_LR_CACHE"


def canonical(obj):
    """Integers and fractions become decimal strings; tuples become lists."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(canonical(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def to_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    header = sorted({key for row in rows for key in row})
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(row.get(h, "")) for h in header])
    return buf.getvalue()


def _cell(v) -> str:
    c = canonical(v)
    if isinstance(c, list):
        return " ".join(str(x) for x in c)
    return "" if c is None else str(c)


def to_table(rows: list[dict]) -> str:
    if not rows:
        return ""
    header = list(rows[0])
    for row in rows[1:]:
        header += [h for h in row if h not in header]
    cells = [[_cell(row.get(h, "")) for h in header] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in cells)) for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    return "\n".join(lines) + "\n"


def default_cache_path() -> Path | None:
    p = os.environ.get(CACHE_ENV)
    return Path(p) if p else None


def load_lr_cache(path: Path) -> int:
    """Seed the LR table from ``path``; returns accepted expansions. Bad lines are skipped."""
    if not path.exists():
        return 0
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                lam, mu, nu = (tuple(int(x) for x in rec[key]) for key in ("lam", "mu", "nu"))
                coeff = rec["c"]
                if not isinstance(coeff, str):
                    raise ValueError("coefficient must be a decimal string")
                records.append((lam, mu, nu, int(coeff)))
            except (ValueError, KeyError, TypeError) as exc:
                log.warning("%s:%d: skipping corrupt LR cache line (%s)", path, lineno, exc)
    return seed_lr_table(records)


def append_lr_cache(path: Path) -> int:
    """Append expansions computed since the last flush."""
    rows = lr_records(fresh_only=True)
    if not rows:
        return 0
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "a", encoding="utf-8") as fh:
        for lam, mu, nu, c in rows:
            fh.write(json.dumps({"lam": list(lam), "mu": list(mu), "nu": list(nu), "c": str(c)},
                                sort_keys=True, separators=(",", ":")) + "\n")
    return len(rows)
