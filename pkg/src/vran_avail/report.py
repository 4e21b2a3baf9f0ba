"""CSV rows and nines tables for solved grid points."""

from __future__ import annotations

import csv
import io
import math
import os
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, Sequence

from . import __version__
from .cluster import ClusterReport, cluster_availability
from .config import DURATION_FIELDS, GridPoint, ModelConfig
from .platform_model import DEFAULT_VARIANT, PlatformVariant

HEADER_COMMENT = (f"# vran-avail {__version__}; csv-schema 1; durations in seconds; "
                  f"month=30d; year=365d")
PARAM_COLUMNS = ("mode", "n_h", "n_s") + DURATION_FIELDS
RESULT_COLUMNS = ("app_replicas", "state_count", "f_platform", "f_app", "f_cluster",
                  "outage_platform", "outage_app", "outage_cluster",
                  "nines", "nines_platform", "nines_app")
CSV_COLUMNS = PARAM_COLUMNS + RESULT_COLUMNS
THREADS_ENV = "VRAN_AVAIL_THREADS"


def fmt(x) -> str:
    if isinstance(x, float):
        return "inf" if math.isinf(x) else repr(x)
    return str(x)


def row_for(model: ModelConfig, report: ClusterReport) -> list[str]:
    resolved = model.params.canonical()
    values = [model.spec.mode.value, model.spec.n_h, model.spec.n_s]
    values += ["" if resolved[name] is None else resolved[name] for name in DURATION_FIELDS]
    values += [report.app_replicas, report.state_count, report.f_platform, report.f_app,
               report.f_cluster, report.outage_platform, report.outage_app,
               report.outage_cluster, *report.nines_triple]
    return [fmt(v) for v in values]


def write_csv(rows: Iterable[Sequence[str]]) -> str:
    buf = io.StringIO()
    buf.write(HEADER_COMMENT + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    w.writerows(rows)
    return buf.getvalue()


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return min(8, os.cpu_count() or 1)


def solve_points(points: Sequence[GridPoint], variant: PlatformVariant = DEFAULT_VARIANT,
                 solver: str = "direct") -> list[ClusterReport]:
    """Solve every grid point; results come back in input order."""
    def one(pt: GridPoint) -> ClusterReport:
        return cluster_availability(pt.model.params, pt.model.spec, variant, solver)

    workers = min(thread_count(), max(1, len(points)))
    if workers == 1:
        return [one(pt) for pt in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, points))


def _collapse(rows: list[tuple[frozenset, ...]]) -> list[tuple[frozenset, ...]]:
    """Merge rows that differ in one column into value lists until nothing merges."""
    changed = True
    while changed:
        changed = False
        for col in range(len(rows[0]) if rows else 0):
            merged: dict = defaultdict(set)
            order = []
            for r in rows:
                key = r[:col] + r[col + 1:]
                if key not in merged:
                    order.append(key)
                merged[key] |= r[col]
            if len(order) < len(rows):
                changed = True
                rows = [k[:col] + (frozenset(merged[k]),) + k[col:] for k in order]
    return rows


def nines_table(names: Sequence[str], points: Sequence[GridPoint],
                reports: Sequence[ClusterReport]) -> list[tuple[tuple[int, int, int], list[list[str]]]]:
    """Group grid points by (nines, nines_platform, nines_app) into compact rows."""
    position = {name: {} for name in names}
    for pt in points:
        for name, label in zip(names, pt.labels):
            position[name].setdefault(label, len(position[name]))

    groups: dict = defaultdict(list)
    for pt, rep in zip(points, reports):
        groups[rep.nines_triple].append(tuple(frozenset([label]) for label in pt.labels))

    out = []
    for triple in sorted(groups):
        rows = _collapse(groups[triple])
        rows.sort(key=lambda r: [sorted(position[n][v] for v in vals) for n, vals in zip(names, r)])
        rendered = [[", ".join(str(v) for v in sorted(vals, key=lambda v: position[n][v]))
                     for n, vals in zip(names, r)] for r in rows]
        out.append((triple, rendered))
    return out


def render_table(names: Sequence[str], grouped, fixed: dict[str, str]) -> str:
    header = ["#9s", "#9s_p", "#9s_s", *names]
    body = [[str(t[0]), str(t[1]), str(t[2]), *cells] for t, rows in grouped for cells in rows]
    widths = [max(len(h), *(len(r[i]) for r in body)) if body else len(h) for i, h in enumerate(header)]
    line = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    out = [line(header), line(["-" * w for w in widths])]
    out += [line(r) for r in body]
    if fixed:
        out.append("")
        out.append("fixed: " + ", ".join(f"{k}={v}" for k, v in fixed.items()))
    return "\n".join(out) + "\n"
