"""Command line front end: ``vran-avail {solve,sweep,table,network,simulate}``.

Exit codes: 0 success, 1 statistical check failed (``simulate``), 2 invalid
input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .cluster import cluster_availability
from .config import SweepSpec, load_json, parse_model
from .network import (
    NetworkScenario,
    expected_unavailable,
    pmf_centralized,
    pmf_distributed,
)
from .platform_model import VARIANT_FLAGS, variant_from_flags
from .report import HEADER_COMMENT, fmt, nines_table, render_table, row_for, solve_points, write_csv
from .sim import SimConfig, simulate_cluster, simulate_platform
from .units import ValidationError, parse_duration

EXIT_OK, EXIT_STAT_FAIL, EXIT_INVALID = 0, 1, 2
Z_LIMIT = 3.0


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _kv(pairs) -> str:
    width = max(len(k) for k, _ in pairs)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in pairs)


def cmd_solve(args) -> int:
    model = parse_model(load_json(args.config))
    variant = variant_from_flags(args.model_variant)
    rep = cluster_availability(model.params, model.spec, variant)
    if args.format == "csv":
        text = write_csv([row_for(model, rep)])
    else:
        text = HEADER_COMMENT + "\n" + _kv([
            ("resolved_config", json.dumps(model.resolved())),
            ("mode", model.spec.mode.value),
            ("n_h", model.spec.n_h),
            ("n_s", model.spec.n_s),
            ("app_replicas", rep.app_replicas),
            ("state_count", rep.state_count),
            ("f_platform", fmt(rep.f_platform)),
            ("f_app", fmt(rep.f_app)),
            ("f_cluster", fmt(rep.f_cluster)),
            ("outage_platform", fmt(rep.outage_platform)),
            ("outage_app", fmt(rep.outage_app)),
            ("outage_cluster", fmt(rep.outage_cluster)),
            ("nines", " ".join(str(n) for n in rep.nines_triple)),
        ])
    if args.dump_chain:
        text += "# chain\n" + rep.platform.model.dump()
    _emit(text, args.out)
    return EXIT_OK


def _load_sweep(args) -> SweepSpec:
    spec = SweepSpec.from_dict(load_json(args.config))
    return spec


def cmd_sweep(args) -> int:
    spec = _load_sweep(args)
    points = list(spec.points())
    reports = solve_points(points, variant_from_flags(args.model_variant))
    text = write_csv(row_for(p.model, r) for p, r in zip(points, reports))
    fmt_ = args.format or spec.format
    if fmt_ == "table":
        grouped = nines_table(spec.names, points, reports)
        text = render_table(spec.names, grouped, _fixed(spec))
    _emit(text, args.out or spec.out)
    return EXIT_OK


def _fixed(spec: SweepSpec) -> dict[str, str]:
    return {k: str(v) for k, v in spec.base.items() if k not in spec.grid}


def cmd_table(args) -> int:
    spec = _load_sweep(args)
    points = list(spec.points())
    reports = solve_points(points, variant_from_flags(args.model_variant))
    grouped = nines_table(spec.names, points, reports)
    sys.stdout.write(render_table(spec.names, grouped, _fixed(spec)))
    raw = write_csv(row_for(p.model, r) for p, r in zip(points, reports))
    out = args.out or spec.out
    if out:
        Path(out).write_text(raw, encoding="utf-8")
    return EXIT_OK


def _probability(raw: dict, name: str) -> float:
    v = raw[name]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not 0.0 <= v <= 1.0:
        raise ValidationError(f"must be a probability in [0, 1], got {v!r}", name)
    return float(v)


def _availability_of(raw: dict, which: str) -> float:
    """f for 'du'/'cu' given directly, as an outage, or as a nested cluster config."""
    if f"f_{which}" in raw:
        return _probability(raw, f"f_{which}")
    if f"{which}_outage" in raw:
        return 1.0 - _probability(raw, f"{which}_outage")
    if which in raw:
        if not isinstance(raw[which], dict):
            raise ValidationError("must be a cluster config object", which)
        model = parse_model(raw[which])
        return cluster_availability(model.params, model.spec).f_cluster
    raise ValidationError(f"give f_{which}, {which}_outage or a nested {which} config", f"f_{which}")


NETWORK_COLUMNS = ("n_c", "du_outage", "cu_outage", "cell_outage", "all_down_centralized",
                   "all_down_distributed", "none_down_centralized", "none_down_distributed",
                   "mean_centralized", "mean_distributed", "mean_closed_form")


def cmd_network(args) -> int:
    raw = load_json(args.config)
    scenarios = raw.get("scenarios")
    if not isinstance(scenarios, list) or not scenarios:
        raise ValidationError("needs a non-empty list", "scenarios")
    default_n_c = raw.get("n_c", 1)
    rows, pmf_rows = [], []
    for i, sc in enumerate(scenarios):
        if not isinstance(sc, dict):
            raise ValidationError("must be an object", f"scenarios[{i}]")
        s = NetworkScenario(sc.get("n_c", default_n_c), _availability_of(sc, "du"), _availability_of(sc, "cu"))
        cen, dis = pmf_centralized(s), pmf_distributed(s)
        rows.append([s.n_c, 1.0 - s.f_du, 1.0 - s.f_cu, cen.p_cell_outage, cen.p_all_down,
                     dis.p_all_down, cen.p_none_down, dis.p_none_down, cen.mean, dis.mean,
                     expected_unavailable(s)])
        pmf_rows += [[i, k, pc, pd] for k, (pc, pd) in enumerate(zip(cen.pmf.tolist(), dis.pmf.tolist()))]

    fmt_rows = [[fmt(v) for v in r] for r in rows]
    if (args.format or "table") == "csv":
        buf = io.StringIO()
        buf.write(HEADER_COMMENT + "\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(NETWORK_COLUMNS)
        w.writerows(fmt_rows)
        text = buf.getvalue()
    else:
        shown = [[str(r[0])] + [f"{v:.3e}" for v in r[1:]] for r in rows]
        widths = [max(len(h), *(len(r[j]) for r in shown)) for j, h in enumerate(NETWORK_COLUMNS)]
        lines = ["  ".join(h.ljust(w) for h, w in zip(NETWORK_COLUMNS, widths)).rstrip()]
        lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in shown]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    if args.pmf:
        buf = io.StringIO()
        buf.write(HEADER_COMMENT + "\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("scenario", "k", "p_centralized", "p_distributed"))
        w.writerows([[fmt(v) for v in r] for r in pmf_rows])
        Path(args.pmf).write_text(buf.getvalue(), encoding="utf-8")
    return EXIT_OK


SIM_FIELDS = ("horizon", "seed", "batches", "target")


def cmd_simulate(args) -> int:
    raw = load_json(args.config)
    model = parse_model(raw, extra=SIM_FIELDS)
    horizon_raw = args.horizon if args.horizon is not None else raw.get("horizon", "5e9s")
    try:
        horizon = parse_duration(horizon_raw).seconds
    except ValidationError as exc:
        raise ValidationError(str(exc), "horizon") from None
    seed = args.seed if args.seed is not None else raw.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ValidationError(f"must be an integer, got {seed!r}", "seed")
    target = raw.get("target", "cluster")
    if target not in ("cluster", "platform"):
        raise ValidationError(f"must be cluster or platform, got {target!r}", "target")
    cfg = SimConfig(model.params, model.spec, horizon, seed, raw.get("batches", 30))

    rep = cluster_availability(model.params, model.spec)
    if target == "cluster":
        res, analytic = simulate_cluster(cfg), rep.f_cluster
    else:
        res, analytic = simulate_platform(cfg), rep.f_platform
    z = res.z_score(analytic)
    lines = [
        ("target", target),
        ("mode", model.spec.mode.value),
        ("horizon_s", fmt(horizon)),
        ("seed", seed),
        ("batches", cfg.batches),
        ("estimate", f"{fmt(res.availability_estimate)} +/- {fmt(res.std_error)}"),
        ("analytic", fmt(analytic)),
        ("z", fmt(float(z))),
        ("events", res.event_count),
    ]
    if res.short_horizon:
        lines.append(("warning", "horizon too short for 100 expected failure events"))
    _emit(HEADER_COMMENT + "\n" + _kv(lines), args.out)
    return EXIT_OK if abs(z) <= Z_LIMIT else EXIT_STAT_FAIL


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vran-avail", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, formats=("csv", "table")):
        p.add_argument("--config", required=True, help="JSON config file")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--format", choices=formats)
        return p

    variant_help = f"model variant for sensitivity checks ({', '.join(VARIANT_FLAGS)}); repeatable"
    p = common(sub.add_parser("solve", help="solve one configuration"))
    p.add_argument("--model-variant", action="append", choices=sorted(VARIANT_FLAGS), help=variant_help)
    p.add_argument("--dump-chain", action="store_true", help="append the platform state space and generator")
    p.set_defaults(func=cmd_solve, format="table")

    for name, func, help_ in (("sweep", cmd_sweep, "evaluate a parameter grid"),
                              ("table", cmd_table, "group a parameter grid by nines")):
        p = common(sub.add_parser(name, help=help_))
        p.add_argument("--model-variant", action="append", choices=sorted(VARIANT_FLAGS), help=variant_help)
        p.set_defaults(func=func)

    p = common(sub.add_parser("network", help="centralized vs distributed CU outage statistics"))
    p.add_argument("--pmf", help="also write the full outage PMFs as CSV")
    p.set_defaults(func=cmd_network)

    p = sub.add_parser("simulate", help="Monte Carlo check against the analytic model")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.add_argument("--seed", type=int)
    p.add_argument("--horizon", help="simulated time, e.g. 5e9s or 100years")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        sys.stderr.write(f"vran-avail: invalid input: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
