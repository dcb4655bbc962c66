"""Config-driven experiment runner.

``liminfdim run <config>`` executes the requested tasks and writes a JSON
report (plus CSV files with ``--format csv``); ``liminfdim plot`` renders a
report series as a standalone SVG.  Exit codes: 0 success, 1 budget
exhausted (a partial report is still written), 2 configuration errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import report as rep
from .cantor import build_tree
from .config import ConfigError, ExperimentConfig, load_config, parse_rational
from .dimension import (
    RegimeViolationError,
    lower_cantor_count,
    theoretical_dimension,
    upper_cover_count,
    upper_dim_estimate,
)
from .level_sets import BudgetExceededError, LevelParams, prefix_intersection
from .multiplicative import hyperbolic_cover, mult_bounds, mult_cost_exponent
from .sequences import exponent_stats, generate, validate_regime
from .svg import Plot, square_overlay


class MissingSeriesError(KeyError):
    def __init__(self, kind: str, task: str):
        super().__init__(f"plot '{kind}' needs the '{task}' task in the report")
        self.task = task


def run(cfg: ExperimentConfig, canonical: bool = False) -> tuple[dict, int]:
    """Execute the configured tasks; returns (report, exit_code)."""
    prec = cfg.resolved_precision()
    warnings: list[str] = []
    results: dict = {}
    timing: dict = {}
    exit_code = 0

    t0 = time.perf_counter()
    qs = generate(cfg.spec(), cfg.depth)
    params = LevelParams(theta=cfg.theta, tau=cfg.tau, d=cfg.d)
    stats = exponent_stats(qs, prec)
    regime = validate_regime(qs, cfg.tau, prec)
    if not regime:
        warnings.append(f"growth regime check: {regime.status.value}"
                        + (f" at step {regime.index}" if regime.index else ""))
    timing["analyze"] = time.perf_counter() - t0

    results["analyze"] = rep.stats_json(stats, regime)
    results["analyze"]["terms"] = [str(q) for q in qs.terms]

    for task in cfg.tasks:
        if task == "analyze":
            continue
        t0 = time.perf_counter()
        if task == "enumerate":
            try:
                enum = prefix_intersection(qs, params, cfg.depth, prec,
                                           cfg.component_budget)
                levels = [rep.level_stats_json(st) for st in enum.levels]
                results["enumerate"] = {"levels": levels, "aborted_at": None}
            except BudgetExceededError as exc:
                warnings.append(f"enumerate: component budget hit at level {exc.level}")
                levels = [rep.level_stats_json(st) for st in exc.partial.levels] \
                    if exc.partial else []
                results["enumerate"] = {"levels": levels, "aborted_at": exc.level}
                exit_code = 1
        elif task == "dimension":
            series = []
            for depth in range(1, cfg.depth + 1):
                upper = upper_dim_estimate(qs, cfg.tau, cfg.d, depth, prec)
                try:
                    lower = lower_cantor_count(qs, cfg.tau, cfg.d, depth, prec).s_hat
                except RegimeViolationError as exc:
                    warnings.append(f"dimension: {exc}")
                    lower = None
                series.append({
                    "depth": depth,
                    "upper": rep.enclosure_json(upper),
                    "lower": rep.enclosure_json(lower) if lower else None,
                })
            theo = None
            if stats.alpha_last is not None:
                dv = theoretical_dimension(cfg.tau, stats.alpha_last, cfg.d, prec)
                if dv.clamped:
                    warnings.append("dimension: formula clamped at zero (tau*alpha > 1)")
                theo = rep.value_json(dv.as_enclosure(prec))
            final_cover = upper_cover_count(qs, cfg.tau, cfg.d, cfg.depth, prec)
            results["dimension"] = {
                "series": series,
                "theoretical": theo,
                "cover_report": rep.cover_report_json(final_cover),
            }
        elif task == "cantor":
            try:
                tree = build_tree(qs, params, cfg.depth, prec, cfg.node_budget)
                cert = tree.holder_certificate(cfg.holder_s, cfg.holder_samples,
                                               cfg.seed)
                results["cantor"] = {
                    "branching_1d": list(tree.branching_1d),
                    "leaf_measure": rep.fraction_str(tree.node_measure(tree.depth)),
                    "min_separation": rep.fraction_str(tree.min_separation(tree.depth)),
                    "certificate": rep.certificate_json(cert),
                }
            except RegimeViolationError as exc:
                warnings.append(f"cantor: {exc}")
                results["cantor"] = {"error": str(exc)}
        elif task == "multiplicative":
            alpha = stats.alpha_last if stats.alpha_last is not None else Fraction(0)
            lower, upper = mult_bounds(cfg.tau, alpha, cfg.d, prec)
            critical = cfg.d - 1 + Fraction(1, cfg.tau + 1)
            cover, cost = hyperbolic_cover(cfg.gamma, cfg.mult_s, prec)
            results["multiplicative"] = {
                "lower": rep.value_json(lower),
                "upper": rep.value_json(upper),
                "critical_s": rep.fraction_str(critical),
                "cost_exponent_at_critical":
                    rep.fraction_str(mult_cost_exponent(cfg.d, cfg.tau, critical)),
                "cover": {
                    "gamma": rep.fraction_str(cfg.gamma),
                    "s": rep.fraction_str(cfg.mult_s),
                    "squares": cover.total_squares(),
                    "s_cost": rep.enclosure_json(cost),
                    "rects": [[rep.fraction_str(sq.x), rep.fraction_str(sq.y),
                               rep.fraction_str(sq.side)] for sq in cover.squares],
                },
            }
        timing[task] = time.perf_counter() - t0

    report = {
        "config": rep.config_json(cfg),
        "results": results,
        "warnings": warnings,
    }
    if not canonical:
        report["timing"] = timing
    return report, exit_code


def plot(report: dict, kind: str, path: str) -> None:
    """Render one series of a report as a standalone SVG file."""
    results = report.get("results", {})
    if kind == "bracket_vs_J":
        dim = results.get("dimension")
        if not dim:
            raise MissingSeriesError(kind, "dimension")
        p = Plot("dimension estimates by depth", "depth", "estimate")
        ups = [(row["depth"], row["upper"]["hi_float"]) for row in dim["series"]]
        p.add_series("upper estimate", ups, color="crimson")
        lows = [(row["depth"], row["lower"]["lo_float"])
                for row in dim["series"] if row["lower"]]
        if lows:
            p.add_series("lower estimate", lows, color="steelblue")
        if dim.get("theoretical"):
            t = dim["theoretical"]
            mid = (t["lo_float"] + t["hi_float"]) / 2 if "lo_float" in t else t["float"]
            p.add_hline(mid, "limit")
        Path(path).write_text(p.render(), encoding="ascii")
    elif kind == "count_vs_scale":
        enum = results.get("enumerate")
        if not enum or not enum.get("levels"):
            raise MissingSeriesError(kind, "enumerate")
        p = Plot("components against box size", "max component length", "components",
                 xlog=True, ylog=True)
        pts = [(st["max_len_float"], max(1, st["count"]["max"]))
               for st in enum["levels"]]
        p.add_series("outer count", pts, color="steelblue")
        Path(path).write_text(p.render(), encoding="ascii")
    elif kind == "cover_overlay":
        mult = results.get("multiplicative")
        if not mult:
            raise MissingSeriesError(kind, "multiplicative")
        gamma = parse_rational(mult["cover"]["gamma"])
        rects = [(float(parse_rational(x)), float(parse_rational(y)),
                  float(parse_rational(s))) for x, y, s in mult["cover"]["rects"]]
        steps = 256
        curve = []
        for i in range(1, steps + 1):
            x = i / steps
            curve.append((x, min(1.0, float(gamma) / x)))
        svg = square_overlay(f"hyperbolic region cover, gamma = {mult['cover']['gamma']}",
                             rects, curve)
        Path(path).write_text(svg, encoding="ascii")
    else:
        raise ValueError(f"unknown plot kind '{kind}'")


def _apply_overrides(cfg: ExperimentConfig, args: argparse.Namespace) -> None:
    if args.task:
        cfg.tasks = tuple(t for group in args.task for t in group.split(","))
    if args.depth is not None:
        cfg.depth = args.depth
    if args.prec is not None:
        cfg.precision = args.prec
    if args.seed is not None:
        cfg.seed = args.seed
    cfg.validate()


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="liminfdim",
        description="certified level-set intersections and dimension estimates")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute the tasks of a config file")
    p_run.add_argument("config", help="path to the experiment config")
    p_run.add_argument("--task", action="append", default=None,
                       help="override the config's task list (repeatable)")
    p_run.add_argument("--depth", type=int, default=None)
    p_run.add_argument("--prec", type=int, default=None)
    p_run.add_argument("--seed", type=int, default=None)
    p_run.add_argument("--out", default=".", help="output directory")
    p_run.add_argument("--format", choices=("json", "csv"), default="json")
    p_run.add_argument("--canonical", action="store_true",
                       help="byte-reproducible output: no timing, sorted keys")

    p_plot = sub.add_parser("plot", help="render a report series as SVG")
    p_plot.add_argument("report", help="path to a report.json")
    p_plot.add_argument("--kind", required=True,
                        choices=("count_vs_scale", "bracket_vs_J", "cover_overlay"))
    p_plot.add_argument("--out", required=True, help="output SVG path")

    args = parser.parse_args(argv)

    if args.command == "run":
        try:
            cfg = load_config(args.config)
            _apply_overrides(cfg, args)
        except (ConfigError, OSError, ValueError) as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return 2
        report, code = run(cfg, canonical=args.canonical)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(
            rep.render_json(report, canonical=args.canonical), encoding="ascii")
        if args.format == "csv":
            res = report["results"]
            if "enumerate" in res:
                (out / "levels.csv").write_text(
                    rep.levels_csv(res["enumerate"]["levels"]), encoding="ascii")
            if "dimension" in res:
                rows = [r for r in res["dimension"]["series"] if r["lower"]]
                (out / "dimension.csv").write_text(
                    rep.dimension_csv(rows), encoding="ascii")
            if "multiplicative" in res:
                cover, _ = hyperbolic_cover(
                    parse_rational(res["multiplicative"]["cover"]["gamma"]),
                    parse_rational(res["multiplicative"]["cover"]["s"]))
                (out / "cover.csv").write_text(rep.cover_csv(cover), encoding="ascii")
        for w in report["warnings"]:
            print(f"warning: {w}", file=sys.stderr)
        return code

    if args.command == "plot":
        try:
            report = rep.parse_json(Path(args.report).read_text(encoding="ascii"))
            plot(report, args.kind, args.out)
        except (MissingSeriesError, ValueError, OSError, KeyError) as exc:
            print(f"plot error: {exc}", file=sys.stderr)
            return 2
        return 0

    return 2  # pragma: no cover


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
