"""Report assembly and serialisation.

Every numeric result is serialised as its certified range in exact form
(rationals as 'p/q', dyadics as 'm*2^e') next to float renderings for
humans.  Canonical mode drops the timing block and sorts keys, making
reports byte-identical across runs of the same configuration.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Union

from .cantor import HolderCertificate
from .config import ExperimentConfig
from .level_sets import CertifiedCount, LevelStats
from .multiplicative import SquareCover
from .numerics import DirectedReal, Enclosure
from .sequences import ExponentStats, RegimeResult


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dyadic_str(d: DirectedReal) -> str:
    return f"{d.mantissa}*2^{d.exponent}"


def enclosure_json(enc: Enclosure) -> dict:
    return {
        "lo": dyadic_str(enc.lo),
        "hi": dyadic_str(enc.hi),
        "lo_float": float(enc.lo),
        "hi_float": float(enc.hi),
        "exact": enc.is_exact,
    }


def value_json(v: Union[Enclosure, Fraction]) -> dict:
    if isinstance(v, Enclosure):
        return enclosure_json(v)
    return {"exact_value": fraction_str(v), "float": float(v)}


def count_json(c: CertifiedCount) -> dict:
    return {"min": c.min, "max": c.max}


def stats_json(stats: ExponentStats, regime: RegimeResult) -> dict:
    return {
        "h_list": [enclosure_json(h) for h in stats.h_list],
        "alpha_list": [enclosure_json(a) for a in stats.alpha_list],
        "h_prefix": enclosure_json(stats.h_prefix) if stats.h_prefix else None,
        "alpha_last": enclosure_json(stats.alpha_last) if stats.alpha_last else None,
        "regime": {"status": regime.status.value, "index": regime.index},
    }


def level_stats_json(st: LevelStats) -> dict:
    return {
        "level": st.level,
        "q": st.q,
        "count": count_json(st.count),
        "per_coord": [count_json(c) for c in st.per_coord],
        "max_len": fraction_str(st.max_len),
        "max_len_float": float(st.max_len),
        "min_gap": fraction_str(st.min_gap) if st.min_gap is not None else None,
        "total_len": fraction_str(st.total_len),
        "total_len_float": float(st.total_len),
    }


def cover_report_json(report) -> dict:
    """Flat serialisation of a box-cover report (dimension module)."""
    dim = report.dim_estimate()
    return {
        "J": report.depth,
        "N_min": report.count.min,
        "N_max": report.count.max,
        "side_lo": dyadic_str(report.side.lo),
        "side_hi": dyadic_str(report.side.hi),
        "side_lo_float": float(report.side.lo),
        "side_hi_float": float(report.side.hi),
        "dim_lo": dyadic_str(dim.lo),
        "dim_hi": dyadic_str(dim.hi),
        "dim_lo_float": float(dim.lo),
        "dim_hi_float": float(dim.hi),
    }


def certificate_json(cert: HolderCertificate) -> dict:
    return {
        "s": fraction_str(cert.s),
        "n": cert.samples,
        "seed": cert.seed,
        "max_ratio": fraction_str(cert.max_ratio),
        "max_ratio_float": cert.max_ratio_float(),
        "worst_ball": {
            "center": [fraction_str(c) for c in cert.worst_ball.center],
            "radius": enclosure_json(cert.worst_ball.radius),
        },
    }


def config_json(cfg: ExperimentConfig) -> dict:
    return {
        "sequence": cfg.sequence,
        "terms": list(cfg.terms),
        "q1": cfg.q1,
        "growth": fraction_str(cfg.growth),
        "eta": fraction_str(cfg.eta),
        "tau": fraction_str(cfg.tau),
        "theta": [fraction_str(t) for t in cfg.theta],
        "d": cfg.d,
        "depth": cfg.depth,
        "precision": cfg.resolved_precision(),
        "component_budget": cfg.component_budget,
        "node_budget": cfg.node_budget,
        "tasks": list(cfg.tasks),
        "seed": cfg.seed,
        "holder_s": fraction_str(cfg.holder_s),
        "holder_samples": cfg.holder_samples,
        "gamma": fraction_str(cfg.gamma),
        "mult_s": fraction_str(cfg.mult_s),
    }


def render_json(report: dict, canonical: bool = False) -> str:
    doc = dict(report)
    if canonical:
        doc.pop("timing", None)
    return json.dumps(doc, sort_keys=canonical, indent=2) + "\n"


def parse_json(text: str) -> dict:
    return json.loads(text)


# ---------------------------------------------------------------------------
# CSV renderings
# ---------------------------------------------------------------------------

def levels_csv(levels: list[dict]) -> str:
    """Float renderings for spreadsheets; exact strings live in the JSON."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["level", "count_min", "count_max", "max_len", "min_gap", "total_len"])
    for st in levels:
        gap = st["min_gap"]
        w.writerow([st["level"], st["count"]["min"], st["count"]["max"],
                    st["max_len_float"],
                    float(Fraction(gap)) if gap is not None else "",
                    st["total_len_float"]])
    return buf.getvalue()


def cover_csv(cover: SquareCover) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y", "side"])
    for sq in cover.squares:
        w.writerow([fraction_str(sq.x), fraction_str(sq.y), fraction_str(sq.side)])
    return buf.getvalue()


def dimension_csv(series: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["depth", "lower_lo", "lower_hi", "upper_lo", "upper_hi"])
    for row in series:
        w.writerow([row["depth"],
                    row["lower"]["lo_float"], row["lower"]["hi_float"],
                    row["upper"]["lo_float"], row["upper"]["hi_float"]])
    return buf.getvalue()
