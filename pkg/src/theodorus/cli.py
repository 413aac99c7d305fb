"""Command-line interface.

Exit codes: 0 on success (every verdict, inconclusive included, is a
successful answer), 2 on bad input, 3 when output cannot be written.
"""
from __future__ import annotations

import argparse
import configparser
import json
import sys
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Sequence

from .anthyphairesis import (
    DEFAULT_STEP_BUDGET,
    integer_anthyphairesis,
    method_comparison,
    surd_anthyphairesis,
)
from .construction import build_figure
from .criterion import Mode, decide_sqrt, lesson_table, theon_sequence
from .feasibility import ScaleConfig, lesson_dimensions, spoke_gaps
from .svg import RenderConfig, render_figure_svg, render_gnomon_svg

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3

SCALE_KEYS = {"meters_per_foot", "legibility_threshold_cm"}
RENDER_KEYS = {"pixels_per_foot", "stroke_width", "spoke_width", "labels", "arc_window_deg"}


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _positive_decimal(text: str) -> Decimal:
    try:
        value = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value.is_finite() or value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _dump_json(payload: object) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _table(headers: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _load_config(path: str | None) -> dict[str, str]:
    if not path:
        return {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    parser = configparser.ConfigParser()
    try:
        parser.read_string("[config]\n" + text)
    except configparser.Error as exc:
        raise UsageError(f"malformed config {path}: {exc}") from None
    values = dict(parser["config"])
    unknown = set(values) - SCALE_KEYS - RENDER_KEYS
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return values


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text, encoding="utf-8")


# --- commands ---------------------------------------------------------------


def cmd_decide(args: argparse.Namespace, config: dict) -> str:
    verdict = decide_sqrt(args.n, Mode(args.mode))
    if args.format == "json":
        return _dump_json(verdict.to_dict())
    ev = ", ".join(f"{k}={v}" for k, v in verdict.evidence().items()) or "-"
    return _table(["n", "outcome", "evidence", "mode"], [[verdict.n, verdict.label, ev, verdict.mode.value]])


def cmd_lesson(args: argparse.Namespace, config: dict) -> str:
    rows = lesson_table()
    theon = theon_sequence(9)
    if args.format == "json":
        return _dump_json(
            {
                "rows": [v.to_dict() for v in rows],
                "theon_sequence": [
                    {"index": r.index, "odd_pair_sum": r.odd_pair_sum, "square": r.square}
                    for r in theon
                ],
            }
        )
    table = _table(
        ["n", "n mod 8", "outcome"],
        [[v.n, v.n % 8, v.label] for v in rows],
    )
    sums = _table(
        ["row", "added odd pair", "odd square", "mod 8"],
        [[r.index, r.odd_pair_sum, r.square, r.square % 8] for r in theon],
    )
    return table + "\nOdd squares as running sums of odd numbers:\n" + sums


def _render_config(args: argparse.Namespace, config: dict) -> RenderConfig:
    def pick(name: str, cast, default):
        flag = getattr(args, name, None)
        if flag is not None:
            return flag
        if name in config:
            try:
                return cast(config[name])
            except ValueError:
                raise UsageError(f"bad value for {name}: {config[name]!r}") from None
        return default

    def as_bool(text: str) -> bool:
        lowered = str(text).strip().lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        raise ValueError(text)

    defaults = RenderConfig()
    labels = defaults.labels
    if "labels" in config:
        try:
            labels = as_bool(config["labels"])
        except ValueError:
            raise UsageError(f"bad value for labels: {config['labels']!r}") from None
    if getattr(args, "no_labels", False):
        labels = False
    try:
        return RenderConfig(
            pixels_per_foot=pick("pixels_per_foot", int, defaults.pixels_per_foot),
            stroke_width=pick("stroke_width", float, defaults.stroke_width),
            spoke_width=pick("spoke_width", float, defaults.spoke_width),
            labels=labels,
            arc_window_deg=pick("arc_window_deg", float, defaults.arc_window_deg),
            show_optional=getattr(args, "show_optional", False),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_figure(args: argparse.Namespace, config: dict) -> str:
    fig = build_figure(args.max_odd)
    if args.format == "json":
        return _dump_json(fig.to_dict())
    return render_figure_svg(fig, _render_config(args, config))


def cmd_gnomon(args: argparse.Namespace, config: dict) -> str:
    if args.m % 2 == 0 or args.q % 2 == 0:
        raise UsageError("--m and --q must both be odd")
    return render_gnomon_svg(args.m, args.q, _render_config(args, {**config, "pixels_per_foot": config.get("pixels_per_foot", "20")}))


def cmd_compare(args: argparse.Namespace, config: dict) -> str:
    if args.start % 2 == 0 or args.max_odd % 2 == 0 or args.start < 3 or args.max_odd < args.start:
        raise UsageError("--start and --max-odd must be odd with 3 <= start <= max-odd")
    report = method_comparison(range(args.start, args.max_odd + 1, 2))
    if args.format == "json":
        return _dump_json(report.to_dict())
    rows = _table(
        ["n", "residue outcome", "residue steps", "anthyphairesis outcome", "anthyphairesis steps"],
        [[r.n, r.residue_outcome, r.residue_steps, r.anthy_outcome, r.anthy_steps] for r in report.rows],
    )
    flags = _table(
        ["method", "condition", "satisfied", "detail"],
        [
            [method, cond, "yes" if flag.satisfied else "no", flag.detail]
            for method, conds in report.condition_flags.items()
            for cond, flag in conds.items()
        ],
    )
    info = "".join(f"  ({k}) {v}\n" for k, v in report.informational_flags.items())
    return f"{report.note}\n\n{rows}\n{flags}\nNot mechanized:\n{info}"


def cmd_anthy(args: argparse.Namespace, config: dict) -> str:
    if args.sqrt is not None:
        if args.values:
            raise UsageError("give either --sqrt N or two integers, not both")
        if args.sqrt < 2:
            raise UsageError("--sqrt needs N >= 2")
        cf = surd_anthyphairesis(args.sqrt, args.budget)
        payload = {
            "n": cf.n,
            "integer_part": cf.integer_part,
            "partial_quotients": list(cf.partial_quotients),
            "status": cf.status.value,
            "period": None if cf.period is None else {"start": cf.period[0], "length": cf.period[1]},
            "steps": cf.steps,
        }
        if args.format == "json":
            return _dump_json(payload)
        period = "-" if cf.period is None else f"start {cf.period[0]}, length {cf.period[1]}"
        return _table(
            ["n", "status", "quotients", "period", "steps"],
            [[cf.n, cf.status.value, list(cf.partial_quotients), period, cf.steps]],
        )
    if len(args.values) != 2:
        raise UsageError("anthy needs two positive integers, or --sqrt N")
    trace = integer_anthyphairesis(*args.values)
    if args.format == "json":
        return _dump_json(
            {
                "initial": list(trace.initial),
                "steps": [
                    {"larger": s.larger, "smaller": s.smaller, "quotient": s.quotient, "remainder": s.remainder}
                    for s in trace.steps
                ],
                "terminated": trace.terminated,
                "common_measure": trace.common_measure,
            }
        )
    body = _table(
        ["larger", "smaller", "quotient", "remainder"],
        [[s.larger, s.smaller, s.quotient, s.remainder] for s in trace.steps],
    )
    return body + f"common measure: {trace.common_measure}\n"


def cmd_feasibility(args: argparse.Namespace, config: dict) -> str:
    values = {k: v for k, v in config.items() if k in SCALE_KEYS}
    if args.meters_per_foot is not None:
        values["meters_per_foot"] = args.meters_per_foot
    if args.threshold_cm is not None:
        values["legibility_threshold_cm"] = args.threshold_cm
    try:
        cfg = ScaleConfig.from_mapping(values)
    except (ValueError, InvalidOperation) as exc:
        raise UsageError(f"bad scale config: {exc}") from None
    if cfg.legibility_threshold_cm <= 0:
        raise UsageError("legibility threshold must be positive")
    gaps = spoke_gaps(args.max_odd, cfg)
    dims = lesson_dimensions(cfg, args.max_odd)
    if args.format == "json":
        return _dump_json(
            {
                "meters_per_foot": str(cfg.meters_per_foot),
                "legibility_threshold_cm": str(cfg.legibility_threshold_cm),
                "gaps": [g.to_dict() for g in gaps],
                "minimum_gap": min(gaps, key=lambda g: g.gap_feet).to_dict(),
                "dimensions": dims.to_dict(),
            }
        )
    gap_rows = [
        [f"{g.n_low}-{g.n_high}", f"{g.gap_feet:.4f}", f"{g.gap_cm:.2f}", "yes" if g.legible else "no"]
        for g in gaps
    ]
    d = dims.to_dict()
    height_rows = [
        [
            h["n"], h["feet"], h["meters"], h["reference_m"] or "-", h["discrepancy_m"] or "-",
            {True: "yes", False: "no", None: "-"}[h["within_tolerance"]],
            {True: "loose", False: "ok", None: "-"}[h["loosely_rounded"]],
        ]
        for h in d["spoke_heights"]
    ]
    return (
        f"scale: 1 foot = {cfg.meters_per_foot} m; legibility threshold {cfg.legibility_threshold_cm} cm\n\n"
        + _table(["arcs", "gap (ft)", "gap (cm)", "legible"], gap_rows)
        + f"\ncord: {dims.cord_feet} ft = {dims.cord_meters} m; baseline marked to {dims.baseline_feet} ft\n\n"
        + _table(
            ["n", "height (ft)", "height (m)", "printed (m)", "difference (m)",
             f"within {d['reference_tolerance_m']} m", "printed rounding"],
            height_rows,
        )
    )


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default=argparse.SUPPRESS)
    common.add_argument("--out", metavar="PATH", default=argparse.SUPPRESS)
    common.add_argument("--config", metavar="PATH", default=argparse.SUPPRESS,
                        help="key = value file; command-line flags take precedence")

    parser = argparse.ArgumentParser(prog="theodorus", description=__doc__.splitlines()[0],
                                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", parents=[common], help="decide whether sqrt(n) is rational")
    p.add_argument("n", type=_positive_int)
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.LESSON_FAITHFUL.value)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("lesson", parents=[common], help="the eight cases 3..17 and the odd-square table")
    p.set_defaults(func=cmd_lesson)

    def render_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--pixels-per-foot", dest="pixels_per_foot", type=_positive_int)
        p.add_argument("--stroke-width", dest="stroke_width", type=float)
        p.add_argument("--spoke-width", dest="spoke_width", type=float)
        p.add_argument("--arc-window", dest="arc_window_deg", type=float, metavar="DEG")
        p.add_argument("--no-labels", dest="no_labels", action="store_true")

    p = sub.add_parser("figure", parents=[common], help="SVG of the construction (JSON with --format json)")
    p.add_argument("--max-odd", dest="max_odd", type=_positive_int, default=17)
    p.add_argument("--show-optional", dest="show_optional", action="store_true",
                   help="also mark far points that are not drawn, such as H'")
    render_flags(p)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("gnomon", parents=[common], help="SVG of m squares of side q regrouped by eights")
    p.add_argument("--m", type=_positive_int, required=True)
    p.add_argument("--q", type=_positive_int, required=True)
    render_flags(p)
    p.set_defaults(func=cmd_gnomon)

    p = sub.add_parser("compare", parents=[common], help="residue criterion vs anthyphairesis")
    p.add_argument("--max-odd", dest="max_odd", type=_positive_int, default=17)
    p.add_argument("--start", type=_positive_int, default=3)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("anthy", parents=[common], help="alternate subtraction on integers or on sqrt(N)")
    p.add_argument("values", nargs="*", type=_positive_int, metavar="M N")
    p.add_argument("--sqrt", type=_positive_int, metavar="N")
    p.add_argument("--budget", type=_positive_int, default=DEFAULT_STEP_BUDGET)
    p.set_defaults(func=cmd_anthy)

    p = sub.add_parser("feasibility", parents=[common], help="gaps and dimensions at real scale")
    p.add_argument("--meters-per-foot", dest="meters_per_foot", type=_positive_decimal)
    p.add_argument("--threshold-cm", dest="threshold_cm", type=_positive_decimal)
    p.add_argument("--max-odd", dest="max_odd", type=_positive_int, default=17)
    p.set_defaults(func=cmd_feasibility)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("format", "table"), ("out", None), ("config", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        config = _load_config(args.config)
        text = args.func(args, config)
    except UsageError as exc:
        print(f"theodorus: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"theodorus: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        _write(text, args.out)
    except OSError as exc:
        print(f"theodorus: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
