"""Command-line interface: validate corpora, analyze them, generate
synthetic data, and render overlap charts.

Exit codes: 0 success, 1 domain or validation error, 2 I/O error. A nonzero
exit never leaves partially written report files behind: everything is
computed first and each file lands via write-to-temp-then-rename.
"""

from __future__ import annotations

import argparse
import csv
import sys
from fractions import Fraction
from pathlib import Path

from .corpus import cell_members, load_corpus_dir, write_corpus
from .errors import ConfigError, CorpusValidationError, HiciteError
from .selection import TIE_MODES, parse_levels
from .stability import (
    METRICS,
    consecutive_overlap,
    convergence_summary,
    group_sequence,
    normalize_metric,
    peak_year_report,
    size_series,
)
from .svg import line_chart
from .synth import CONFIG_FILE, PRESET_NAMES, generate_corpus, load_config, preset, save_config, with_seed
from .util import csv_text, decimal_str, exact_str, write_text_atomic
from .windows import max_window_length

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_IO = 2

DEFAULT_LEVELS_SPEC = "p500,p100,css-remarkably,css-outstandingly"
DEFAULT_THRESHOLD_BP = 8000
DEFAULT_METRIC = "fwd"

GROUPS_HEADER = ("cell", "method", "level", "window", "threshold_exact", "reference_size", "member_id")
CURVES_HEADER = (
    "cell", "method", "level", "window_a", "window_b", "size_a", "size_b", "intersection",
    "jaccard", "overlap_fwd", "overlap_bwd", "jaccard_exact", "fwd_exact", "bwd_exact",
)
SIZES_HEADER = ("cell", "method", "level", "window", "size", "reference_size", "share", "share_exact")
PEAKS_HEADER = ("cell", "method", "level", "window", "group", "peak_offset")
CONVERGENCE_HEADER = ("cell", "method", "level", "metric", "threshold_bp", "first_window")

GROUPS_FILE = "groups.csv"
CURVES_FILE = "overlap_curves.csv"
SIZES_FILE = "size_series.csv"
PEAKS_FILE = "peak_years.csv"
CONVERGENCE_FILE = "convergence.csv"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hicite",
        description="Identify highly cited publication groups and measure their stability across citation windows.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check a corpus directory and print its cell inventory")
    p_validate.add_argument("corpus_dir", type=Path)
    p_validate.set_defaults(func=_cmd_validate)

    p_analyze = sub.add_parser("analyze", help="sweep windows and write the report CSVs")
    p_analyze.add_argument("--corpus", type=Path, required=True, help="corpus directory")
    p_analyze.add_argument("--levels", default=DEFAULT_LEVELS_SPEC,
                           help="comma-separated levels, e.g. p500,p100,css-remarkably,css-outstandingly")
    p_analyze.add_argument("--windows", required=True, help="window length range, e.g. 1..8")
    p_analyze.add_argument("--cells", default="all", help="'all' or a comma-separated list of cell keys")
    p_analyze.add_argument("--tie-mode", choices=("inclusive", "exact-size"), default="inclusive")
    p_analyze.add_argument("--metric", default=DEFAULT_METRIC,
                           help="overlap metric for the printed summary: jaccard, fwd, or bwd")
    p_analyze.add_argument("--threshold-bp", type=int, default=DEFAULT_THRESHOLD_BP,
                           help="convergence threshold in basis points (default 8000 = 80%%)")
    p_analyze.add_argument("--out", type=Path, required=True, help="output directory for report CSVs")
    p_analyze.set_defaults(func=_cmd_analyze)

    p_synth = sub.add_parser("synth", help="generate a synthetic corpus")
    source = p_synth.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", type=Path, help="synthesis config JSON file")
    source.add_argument("--preset", choices=PRESET_NAMES, help="named preset instead of a config file")
    p_synth.add_argument("--divisor", type=int, default=1, help="integer scale-down factor for presets")
    p_synth.add_argument("--seed", type=int, help="override the config seed")
    p_synth.add_argument("--out", type=Path, required=True, help="output directory for corpus CSVs")
    p_synth.set_defaults(func=_cmd_synth)

    p_report = sub.add_parser("report", help="render an overlap-curves CSV as an SVG line chart")
    p_report.add_argument("--curves", type=Path, required=True, help="overlap_curves.csv from analyze")
    p_report.add_argument("--metric", default="overlap_fwd", help="jaccard, overlap_fwd, or overlap_bwd")
    p_report.add_argument("--svg", type=Path, required=True, help="output SVG path")
    p_report.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CorpusValidationError as err:
        for violation in err.violations:
            print(f"error: {violation}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConfigError as err:
        for problem in err.problems:
            print(f"error: {problem}", file=sys.stderr)
        return EXIT_DOMAIN
    except (HiciteError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO


def _cmd_validate(args) -> int:
    corpus = load_corpus_dir(args.corpus_dir)
    print(
        f"corpus OK: {len(corpus.cell_index)} cells, {len(corpus.publications)} publications,"
        f" {len(corpus.journals)} journals, {len(corpus.events)} citation events,"
        f" horizon {corpus.horizon_year}"
    )
    for cell in sorted(corpus.cell_index):
        print(f"  cell {cell!r}: {len(corpus.cell_index[cell])} publications")
    return EXIT_OK


def _parse_window_range(text: str) -> tuple[int, int]:
    head, sep, tail = text.partition("..")
    try:
        if sep:
            low, high = int(head), int(tail)
        else:
            low = high = int(head)
    except ValueError:
        raise ValueError(f"cannot parse window range {text!r} (expected A..B)") from None
    if low < 1 or high < low:
        raise ValueError(f"window range {text!r} must satisfy 1 <= A <= B")
    return low, high


def _cmd_analyze(args) -> int:
    corpus = load_corpus_dir(args.corpus)

    levels = parse_levels(args.levels)
    if not levels:
        raise ValueError("no selection levels given")
    low, high = _parse_window_range(args.windows)
    metric = normalize_metric(args.metric)
    if not 1 <= args.threshold_bp <= 10000:
        raise ValueError(f"--threshold-bp must be in [1, 10000], got {args.threshold_bp}")
    threshold = Fraction(args.threshold_bp, 10000)
    tie_mode = args.tie_mode.replace("-", "_")
    assert tie_mode in TIE_MODES

    if args.cells == "all":
        requested = sorted(corpus.cell_index)
        explicit = False
    else:
        requested = [c for c in args.cells.split(",") if c]
        explicit = True
        unknown = [c for c in requested if c not in corpus.cell_index]
        if unknown:
            raise ValueError(f"unknown cell {unknown[0]!r}")

    cells = []
    for cell in requested:
        if not corpus.cell_index[cell]:
            if explicit:
                raise ValueError(f"cell {cell!r} has no publications")
            print(f"note: skipping empty cell {cell!r}", file=sys.stderr)
            continue
        limit = max_window_length(corpus, cell)
        if high > limit:
            raise ValueError(
                f"window range {low}..{high} exceeds horizon year {corpus.horizon_year}:"
                f" cell {cell!r} supports lengths 1..{limit}"
            )
        cells.append(cell)
    if not cells:
        raise ValueError("no non-empty cells to analyze")

    group_rows, curve_rows, size_rows, peak_rows, convergence_rows = [], [], [], [], []
    summary_lines = []
    for cell in cells:
        members = cell_members(corpus, cell)
        for level in levels:
            groups = group_sequence(corpus, cell, level, range(low, high + 1), tie_mode=tie_mode)
            for group in groups:
                for pid in sorted(group.members):
                    group_rows.append((
                        cell, level.method, level.label, group.window,
                        exact_str(group.effective_threshold), group.reference_set_size, pid,
                    ))
            for point in size_series(groups).points:
                size_rows.append((
                    cell, level.method, level.label, point.window, point.size,
                    point.reference_set_size, decimal_str(point.share), exact_str(point.share),
                ))
            for group in groups:
                remainder = members - group.members
                if group.members and remainder:
                    in_group, rest = peak_year_report(corpus, group.members, remainder)
                    peak_rows.append((cell, level.method, level.label, group.window, "highly_cited", in_group.peak_offset))
                    peak_rows.append((cell, level.method, level.label, group.window, "remainder", rest.peak_offset))
            if len(groups) >= 2:
                curve = consecutive_overlap(groups)
                for point in curve.points:
                    curve_rows.append((
                        cell, level.method, level.label, point.window_a, point.window_b,
                        point.size_a, point.size_b, point.intersection,
                        decimal_str(point.jaccard), decimal_str(point.overlap_fwd), decimal_str(point.overlap_bwd),
                        exact_str(point.jaccard), exact_str(point.overlap_fwd), exact_str(point.overlap_bwd),
                    ))
                for name in METRICS:
                    summary = convergence_summary(curve, name, threshold)
                    first = summary.first_window_at_threshold
                    convergence_rows.append((
                        cell, level.method, level.label, name, args.threshold_bp,
                        "" if first is None else first,
                    ))
                    if name == metric:
                        shown = "never" if first is None else first
                        summary_lines.append(
                            f"cell {cell!r} level {level.label}: first window with {name} >= "
                            f"{decimal_str(threshold, 2)}: {shown}"
                        )

    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)
    write_text_atomic(out / GROUPS_FILE, csv_text(GROUPS_HEADER, group_rows))
    write_text_atomic(out / CURVES_FILE, csv_text(CURVES_HEADER, curve_rows))
    write_text_atomic(out / SIZES_FILE, csv_text(SIZES_HEADER, size_rows))
    write_text_atomic(out / PEAKS_FILE, csv_text(PEAKS_HEADER, peak_rows))
    write_text_atomic(out / CONVERGENCE_FILE, csv_text(CONVERGENCE_HEADER, convergence_rows))

    for line in summary_lines:
        print(line)
    print(f"wrote {len(cells)} cells x {len(levels)} levels, windows {low}..{high} -> {out}")
    return EXIT_OK


def _cmd_synth(args) -> int:
    if args.config is not None:
        config = load_config(args.config)
    else:
        config = preset(args.preset, divisor=args.divisor)
    if args.seed is not None:
        config = with_seed(config, args.seed)

    corpus = generate_corpus(config)
    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)
    write_corpus(corpus, out)
    save_config(config, out / CONFIG_FILE)
    print(
        f"wrote {len(corpus.publications)} publications, {len(corpus.journals)} journals,"
        f" {len(corpus.events)} citation events -> {out}"
    )
    return EXIT_OK


def _cmd_report(args) -> int:
    metric = normalize_metric(args.metric)
    series: dict[str, list[tuple[int, float]]] = {}
    with open(args.curves, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        for row in reader:
            try:
                label = f"{row['cell']} {row['level']}"
                series.setdefault(label, []).append((int(row["window_a"]), float(row[metric])))
            except (KeyError, TypeError, ValueError):
                raise ValueError(f"malformed curves file {args.curves}") from None

    chart = line_chart(
        [(label, sorted(points)) for label, points in sorted(series.items())],
        title=f"Consecutive-window overlap ({metric})",
        x_label="citation window length (years)",
        y_label=metric,
    )
    args.svg.parent.mkdir(parents=True, exist_ok=True)
    write_text_atomic(args.svg, chart)
    print(f"wrote {args.svg}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
