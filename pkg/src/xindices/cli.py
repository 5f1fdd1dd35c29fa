"""Command-line surface: compute, nested, stats, validate.

Exit codes: 0 success, 1 ingest or validation failure, 2 computation
failure (missing stats, unusable variance, unsupported rank basis). Error
messages go to stderr; reports go to stdout or --out.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import IO, Sequence

from . import __version__
from .corpus import build_corpus, partition_by_group
from .errors import MissingStats, XIndicesError
from .indices import (
    ivw_xd_index,
    nested_index,
    x_index,
    xc_index,
    xd_index,
    xdf_index,
    xdfn_index,
    xo_index,
)
from .ingest import SMALL_SAMPLE_THRESHOLD, IngestConfig, TableData, read_table, validate_records
from .report import Report
from .stats import ReferenceStats, estimate_stats, load_reference_stats, write_reference_stats

logger = logging.getLogger("xindices")

INDEX_FUNCTIONS = {
    "x": x_index,
    "xc": xc_index,
    "xd": xd_index,
    "xdf": xdf_index,
}


class _WarningCollector(logging.Handler):
    def __init__(self) -> None:
        super().__init__(level=logging.WARNING)
        self.messages: list[str] = []

    def emit(self, record: logging.LogRecord) -> None:
        self.messages.append(record.getMessage())


def _add_ingest_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, help="input CSV/TSV file, or - for stdin")
    parser.add_argument("--id-col", default=None, help="header of the id column")
    parser.add_argument("--citations-col", default=None, help="header of the citations column")
    parser.add_argument("--keywords-col", default=None, help="header of the keywords column")
    parser.add_argument("--categories-col", default=None, help="header of the categories column")
    parser.add_argument("--institutions-col", default=None, help="header of the institutions column")
    parser.add_argument("--cell-delimiter", default=";", help="separator inside multi-value cells")
    parser.add_argument("--no-case-fold", action="store_true", help="keep label case as-is")
    parser.add_argument("--no-trim", action="store_true", help="keep surrounding whitespace in labels")


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", default="json", choices=["json", "csv", "table"])
    parser.add_argument("--out", default=None, help="write the report to this file instead of stdout")
    parser.add_argument("--jobs", type=int, default=1, help="worker threads for per-group/per-category steps")


def _ingest_config(args: argparse.Namespace, group_col: str | None = None) -> IngestConfig:
    required = set()
    overrides = {}
    for role, value in (
        ("id", args.id_col),
        ("citations", args.citations_col),
        ("keywords", args.keywords_col),
        ("categories", args.categories_col),
        ("institutions", args.institutions_col),
    ):
        if value is not None:
            overrides[f"{role}_column"] = value
            required.add(role)
    if group_col is not None:
        required.add("group")
    return IngestConfig(
        group_column=group_col,
        cell_delimiter=args.cell_delimiter,
        case_fold=not args.no_case_fold,
        trim=not args.no_trim,
        required_columns=frozenset(required),
        **overrides,
    )


def _open_input(path: str) -> IO[bytes]:
    if path == "-":
        return sys.stdin.buffer
    return open(path, "rb")


def _read_input(args: argparse.Namespace, config: IngestConfig) -> TableData:
    stream = _open_input(args.input)
    try:
        return read_table(stream, config)
    finally:
        if stream is not sys.stdin.buffer:
            stream.close()


def _config_echo(args: argparse.Namespace, config: IngestConfig) -> dict:
    return {
        "input": args.input,
        "cell_delimiter": config.cell_delimiter,
        "case_fold": config.case_fold,
        "trim": config.trim,
        "columns": {
            "id": config.id_column,
            "citations": config.citations_column,
            "keywords": config.keywords_column,
            "categories": config.categories_column,
            "institutions": config.institutions_column,
            "group": config.group_column,
        },
    }


def _emit(args: argparse.Namespace, rendered: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(rendered)
    else:
        sys.stdout.write(rendered)


def _resolve_stats(args: argparse.Namespace, ref_stats: ReferenceStats | None, corpus) -> tuple[ReferenceStats, str]:
    if ref_stats is not None:
        return ref_stats, args.ref_stats
    if args.internal_stats:
        return estimate_stats(corpus, args.variance), "internal"
    raise MissingStats()


def cmd_compute(args: argparse.Namespace) -> int:
    collector = _WarningCollector()
    logger.addHandler(collector)
    try:
        config = _ingest_config(args)
        try:
            table = _read_input(args, config)
            corpus = build_corpus(table.records)
            ref_stats = None
            if args.ref_stats:
                with open(args.ref_stats, "rb") as fh:
                    ref_stats = load_reference_stats(fh)
        except (XIndicesError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1

        echo = _config_echo(args, config)
        echo.update({"index": args.index, "ratio_type": args.type, "stats_source": "none"})
        try:
            if args.index in INDEX_FUNCTIONS:
                result = INDEX_FUNCTIONS[args.index](corpus, args.type)
            elif args.index == "xo":
                result = xo_index(corpus, args.type, jobs=args.jobs)
            else:
                stats, source = _resolve_stats(args, ref_stats, corpus)
                echo["stats_source"] = source
                echo["variance_kind"] = args.variance
                strict = not args.lenient_stats
                echo["lenient_stats"] = args.lenient_stats
                if args.index == "xdfn":
                    result = xdfn_index(corpus, args.type, stats, strict=strict)
                else:
                    echo["rank_basis"] = args.rank_basis
                    echo["variance_floor"] = args.variance_floor
                    result = ivw_xd_index(
                        corpus,
                        args.type,
                        stats,
                        rank_basis=args.rank_basis,
                        variance_floor=args.variance_floor,
                        strict=strict,
                    )
        except XIndicesError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2

        report = Report(__version__, "compute", result, echo, collector.messages)
        _emit(args, report.render(args.format))
        return 0
    finally:
        logger.removeHandler(collector)


def cmd_nested(args: argparse.Namespace) -> int:
    if not args.group_col:
        print("error: --group-col is required", file=sys.stderr)
        return 1
    collector = _WarningCollector()
    logger.addHandler(collector)
    try:
        config = _ingest_config(args, group_col=args.group_col)
        try:
            table = _read_input(args, config)
            groups = partition_by_group(table.records, table.group_values, strict=args.strict_groups)
        except (XIndicesError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1

        result = nested_index(groups, inner=args.inner, ratio_type=args.type, jobs=args.jobs)
        echo = _config_echo(args, config)
        echo.update(
            {
                "index": "nested",
                "inner": args.inner,
                "ratio_type": args.type,
                "group_column": args.group_col,
                "strict_groups": args.strict_groups,
            }
        )
        report = Report(__version__, "nested", result, echo, collector.messages)
        _emit(args, report.render(args.format))
        return 0
    finally:
        logger.removeHandler(collector)


def cmd_stats(args: argparse.Namespace) -> int:
    config = _ingest_config(args)
    try:
        table = _read_input(args, config)
        corpus = build_corpus(table.records)
    except (XIndicesError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    stats = estimate_stats(corpus, args.variance)
    for entry in stats.entries():
        if entry.n < SMALL_SAMPLE_THRESHOLD:
            print(
                f"warning: category {entry.category} has {entry.n} publications "
                f"(fewer than {SMALL_SAMPLE_THRESHOLD}); estimated variance may not be "
                "robust for inverse-variance weighting",
                file=sys.stderr,
            )
        if entry.mean <= 0:
            print(
                f"warning: category {entry.category} has mean 0 and cannot be "
                "loaded back as reference stats",
                file=sys.stderr,
            )
    with open(args.out, "wb") as fh:
        write_reference_stats(stats, fh)
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    config = _ingest_config(args)
    try:
        table = _read_input(args, config)
    except (XIndicesError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    report = validate_records(table.records)
    lines = [f"records: {report.n_records}", f"{len(report.errors)} errors"]
    lines.extend(f"error: {msg}" for msg in report.errors)
    lines.append(f"{len(report.warnings)} warnings")
    lines.extend(f"warning: {msg}" for msg in report.warnings)
    lines.extend(f"note: {msg}" for msg in report.notes)
    if table.unused_columns:
        lines.append(f"note: ignored columns: {', '.join(table.unused_columns)}")
    lines.append("category publication counts:")
    lines.extend(f"  {cat}: {count}" for cat, count in report.category_counts.items())
    print("\n".join(lines))
    return 1 if report.errors else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xindex",
        description="Expertise indices (x family) over tabular bibliographic records.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="compute one index over an input table")
    _add_ingest_flags(compute)
    compute.add_argument(
        "--index", required=True, choices=["x", "xc", "xd", "xdf", "xdfn", "ivw", "xo"]
    )
    compute.add_argument("--type", default="h", choices=["h", "g"], help="ratio type")
    compute.add_argument("--ref-stats", default=None, help="reference stats CSV (category,mean,variance,n)")
    compute.add_argument(
        "--internal-stats",
        action="store_true",
        help="estimate reference stats from the input corpus itself",
    )
    compute.add_argument("--variance", default="sample", choices=["sample", "population"])
    compute.add_argument("--rank-basis", default="raw", choices=["raw", "weighted"], help="ivw only")
    compute.add_argument("--variance-floor", type=float, default=None, metavar="EPS")
    compute.add_argument(
        "--lenient-stats",
        action="store_true",
        help="drop categories missing from the reference stats instead of failing",
    )
    _add_output_flags(compute)
    compute.set_defaults(func=cmd_compute)

    nested = sub.add_parser("nested", help="group-level xx / xx_d index")
    _add_ingest_flags(nested)
    nested.add_argument("--group-col", default=None, help="header of the grouping column")
    nested.add_argument("--inner", default="x", choices=["x", "xd"])
    nested.add_argument("--type", default="h", choices=["h", "g"])
    nested.add_argument(
        "--strict-groups",
        action="store_true",
        help="fail on records with no group label instead of using (ungrouped)",
    )
    _add_output_flags(nested)
    nested.set_defaults(func=cmd_nested)

    stats = sub.add_parser("stats", help="estimate and write per-category reference stats")
    _add_ingest_flags(stats)
    stats.add_argument("--out", required=True, help="output stats CSV path")
    stats.add_argument("--variance", default="sample", choices=["sample", "population"])
    stats.set_defaults(func=cmd_stats)

    validate = sub.add_parser("validate", help="sanity-check an input table")
    _add_ingest_flags(validate)
    validate.set_defaults(func=cmd_validate)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
