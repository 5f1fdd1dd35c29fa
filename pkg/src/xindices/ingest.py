"""Delimited-table ingestion: column mapping, multi-value cells, label cleanup.

Input is UTF-8 CSV or TSV with a header row (RFC-4180 quoting). The field
separator is autodetected from the header line, limited to comma vs tab; a
header containing both raises rather than guessing. Multi-value cells
(keywords, categories, institutions, group) are split on a configurable cell
delimiter, normalised, and deduplicated.

Row numbers in errors are 1-based record numbers counting the header as
record 1, so the first data row is row 2.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

from .corpus import PublicationRecord
from .errors import (
    AmbiguousSeparator,
    BadCitations,
    InvalidConfig,
    MalformedRow,
    MissingColumn,
)
from .numfmt import format_number

#: Number of publications per category below which sample variances are
#: considered unreliable for inverse-variance weighting.
SMALL_SAMPLE_THRESHOLD = 100

_WS_RUN = re.compile(r"\s+")

ROLES = ("id", "citations", "keywords", "categories", "institutions", "group")


@dataclass(frozen=True)
class IngestConfig:
    """Column mapping and cell-splitting options for one input table.

    id and citations columns must be present in the file; the list-valued
    columns are filled with empty lists when their mapped header is absent,
    unless the role is named in required_columns (the CLI adds a role there
    whenever the user remapped it explicitly, so typos fail loudly).
    """

    id_column: str = "id"
    citations_column: str = "citations"
    keywords_column: str = "keywords"
    categories_column: str = "categories"
    institutions_column: str = "institutions"
    group_column: str | None = None
    cell_delimiter: str = ";"
    case_fold: bool = True
    trim: bool = True
    required_columns: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if not self.cell_delimiter:
            raise InvalidConfig("cell delimiter must be non-empty")
        unknown = set(self.required_columns) - set(ROLES)
        if unknown:
            raise InvalidConfig(f"unknown column roles: {sorted(unknown)}")

    def column_for(self, role: str) -> str | None:
        return {
            "id": self.id_column,
            "citations": self.citations_column,
            "keywords": self.keywords_column,
            "categories": self.categories_column,
            "institutions": self.institutions_column,
            "group": self.group_column,
        }[role]


def normalize_label(raw: str, config: IngestConfig | None = None) -> str:
    """Collapse internal whitespace runs to single spaces, trim surrounding
    whitespace when trim is on, and lowercase when case folding is on.
    Idempotent; all-whitespace input becomes empty text (callers drop it)."""
    if config is None:
        config = IngestConfig()
    text = _WS_RUN.sub(" ", raw)
    if config.trim:
        text = text.strip()
    if config.case_fold:
        text = text.lower()
    return text


@dataclass
class TableData:
    """Everything parsed from one table, beyond the records themselves."""

    records: list[PublicationRecord]
    group_values: list[tuple[str, ...]]
    headers: list[str]
    unused_columns: list[str]
    separator: str


def _detect_separator(header_line: str) -> str:
    has_comma = "," in header_line
    has_tab = "\t" in header_line
    if has_comma and has_tab:
        raise AmbiguousSeparator()
    if has_tab:
        return "\t"
    return ","


def _split_cell(cell: str, config: IngestConfig) -> tuple[str, ...]:
    labels = []
    for part in cell.split(config.cell_delimiter):
        label = normalize_label(part, config)
        if label:
            labels.append(label)
    return tuple(labels)


def _parse_citations(cell: str, row: int) -> float:
    text = cell.strip()
    try:
        value = float(text)
    except ValueError:
        raise BadCitations(row, cell) from None
    if not value >= 0 or value == float("inf"):  # rejects negatives and NaN
        raise BadCitations(row, cell)
    return value


def read_table(stream: IO[bytes], config: IngestConfig | None = None) -> TableData:
    """Parse a delimited byte stream into records plus table metadata."""
    if config is None:
        config = IngestConfig()
    text = io.TextIOWrapper(stream, encoding="utf-8", newline="").read()
    header_line = text.split("\n", 1)[0]
    separator = _detect_separator(header_line)
    if config.cell_delimiter == separator:
        raise InvalidConfig("cell delimiter equals the field separator")

    reader = csv.reader(io.StringIO(text, newline=""), delimiter=separator)
    try:
        headers = next(reader)
    except StopIteration:
        raise MalformedRow(1, "input has no header row") from None

    index_of: dict[str, int] = {}
    for role in ROLES:
        column = config.column_for(role)
        if column is not None and column in headers:
            index_of[role] = headers.index(column)
        elif role in ("id", "citations") or role in config.required_columns:
            if column is None:
                raise MissingColumn(role)
            raise MissingColumn(column)
    mapped = {config.column_for(role) for role in index_of}
    unused = [h for h in headers if h not in mapped]

    records: list[PublicationRecord] = []
    group_values: list[tuple[str, ...]] = []
    empty: tuple[str, ...] = ()
    for row_no, cells in enumerate(reader, start=2):
        if not cells:
            continue  # blank line
        if len(cells) != len(headers):
            raise MalformedRow(row_no)
        rec_id = cells[index_of["id"]].strip()
        if not rec_id:
            raise MalformedRow(row_no, "empty id")
        citations = _parse_citations(cells[index_of["citations"]], row_no)
        records.append(
            PublicationRecord(
                id=rec_id,
                citations=citations,
                keywords=_split_cell(cells[index_of["keywords"]], config)
                if "keywords" in index_of
                else empty,
                categories=_split_cell(cells[index_of["categories"]], config)
                if "categories" in index_of
                else empty,
                institutions=_split_cell(cells[index_of["institutions"]], config)
                if "institutions" in index_of
                else empty,
            )
        )
        group_values.append(
            _split_cell(cells[index_of["group"]], config) if "group" in index_of else empty
        )
    return TableData(records, group_values, headers, unused, separator)


def parse_table(stream: IO[bytes], config: IngestConfig | None = None) -> list[PublicationRecord]:
    """Parse a delimited byte stream into publication records, in file order."""
    return read_table(stream, config).records


def records_to_csv(records: Iterable[PublicationRecord]) -> str:
    """Serialise records back to canonical CSV (comma-separated, ";" joined
    multi-value cells). Re-parsing the output with defaults yields equal
    records, provided the labels were already normalised."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["id", "citations", "keywords", "categories", "institutions"])
    for rec in records:
        writer.writerow(
            [
                rec.id,
                format_number(rec.citations),
                ";".join(rec.keywords),
                ";".join(rec.categories),
                ";".join(rec.institutions),
            ]
        )
    return out.getvalue()


@dataclass
class ValidationReport:
    """Outcome of validate_records.

    duplicate_ids are hard errors; the record-level lists are warnings; the
    small-sample category flags are advisory notes for the inverse-variance
    variant, kept separate so a clean small corpus still validates with an
    empty warning list.
    """

    n_records: int = 0
    duplicate_ids: list[str] = field(default_factory=list)
    no_keyword_ids: list[str] = field(default_factory=list)
    no_category_ids: list[str] = field(default_factory=list)
    zero_citation_ids: list[str] = field(default_factory=list)
    category_counts: dict[str, int] = field(default_factory=dict)
    small_sample_categories: list[str] = field(default_factory=list)

    @property
    def errors(self) -> list[str]:
        return [f"duplicate id: {dup}" for dup in self.duplicate_ids]

    @property
    def warnings(self) -> list[str]:
        out = []
        for rec_id in self.no_keyword_ids:
            out.append(f"record {rec_id} has no keywords")
        for rec_id in self.no_category_ids:
            out.append(f"record {rec_id} has no categories")
        for rec_id in self.zero_citation_ids:
            out.append(f"record {rec_id} has zero citations")
        return out

    @property
    def notes(self) -> list[str]:
        return [
            f"category {cat} has {self.category_counts[cat]} publications "
            f"(fewer than {SMALL_SAMPLE_THRESHOLD}): internally estimated variances "
            "are unreliable for the inverse-variance-weighted index"
            for cat in self.small_sample_categories
        ]


def validate_records(records: Sequence[PublicationRecord]) -> ValidationReport:
    """Report-only sanity pass over parsed records; never raises."""
    report = ValidationReport(n_records=len(records))
    seen: set[str] = set()
    flagged: set[str] = set()
    counts: dict[str, int] = {}
    for rec in records:
        if rec.id in seen and rec.id not in flagged:
            report.duplicate_ids.append(rec.id)
            flagged.add(rec.id)
        seen.add(rec.id)
        if not rec.keywords:
            report.no_keyword_ids.append(rec.id)
        if not rec.categories:
            report.no_category_ids.append(rec.id)
        if rec.citations == 0:
            report.zero_citation_ids.append(rec.id)
        for cat in rec.categories:
            counts[cat] = counts.get(cat, 0) + 1
    report.category_counts = {cat: counts[cat] for cat in sorted(counts)}
    report.small_sample_categories = [
        cat for cat in report.category_counts if counts[cat] < SMALL_SAMPLE_THRESHOLD
    ]
    return report
