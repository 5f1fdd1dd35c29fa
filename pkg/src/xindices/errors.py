"""Exception types raised across the toolkit.

Input-side failures (parsing, record validation) derive from IngestError or
CorpusError; failures inside an index computation derive from ComputeError.
The CLI maps the former to exit code 1 and the latter to exit code 2.
"""

from __future__ import annotations


class XIndicesError(Exception):
    """Base class for all toolkit errors."""


class IngestError(XIndicesError):
    """A delimited input file (records or reference stats) could not be read."""


class MissingColumn(IngestError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"required column {name!r} not found in header")


class BadCitations(IngestError):
    """Citation cell is non-numeric, negative, or not finite. Row is 1-based
    and counts the header as row 1."""

    def __init__(self, row: int, text: str):
        self.row = row
        self.text = text
        super().__init__(f"row {row}: bad citation count {text!r}")


class MalformedRow(IngestError):
    def __init__(self, row: int, reason: str = "column count does not match header"):
        self.row = row
        super().__init__(f"row {row}: {reason}")


class AmbiguousSeparator(IngestError):
    def __init__(self) -> None:
        super().__init__(
            "header line contains both commas and tabs; "
            "cannot autodetect the field separator"
        )


class InvalidConfig(IngestError):
    pass


class BadStatsRow(IngestError):
    def __init__(self, row: int, reason: str = "malformed number"):
        self.row = row
        super().__init__(f"stats row {row}: {reason}")


class CorpusError(XIndicesError):
    """Record set violates a corpus invariant."""


class DuplicateId(CorpusError):
    def __init__(self, id: str):
        self.id = id
        super().__init__(f"duplicate publication id {id!r}")


class NegativeCitations(CorpusError):
    def __init__(self, id: str):
        self.id = id
        super().__init__(f"publication {id!r} has a negative citation count")


class MissingGroupLabel(CorpusError):
    def __init__(self, id: str):
        self.id = id
        super().__init__(f"publication {id!r} carries no group label")


class ComputeError(XIndicesError):
    """An index computation cannot proceed with the supplied inputs."""


class MissingStats(ComputeError):
    def __init__(self, category: str | None = None):
        self.category = category
        if category is None:
            super().__init__("no reference statistics supplied")
        else:
            super().__init__(f"no reference statistics for category {category!r}")


class NonPositiveMean(ComputeError):
    def __init__(self, category: str):
        self.category = category
        super().__init__(f"category {category!r} has a non-positive mean citation count")


class ZeroOrMissingVariance(ComputeError):
    def __init__(self, category: str):
        self.category = category
        super().__init__(
            f"category {category!r} has zero or undefined citation variance "
            "(supply a variance floor to override)"
        )


class RankBasisUnsupported(ComputeError):
    def __init__(self) -> None:
        super().__init__(
            "raw rank basis defines no g-type rule; use ratio_type='h' "
            "or rank_basis='weighted'"
        )
