"""Exception hierarchy shared across the package.

Every error raised on purpose derives from BuglocError so the CLI can map
failures to stable exit codes.
"""


class BuglocError(Exception):
    """Base class for all package errors."""


class ReportParseError(BuglocError):
    """Report file is not valid JSON or has a malformed field."""


class ReportValidationError(BuglocError):
    """Report is syntactically fine but violates an invariant (e.g. empty title)."""


class ParameterError(BuglocError):
    """A numeric or enum parameter is outside its documented range."""


class GraphError(BuglocError):
    """Graph precondition violated (e.g. PageRank over an empty graph)."""


class ContractError(BuglocError):
    """Two pipeline artifacts that must match do not (e.g. class vs. graph flavor)."""


class CorpusError(BuglocError):
    """Corpus ingest failed: unreadable root or no matching files."""


class IndexFormatError(BuglocError):
    """Index file is corrupt, truncated, or has the wrong format version."""


class QueryError(BuglocError):
    """Query is empty after normalization."""


class GoldsetError(BuglocError):
    """Goldset file is malformed or inconsistent with the evaluation inputs."""
