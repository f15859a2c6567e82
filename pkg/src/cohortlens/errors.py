"""Exception hierarchy shared across the toolkit.

Every error carries a stable machine-readable ``name`` so the CLI and the
HTTP API can report the same identifier.
"""


class CohortLensError(Exception):
    name = "error"


class ZeroPopulation(CohortLensError):
    """A selection matched no graduates; callers decide whether to skip."""

    name = "zero_population"


class EmptyCohort(CohortLensError):
    """The reference group has zero degrees overall, so a cohort share is undefined."""

    name = "empty_cohort"


class SchemeMismatch(CohortLensError):
    """A record or row carries labels outside the active category scheme."""

    name = "scheme_mismatch"


class CategoryMismatch(CohortLensError):
    """Two distributions are defined over structurally different category sets."""

    name = "category_mismatch"


class DegenerateK(CohortLensError):
    """Equitability needs k >= 2 (ln 1 = 0 would divide by zero)."""

    name = "degenerate_k"


class UnknownGroup(CohortLensError):
    name = "unknown_group"


class UnknownInstitution(CohortLensError):
    name = "unknown_institution"


class EmptyRange(CohortLensError):
    name = "empty_range"


class MissingColumn(CohortLensError):
    name = "missing_column"


class NegativeCount(CohortLensError):
    name = "negative_count"


class MalformedRow(CohortLensError):
    name = "malformed_row"


class EmptyPayload(CohortLensError):
    name = "empty_payload"
