"""Exception hierarchy for the inertia package.

Everything raised on purpose derives from :class:`InertiaError`, split into
data problems (bad files, gaps, missing coverage), statistics preconditions,
and model preconditions. The CLI maps :class:`ConfigError` to exit code 2 and
every other :class:`InertiaError` to exit code 1.
"""


class InertiaError(Exception):
    """Base class for all errors raised by this package."""


# ---------------------------------------------------------------------------
# data loading / validation


class DataError(InertiaError):
    """A problem with input data files or panel coverage."""


class MissingFileError(DataError):
    pass


class MalformedHeaderError(DataError):
    pass


class UnparsableRowError(DataError):
    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class RaggedRowError(DataError):
    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class DuplicateObservationError(DataError):
    def __init__(self, country, year):
        super().__init__(f"duplicate observation for {country} in {year}")
        self.country = country
        self.year = year


class EmptyDatasetError(DataError):
    pass


class GapInSegmentError(DataError):
    def __init__(self, country, year):
        super().__init__(f"{country}: segment has no observation for {year}")
        self.country = country
        self.year = year


class SegmentNotCoveredError(DataError):
    def __init__(self, country, message=""):
        super().__init__(f"{country}: {message}" if message else country)
        self.country = country


# ---------------------------------------------------------------------------
# statistics kernels


class StatsError(InertiaError):
    """A statistics routine was called outside its domain."""


class LengthMismatchError(StatsError):
    pass


class TooFewPointsError(StatsError):
    pass


class ZeroVarianceError(StatsError):
    """All values equal where variation is required (regressor or sample)."""


class NonFiniteInputError(StatsError):
    pass


class InvalidDfError(StatsError):
    pass


class OutOfDomainError(StatsError):
    pass


class SampleTooSmallError(StatsError):
    pass


class SampleTooLargeError(StatsError):
    pass


class NonPositiveBinWidthError(StatsError):
    pass


# ---------------------------------------------------------------------------
# forward model


class ModelError(InertiaError):
    """Invalid model parameters or simulation state."""


class NonPositiveLevelError(ModelError):
    pass


class YearBeforeStartError(ModelError):
    pass


class CohortNotCoveredError(ModelError):
    pass


# ---------------------------------------------------------------------------
# reporting / CLI


class EmptyInputError(InertiaError):
    """A renderer was asked to draw nothing."""


class ConfigError(InertiaError):
    """Bad run configuration (CLI exit code 2)."""
