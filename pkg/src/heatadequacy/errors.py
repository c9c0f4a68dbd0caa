"""Exception hierarchy shared by all modules."""


class AdequacyError(Exception):
    """Base class for every error raised by this package."""


class EmptyData(AdequacyError, ValueError):
    pass


class InvalidValue(AdequacyError, ValueError):
    pass


class InvalidDistribution(AdequacyError, ValueError):
    pass


class GridMismatch(AdequacyError, ValueError):
    pass


class InvalidProbability(AdequacyError, ValueError):
    pass


class EmptyFleet(AdequacyError, ValueError):
    pass


class InvalidSeries(AdequacyError, ValueError):
    pass


class NotApplicable(AdequacyError, ValueError):
    pass


class InvalidParams(AdequacyError, ValueError):
    pass


class AlignmentError(AdequacyError, ValueError):
    pass


class DegenerateRegressor(AdequacyError, ValueError):
    pass


class MissingTechnology(AdequacyError, KeyError):
    pass


class DataCoverageError(AdequacyError):
    """A required time window is not covered by the input data."""


class SchemaError(AdequacyError):
    """An input file violates its CSV schema.

    Carries the file path, 1-based line number and column name when known so
    the CLI can print a precise diagnostic.
    """

    def __init__(self, message, path=None, line=None, column=None):
        self.path = path
        self.line = line
        self.column = column
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column '{column}'")
        prefix = ":".join(where[:1]) + (", " + ", ".join(where[1:]) if len(where) > 1 else "")
        super().__init__(f"{prefix}: {message}" if prefix else message)


class ConfigError(AdequacyError):
    pass
