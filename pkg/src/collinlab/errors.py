"""Exception hierarchy shared by every collinlab module."""


class CollinLabError(ValueError):
    """Base class for all errors raised by collinlab."""


class DimensionMismatch(CollinLabError):
    pass


class RankDeficient(CollinLabError):
    """The design matrix is (numerically) not of full column rank."""


class NotSquare(CollinLabError):
    pass


class NotSymmetric(CollinLabError):
    pass


class ZeroColumn(CollinLabError):
    pass


class ZeroNorm(CollinLabError):
    pass


class TooFewObservations(CollinLabError):
    pass


class PerfectFit(CollinLabError):
    """An auxiliary regression has R^2 = 1, so the VIF is infinite."""


class ConstantColumn(CollinLabError):
    pass


class DegenerateT(CollinLabError):
    """A selected coefficient has t = 0, which makes its replication bound infinite."""

    def __init__(self, message, name=None):
        super().__init__(message)
        self.name = name


class AllTrialsFailed(CollinLabError):
    pass


class MissingColumn(CollinLabError):
    def __init__(self, column):
        super().__init__(f"missing column {column!r}")
        self.column = column


class ParseError(CollinLabError):
    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column


class EmptyFile(CollinLabError):
    pass
