"""Exception hierarchy shared by every module."""


class CoverDecompError(Exception):
    pass


class AngleTooLarge(CoverDecompError):
    pass


class DuplicatePoints(CoverDecompError):
    pass


class InvalidPolygon(CoverDecompError):
    pass


class NotBoundaryPoint(CoverDecompError):
    pass


class TooFewPoints(CoverDecompError):
    pass


class DegenerateSweep(CoverDecompError):
    pass


class WrongType(CoverDecompError):
    pass


class SpecialPairPresent(CoverDecompError):
    def __init__(self, i, j, message=None):
        self.indices = (i, j)
        super().__init__(message or f"wedges {i} and {j} form a Special pair")


class NotConvex(CoverDecompError):
    pass


class FoldTooSmall(CoverDecompError):
    def __init__(self, required, actual):
        self.required = required
        self.actual = actual
        super().__init__(f"fold {actual} is below the required fold {required}")


class NotSpecialPair(CoverDecompError):
    pass


class NoSpecialPair(CoverDecompError):
    pass


class TooLarge(CoverDecompError):
    pass


class CounterexampleFound(CoverDecompError):
    def __init__(self, coloring):
        self.coloring = coloring
        super().__init__(f"coloring {coloring:#b} has no monochromatic witness")


class VerificationFailed(CoverDecompError):
    def __init__(self, violation):
        self.violation = violation
        super().__init__(f"oracle found a violation: {violation}")
