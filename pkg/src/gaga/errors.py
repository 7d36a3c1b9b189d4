"""Exception types raised across the library."""


class GagaError(Exception):
    """Base class for all library errors."""


class InvalidInput(GagaError):
    pass


class DimensionError(GagaError):
    pass


class InvalidAlpha(GagaError):
    pass


class InvalidSize(GagaError):
    pass


class InvalidCorrelation(GagaError):
    pass


class SingularSystem(GagaError):
    """Cholesky factorization failed; ``pivot`` is the 0-based failing pivot index."""

    def __init__(self, pivot, message=None):
        self.pivot = pivot
        super().__init__(message or f"system not positive definite at pivot {pivot}")


class SingularGram(GagaError):
    """X'X itself is singular; hard truncation needs its inverse diagonal."""


class RankDeficient(GagaError):
    """Design matrix is column rank deficient; ``pivot`` is the offending pivot."""

    def __init__(self, pivot, message=None):
        self.pivot = pivot
        super().__init__(message or f"design rank deficient at pivot {pivot}")
