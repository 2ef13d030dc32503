"""Exception types raised across conelab."""


class ConelabError(Exception):
    pass


class ProjectionError(ConelabError):
    pass


class CenterOnSecant(ProjectionError):
    """The projection center lies on a line through two configuration points."""


class BadScreen(ProjectionError):
    """The screen matrix is not rank 3 with kernel spanned by the center."""


class SingularTransform(ConelabError):
    pass


class DimensionMismatch(ConelabError):
    pass


class NoFormAvailable(ConelabError):
    pass


class ZeroForm(ConelabError):
    pass


class Degenerate(ConelabError):
    """Configuration is planar or too small for the requested analysis."""


class DegenerateParameters(ConelabError):
    pass


class UnknownName(ConelabError, KeyError):
    pass


class ParseError(ConelabError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class DuplicatePoint(ConelabError, ValueError):
    def __init__(self, first: int, second: int):
        self.indices = (first, second)
        super().__init__(f"point {second} repeats point {first}")
