"""Exception hierarchy.  Every class carries the ``kind`` string reported by the CLI."""


class FreeRingError(Exception):
    kind = "DomainError"

    def __init__(self, detail: str = "", kind: str | None = None):
        super().__init__(detail)
        if kind is not None:
            self.kind = kind


class InvalidLetter(FreeRingError, ValueError):
    kind = "InvalidLetter"


class RankMismatch(FreeRingError, ValueError):
    kind = "RankMismatch"


class PreconditionError(FreeRingError, ValueError):
    kind = "PreconditionViolation"


class NotInKP(FreeRingError, ValueError):
    kind = "NotInKP"


class IndeterminateDivision(FreeRingError):
    """The division budget ran out before divisibility was settled."""

    kind = "Indeterminate"


class DecodeError(FreeRingError):
    kind = "NoCandidate"


class AmbiguityError(FreeRingError):
    kind = "AmbiguousCandidate"


class ParseError(FreeRingError, ValueError):
    kind = "SyntaxError"

    def __init__(self, detail: str, position: int | None = None, kind: str | None = None):
        super().__init__(detail if position is None else f"{detail} at position {position}", kind)
        self.position = position
