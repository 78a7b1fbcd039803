"""Exception hierarchy shared by all dnacodex modules."""

from __future__ import annotations


class DnaCodexError(Exception):
    """Base class for every error raised by this package."""


class InvalidSymbol(DnaCodexError, ValueError):
    def __init__(self, position: int, symbol: str) -> None:
        # 1-based position, matching how sequences are usually read
        self.position = position
        self.symbol = symbol
        super().__init__(f"invalid symbol {symbol!r} at position {position}")


class EmptyInput(DnaCodexError, ValueError):
    def __init__(self) -> None:
        super().__init__("empty sequence")


class LengthMismatch(DnaCodexError, ValueError):
    def __init__(self, expected: int, got: int) -> None:
        self.expected = expected
        self.got = got
        super().__init__(f"length mismatch: expected {expected}, got {got}")


class InvalidParams(DnaCodexError, ValueError):
    pass


class Exhausted(DnaCodexError, RuntimeError):
    """Rejection sampling gave up; the admissible set is empty or tiny."""

    def __init__(self, n: int, d: int, w: int, attempts: int) -> None:
        self.params = (n, d, w)
        self.attempts = attempts
        super().__init__(
            f"no admissible sequence for (n,d,w)=({n},{d},{w}) after {attempts} attempts"
        )


# the search engine surfaces sampler exhaustion under this name
SamplerExhausted = Exhausted


class TooLarge(DnaCodexError, ValueError):
    def __init__(self, vertex_count: int, limit: int) -> None:
        self.vertex_count = vertex_count
        self.limit = limit
        super().__init__(f"graph would have {vertex_count} vertices (limit {limit})")


class ParseError(DnaCodexError, ValueError):
    def __init__(self, line: int, message: str) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}")


class MissingHeader(ParseError):
    def __init__(self, line: int) -> None:
        super().__init__(line, "edge or vertex data before 'p edge' header")


class IndexOutOfRange(DnaCodexError, IndexError):
    pass
