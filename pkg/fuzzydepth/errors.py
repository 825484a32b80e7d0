from __future__ import annotations


class FuzzyDepthError(ValueError):
    """Base class for every data or domain error raised by fuzzydepth."""


class OrderingViolation(FuzzyDepthError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class NonFinite(FuzzyDepthError):
    pass


class DomainError(FuzzyDepthError):
    pass


class EnvelopeInverted(FuzzyDepthError):
    pass


class WeightError(FuzzyDepthError):
    pass


class NotOrdered(FuzzyDepthError):
    pass


class SampleTooSmall(FuzzyDepthError):
    pass


class OracleError(FuzzyDepthError):
    pass


class QuadratureError(FuzzyDepthError):
    pass


class NotTrapezoidal(FuzzyDepthError):
    pass


class ConfigError(FuzzyDepthError):
    pass


class ParseError(FuzzyDepthError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class EmptyDataset(FuzzyDepthError):
    pass


class IoError(FuzzyDepthError):
    pass
