"""Exception hierarchy. Each CLI-visible error carries its own exit code."""


class GMTError(Exception):
    exit_code = 1


class ConfigError(GMTError, ValueError):
    exit_code = 2


class LimitExceeded(GMTError):
    exit_code = 3

    def __init__(self, message, radius_reached=None, partial=None):
        super().__init__(message)
        self.radius_reached = radius_reached
        self.partial = partial


class SingularMatrix(GMTError, ValueError):
    exit_code = 4


class NotGenerating(GMTError):
    exit_code = 5


class NotGeneratingWarning(UserWarning):
    pass


class BetaWarning(UserWarning):
    pass


class BudgetExceeded(LimitExceeded):
    pass


class BadGeneratorIndex(GMTError, ValueError):
    exit_code = 2


class InvalidElement(GMTError, ValueError):
    exit_code = 6


class NotInBall(GMTError, KeyError):
    exit_code = 6


class NotElliptic(GMTError, ValueError):
    exit_code = 6


class UnknownPredicate(GMTError, ValueError):
    exit_code = 2


class NotExponential(GMTError, ValueError):
    exit_code = 7


class SearchExhausted(GMTError):
    exit_code = 8


class DistinctnessFailed(GMTError):
    exit_code = 8


class CacheError(GMTError):
    exit_code = 9


class VersionMismatch(CacheError):
    pass


class HeaderMismatch(CacheError):
    pass


class CorruptRecord(CacheError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index
