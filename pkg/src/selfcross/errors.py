"""Exception types shared across the pipeline."""


class SelfcrossError(Exception):
    pass


class MalformedToken(SelfcrossError, ValueError):
    pass


class OccurrenceError(SelfcrossError, ValueError):
    pass


class OddLength(SelfcrossError, ValueError):
    pass


class LimitExceeded(SelfcrossError):
    pass


class NotRealizable(SelfcrossError):
    """Raised where a sphere realization is required but none exists."""


class InfeasibleSystem(SelfcrossError):
    pass


class NegativeSlack(SelfcrossError, ValueError):
    pass


class MalformedPayload(SelfcrossError, ValueError):
    pass
