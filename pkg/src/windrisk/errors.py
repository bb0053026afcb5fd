"""Exception types raised by the windrisk package.

Every error derives from :class:`WindRiskError` (itself a ``ValueError``) so
callers can catch validation problems with one ``except`` clause; the CLI maps
them to exit code 1.
"""

from __future__ import annotations


class WindRiskError(ValueError):
    """Base class for all data and parameter validation failures."""


class InvalidParameter(WindRiskError):
    pass


# ingest
class MissingColumn(WindRiskError):
    pass


class GapInSeries(WindRiskError):
    def __init__(self, missing):
        self.missing = missing
        super().__init__(f"gap in hourly series: missing timestamp {missing.strftime('%Y-%m-%dT%H:00')}")


class NegativeOrNonFiniteValue(WindRiskError):
    def __init__(self, row, value):
        self.row = row
        self.value = value
        super().__init__(f"row {row}: value {value!r} is negative or non-finite")


class DuplicateTimestamp(WindRiskError):
    def __init__(self, row, timestamp):
        self.row = row
        self.timestamp = timestamp
        super().__init__(f"row {row}: duplicate timestamp {timestamp.strftime('%Y-%m-%dT%H:00')}")


class WrongRowCount(WindRiskError):
    pass


# power model
class NoAdmissibleWind(WindRiskError):
    pass


class LengthMismatch(WindRiskError):
    pass


class AllZeroWeights(WindRiskError):
    pass


# scenario
class InsufficientDays(WindRiskError):
    pass


class NoDeficitAtReference(WindRiskError):
    pass


# hhacf
class ZeroVariance(WindRiskError):
    pass


class AllDaysDegenerate(WindRiskError):
    pass


class EmptyDistribution(WindRiskError):
    pass


# growth fit
class YearMismatch(WindRiskError):
    pass


class ZeroTotal(WindRiskError):
    pass


class NonPositiveValue(WindRiskError):
    pass


class SingularFit(WindRiskError):
    pass


class NoCrossing(WindRiskError):
    pass


# cli
class ConfigError(WindRiskError):
    pass
