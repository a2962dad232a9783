"""Exception taxonomy for the bargmann package."""


class BargmannError(Exception):
    """Base class for all library errors."""


class InvalidWordError(BargmannError, ValueError):
    """A word is empty or contains a non-positive or non-integer letter."""


class InvalidScenarioError(BargmannError, ValueError):
    """A scenario violates a structural requirement (empty, self-loop, ...)."""


class UnknownLetterError(BargmannError, LookupError):
    """A word refers to a letter the realization or gram matrix lacks."""


class InvalidRealizationError(BargmannError, ValueError):
    """An operator family is not a valid realization (PSD, shape, dimension)."""


class NotRealizableError(BargmannError, ValueError):
    """A gram matrix admits no state tuple (fails positive semidefiniteness)."""


class InvalidDistributionError(BargmannError, ValueError):
    """A probability table has negative entries or does not sum to one."""


class DomainError(BargmannError, ValueError):
    """A scalar parameter lies outside its documented domain."""


class ResourceLimitError(BargmannError, RuntimeError):
    """An enumeration would exceed a configured size gate."""
