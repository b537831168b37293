"""Exception types shared across the package."""
from __future__ import annotations


class ToricGWError(Exception):
    """Base class for all errors raised by this package."""


class FanError(ToricGWError):
    """A fan description is malformed or structurally invalid."""


class InputError(ToricGWError):
    """A request is well-formed JSON but mathematically unusable."""


class DegenerateEvalPointError(ToricGWError):
    """A weight evaluation hit a zero denominator; retry with a fresh point.

    Internal control flow: callers regenerate the evaluation point and
    restart the computation, so user code should never see this.
    """


class ResourceBudgetError(ToricGWError):
    """Graph enumeration exceeded an explicit step or size budget."""


class ConsistencyError(ToricGWError):
    """Two independent evaluations of the same quantity disagreed."""
