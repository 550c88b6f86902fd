"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class AdlvError(ValueError):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 4


class InvalidInput(AdlvError):
    exit_code = 4


class NotSuperbasic(InvalidInput):
    """gcd(m, h) != 1, so no superbasic class with this datum exists."""


class KappaMismatch(AdlvError):
    exit_code = 2


class MazurFailure(AdlvError):
    exit_code = 3


class InternalDisagreement(AdlvError):
    """Two independent computations that must agree did not."""

    exit_code = 5
