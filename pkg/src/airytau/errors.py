"""Exception hierarchy shared by all modules.

Every error that can surface through the CLI carries an ``exit_code`` so the
command layer can map failures to the stable exit-code contract:
0 success, 2 invalid input, 3 insufficient cutoff/window, 4 internal
cross-check failure.
"""

from __future__ import annotations


class AirytauError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class InvalidKeyError(AirytauError):
    """A correlator key or user input violates the selection rule or syntax."""

    exit_code = 2


class InsufficientCutoffError(AirytauError):
    """A requested value lies outside the reach of the supplied cutoffs."""

    exit_code = 3


class WindowError(InsufficientCutoffError):
    """A coefficient was requested outside a series' reliable window."""


class CrossCheckError(AirytauError):
    """Two independent computation routes disagreed (internal invariant)."""

    exit_code = 4
