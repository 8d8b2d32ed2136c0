#!/usr/bin/env python
# vim: set et ts=8 sts=4 sw=4 ai:

import sys

from .version import __version__

__all__ = [
    "fatal_error",
    "CrownkitError",
    "CapExceeded",
    "EXIT_OK",
    "EXIT_VIOLATION",
    "EXIT_INPUT",
    "EXIT_CAP",
]

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_CAP = 3


class CrownkitError(Exception):
    pass


class CapExceeded(CrownkitError):
    """A size cap from the configuration refused the computation."""

    pass


def fatal_error(msg: str | Exception, code: int = EXIT_VIOLATION):
    print("\nError: {}\n".format(msg), file=sys.stderr)
    sys.exit(code)
