"""Percolation thresholds and sequential attack detection."""

from ._core import *  # noqa: F401,F403
from ._core import NumericalError, run_command

__version__ = "0.1.0"
