"""Stochastic simulator of a shuttle-mediated membrane proton pump.

Everything lives in the compiled extension; this package re-exports it.
"""

from . import _core
from ._core import *  # noqa: F401,F403

__version__ = "1.0.0"
__all__ = [name for name in dir(_core) if not name.startswith("_")]
