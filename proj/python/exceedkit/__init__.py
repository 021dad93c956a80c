"""Incomparable set families and exceeding sequences over small ground sets.

Subsets of [k] are integer bitmasks: element i corresponds to bit i-1.
All heavy lifting happens in the compiled core; see the CLI (`exceedkit`)
for the file-based workflow.
"""

from exceedkit._core import *  # noqa: F401,F403
from exceedkit._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
