"""Sparse matrix formats, partitioned SpMV and a streaming cost model."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
