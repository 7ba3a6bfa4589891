"""Monotone fixed-point solver for countable ODE systems in weighted sequence spaces."""

from seqode._seqode import *  # noqa: F401,F403
from seqode._seqode import __version__  # noqa: F401
