"""Robust n-level selling mechanisms: synthesis and worst-case certification."""

from ._rsm import *  # noqa: F401,F403
from ._rsm import __version__  # noqa: F401
