"""Simulation and control toolkit for magnetically actuated pivot-walking millirobots."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
