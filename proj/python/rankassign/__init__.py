"""Ranked assignment engine: exact k-best solver, Gibbs sampler, graph export,
greedy post-processing and ranking metrics."""

from ._core import *  # noqa: F401,F403
from ._core import RankAssignError  # noqa: F401

__version__ = "0.1.0"
