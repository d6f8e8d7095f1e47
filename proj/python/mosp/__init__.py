"""Exact multi-organization scheduling under individual rationality.

Instances are dicts of the form ``{"organizations": [{"machines": m, "jobs": [p, ...]}, ...]}``
and schedules are lists of ``{"org", "job", "machine", "completion"}`` entries, all 1-based.
"""

from ._core import Error, ResourceError, deviation_bound, generate, local_optima, solve, verify

__all__ = ["Error", "ResourceError", "deviation_bound", "generate", "local_optima", "solve", "verify"]
