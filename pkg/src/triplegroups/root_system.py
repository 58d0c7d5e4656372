"""Alias of :mod:`triplegroups.rootsys` under its long name."""

from .rootsys import *  # noqa: F401,F403
