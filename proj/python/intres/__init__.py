"""Interval resolutions of persistence modules over finite posets."""

try:
    from ._intres import *  # noqa: F401,F403
except ImportError:  # build-tree layout: extension lives next to the package dir
    from _intres import *  # noqa: F401,F403
