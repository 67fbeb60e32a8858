"""Finite presentations, concrete groups and chirality checks for rank-3 polytopes."""

from __future__ import annotations

__version__ = "0.1.0"
