"""Curves on a closed surface of genus at least 2.

Thin wrapper over the C++ core: build curves from words or the Lickorish
family, compute (holonomy, homology, Maslov) classes, run surgeries and twists,
and build Floer complexes.
"""

from ._lagcob import *  # noqa: F401,F403
from ._lagcob import Curve, Surface, build_surface, class_of, run_suite

__all__ = [name for name in dir() if not name.startswith("_")]
