"""Moduli of planar polygons with prescribed exterior angles."""

from ._polymod import *  # noqa: F401,F403
from ._polymod import PolymodError

__all__ = [name for name in dir() if not name.startswith("_")]
