"""Twisted unitary t-groups and the quantum codes they produce."""

from .cyclotomic import Cyclotomic, parse
from .data import GroupBundle, load_bundle, load_bundled, resolve
from .errors import TwistcodeError
from .groups import FiniteMatrixGroup, enumerate_group

__version__ = "0.1.0"

__all__ = [
    "Cyclotomic",
    "FiniteMatrixGroup",
    "GroupBundle",
    "TwistcodeError",
    "enumerate_group",
    "load_bundle",
    "load_bundled",
    "parse",
    "resolve",
]
