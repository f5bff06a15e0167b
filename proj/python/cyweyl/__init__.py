"""Weyl-invariant potentials on compact symmetric spaces of rank one and two."""

from ._cyweyl import *  # noqa: F401,F403
from ._cyweyl import __doc__  # noqa: F401
