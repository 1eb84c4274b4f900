"""Quasi-exactly solvable sectors of anharmonic Bose Hamiltonians.

Coefficients go in as ``Fraction``, ``int``, ``str`` ("p/q", decimals) or
``float`` and come back as ``fractions.Fraction``.
"""

from ._core import *  # noqa: F401,F403
from ._core import ConvergenceError, HamiltonianSpec, InvariantSubspaceViolated, SectorBasis  # noqa: F401

__version__ = "0.1.0"
