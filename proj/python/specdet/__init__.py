"""Zeta-regularized spectral determinants with an explicit branch cut."""

from fractions import Fraction

from ._specdet import *  # noqa: F401,F403
from ._specdet import SpecdetError, _bernoulli, oracle  # noqa: F401


def bernoulli(upto):
    """Exact Bernoulli numbers B_0 .. B_upto as Fractions (B_1 = -1/2)."""
    return [Fraction(int(p), int(q)) for p, q in _bernoulli(upto)]
