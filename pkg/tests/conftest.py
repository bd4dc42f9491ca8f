"""Shared fixtures: the six named quadratic irrationals used across the suite."""

from fractions import Fraction

import pytest
from mpmath import mp

from growthcap import PHI, PSI, Surd

# golden ratio, sqrt(2)-1, sqrt(3)-1, sqrt(7)-1, silver ratio, (11+sqrt(221))/10
NAMED_X = {
    "phi": PHI,
    "sqrt2m1": Surd(-1, 1, 1, 2),
    "sqrt3m1": Surd(-1, 1, 1, 3),
    "sqrt7m1": Surd(-1, 1, 1, 7),
    "psi": PSI,
    "x221": Surd(11, 1, 10, 221),
}


@pytest.fixture(autouse=True)
def _default_precision():
    old = mp.prec
    mp.prec = 192
    yield
    mp.prec = old


@pytest.fixture
def named_x():
    return dict(NAMED_X)


def rand_fraction(rng, max_num=10**6, max_den=997):
    return Fraction(rng.randint(1, max_num), rng.randint(1, max_den))
