from __future__ import annotations

import pytest

from liftings.lifting import LiftingProblem
from liftings.parse import parse_hilbert_poly, parse_monomial_ideal, parse_polys

# ideal of the quasi-stable running example (four variables) and of the double point (three)
IPRIME = "x0^2, x0*x1 + x1^2, x0*x2"
DOUBLE_POINT = "x0, x1^2"
FINAL_I = "x2*x0 - {e}*x1^2 - {e}*x1*x0, x0^2, x3*x1^2 + x3*x1*x0, x2*x1^2, x1^3, x1^2*x0, x0*x1*x2"


def polys(text, nvars):
    return parse_polys(text, nvars=nvars)[1]


def mono(text, nvars):
    return parse_monomial_ideal(text, nvars=nvars)


def hp(text):
    return parse_hilbert_poly(text)


@pytest.fixture(scope="session")
def quasi_stable_problem():
    return LiftingProblem(polys(IPRIME, 4), hp("t^2+4*t+1"))


@pytest.fixture(scope="session")
def double_point_problem():
    return LiftingProblem(polys(DOUBLE_POINT, 3), hp("2*t+2"))
