"""Shared fixtures: the two shipped forms with tables built up front.

Coefficient tables are extended once per session (extension is the only
mutating operation on a form); evaluators are shared so cached central
values are reused across tests.
"""

import pytest

import addtwist as at

DELTA_TABLE = 110_000
E11_TABLE = 110_000


@pytest.fixture(scope="session")
def delta():
    return at.delta_coefficients(DELTA_TABLE)


@pytest.fixture(scope="session")
def e11():
    form = at.newform_from_curve(at.CURVE_11A, E11_TABLE)
    at.fricke_eigenvalue(form)
    return form


@pytest.fixture(scope="session")
def delta_ev(delta):
    return at.TwistEvaluator(delta, 1e-10)


@pytest.fixture(scope="session")
def e11_ev(e11):
    return at.TwistEvaluator(e11, 1e-10)
