import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import roots_jacobi

from markovcst.errors import DomainError, NumericalError
from markovcst.measures import arcsine_measure, point_mass, wigner_measure
from markovcst.quadrature import (
    DEFAULT_ORDER,
    NEAR_CUT_ORDER,
    integrate,
    jacobi_mass,
    jacobi_rule,
    log_kernel,
    order_for,
)


@pytest.mark.parametrize("a,b", [(0, 0), (-0.5, -0.5), (0.5, 0.5), (1.5, -0.25), (-0.9, 3.0)])
@pytest.mark.parametrize("order", [1, 5, 40])
def test_matches_scipy_rule(a, b, order):
    rule = jacobi_rule(a, b, order)
    x, w = roots_jacobi(order, a, b)
    np.testing.assert_allclose(rule.nodes, x, atol=1e-13)
    np.testing.assert_allclose(rule.weights, w, rtol=1e-11, atol=1e-300)


def test_legendre_and_chebyshev():
    assert integrate(jacobi_rule(0, 0, 8), lambda t: t**2) == pytest.approx(2 / 3, rel=1e-14)
    # Chebyshev first kind: int (1-t^2)^(-1/2) = pi
    assert integrate(jacobi_rule(-0.5, -0.5, 3), np.ones_like) == pytest.approx(math.pi, rel=1e-15)


def test_mass_and_default_order():
    assert jacobi_mass(0.5, 0.5) == pytest.approx(math.pi / 2)
    assert jacobi_rule(0.3, 0.1).order == DEFAULT_ORDER


@settings(max_examples=40, deadline=None)
@given(
    a=st.floats(-0.95, 4.0),
    b=st.floats(-0.95, 4.0),
    k=st.integers(0, 2 * 12 - 1),
)
def test_exact_for_polynomials(a, b, k):
    # degree 2n-1 exactness against the moment recursion of the Jacobi weight
    rule = jacobi_rule(a, b, 12)
    got = integrate(rule, lambda t: (1 + t) ** k)
    # int (1-t)^a (1+t)^(b+k) = 2^(a+b+k+1) B(a+1, b+k+1)
    want = jacobi_mass(a, b + k)
    assert got == pytest.approx(want, rel=1e-11)


def test_interval_mapping():
    # int_0^1 t^(1/2) dt with the weight on the left endpoint
    rule = jacobi_rule(0.0, 0.5, 10)
    assert integrate(rule, np.ones_like, (0.0, 1.0)) == pytest.approx(2 / 3, rel=1e-14)


def test_rules_are_cached_and_frozen():
    r1, r2 = jacobi_rule(0.25, 0.75, 30), jacobi_rule(0.25, 0.75, 30)
    assert r1 is r2
    with pytest.raises(ValueError):
        r1.nodes[0] = 0.0


@pytest.mark.parametrize("a,b,order", [(-1, 0, 4), (0, -1.5, 4), (0, 0, 0)])
def test_bad_rules(a, b, order):
    with pytest.raises(DomainError):
        jacobi_rule(a, b, order)


def test_non_finite_integrand():
    with pytest.raises(NumericalError), np.errstate(divide="ignore"):
        integrate(jacobi_rule(0, 0, 4), lambda t: 1 / (t - t))


def test_order_escalates_near_cut():
    assert order_for(3.0 + 0j, -2, 2) == DEFAULT_ORDER
    assert order_for(2.01 + 0j, -2, 2) == NEAR_CUT_ORDER
    assert order_for(0.5 + 0.01j, -2, 2) == NEAR_CUT_ORDER
    assert order_for(0.5 + 1j, -2, 2) == DEFAULT_ORDER


def test_log_kernel():
    # log-potential of the arcsine law is log G_w-type: exp(-int log(z-x)) = G(z) (Markov pair)
    z = 3.0
    g = (3 - math.sqrt(5)) / 2
    assert np.exp(-log_kernel(z, arcsine_measure())) == pytest.approx(g, rel=1e-13)
    assert log_kernel(5.0, point_mass(2.0)) == pytest.approx(math.log(3.0))
    with pytest.raises(DomainError):
        log_kernel(1.0, wigner_measure())
