import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from markovcst.errors import ConvergenceError, DomainError
from markovcst.special import (
    cosine_power_integral,
    duplication_check,
    gauss_2f1,
    gauss_2f1_euler,
    pochhammer,
    terminating_3f2,
)
from oracles import quad_cosine_power


@pytest.mark.parametrize(
    "a,n,want",
    [(2.5, 0, 1), (Fraction(1, 2), 2, Fraction(3, 4)), (-3, 5, 0), (1, 5, 120), (Fraction(-1, 2), 3, Fraction(-3, 8))],
)
def test_pochhammer(a, n, want):
    got = pochhammer(a, n)
    assert got == want
    assert type(got) is type(a) or n == 0


def test_pochhammer_negative_index():
    with pytest.raises(DomainError):
        pochhammer(1.0, -1)


def test_gauss_2f1_basic():
    assert gauss_2f1(0.3, 0.7, 1.1, 0) == 1
    assert gauss_2f1(1, 1, 2, 0.5) == pytest.approx(2 * math.log(2), rel=1e-15)
    with pytest.raises(DomainError):
        gauss_2f1(1, 1, 2, 1.0)
    with pytest.raises(DomainError):
        gauss_2f1(1, 1, -2, 0.5)
    with pytest.raises(ConvergenceError):
        gauss_2f1(1, 1, 2, 0.999, max_terms=10)


def test_series_and_euler_paths_agree():
    rng = np.random.default_rng(7)
    for _ in range(50):
        b = rng.uniform(0.2, 3.0)
        c = b + rng.uniform(0.2, 3.0)
        a = rng.uniform(-2.0, 3.0)
        z = 0.8 * rng.uniform() * np.exp(2j * np.pi * rng.uniform())
        assert abs(gauss_2f1(a, b, c, z) - gauss_2f1_euler(a, b, c, z)) < 1e-10 * abs(gauss_2f1(a, b, c, z))


def _ratio_grid():
    r = np.array([0.0, 0.2, 0.4, 0.6, 0.8])
    return [rr * np.exp(1j * t) for rr in r for t in np.linspace(0, 2 * np.pi, 7, endpoint=False)]


@pytest.mark.parametrize("lam", [1.7, 0.8, 3.0])
def test_first_reduction(lam):
    # 2F1(lam, lam+1/2; 2lam+1; z) (sqrt(1-z)+1)^(2 lam) is constant (= 2^(2 lam) at z=0)
    vals = [gauss_2f1(lam, lam + 0.5, 2 * lam + 1, z) * (np.sqrt(1 - z) + 1) ** (2 * lam) for z in _ratio_grid()]
    np.testing.assert_allclose(vals, 4**lam, rtol=1e-9)


@pytest.mark.parametrize("lam", [1.2, 2.0, 3.5])
def test_second_reduction(lam):
    vals = [
        gauss_2f1(lam - 0.5, lam, 2 * lam - 1, z) * np.sqrt(1 - z) * (np.sqrt(1 - z) + 1) ** (2 * (lam - 1))
        for z in _ratio_grid()
    ]
    np.testing.assert_allclose(vals, vals[0], rtol=1e-9)


@pytest.mark.parametrize(
    "n,y,want",
    [(0, Fraction(1, 3), 1), (1, Fraction(1, 2), Fraction(3, 8)), (2, Fraction(0), Fraction(1, 8))],
)
def test_terminating_3f2_examples(n, y, want):
    assert terminating_3f2(n, y) == want


def test_terminating_3f2_float_and_exact_agree():
    for n in range(8):
        exact = terminating_3f2(n, Fraction(2, 7))
        assert float(exact) == pytest.approx(terminating_3f2(n, 2 / 7), rel=1e-14)
    assert terminating_3f2(6, Fraction(1, 5)) == terminating_3f2(6, Fraction(1, 5))


def test_terminating_3f2_pole():
    with pytest.raises(DomainError):
        terminating_3f2(3, Fraction(3))


def test_cosine_power_examples():
    assert cosine_power_integral(1, 1) == pytest.approx(math.pi / 2)
    assert cosine_power_integral(2, 1) == pytest.approx(math.pi / 4)
    assert cosine_power_integral(1.5, 1.5) == pytest.approx(quad_cosine_power(1.5, 1.5), rel=1e-12)
    assert cosine_power_integral(3, -1) == 0.0
    with pytest.raises(DomainError):
        cosine_power_integral(0.5, 0.5)


def test_cosine_power_random():
    rng = np.random.default_rng(11)
    for _ in range(20):
        s = rng.uniform(1.2, 6.0)
        d = rng.uniform(-3.0, 3.0)
        p, q = (s + d) / 2, (s - d) / 2
        assert cosine_power_integral(p, q) == pytest.approx(quad_cosine_power(p, q), rel=1e-10, abs=1e-12)


def test_cosine_power_large_arguments():
    # log-Gamma branch against the direct product
    assert cosine_power_integral(160.0, 150.0) == pytest.approx(quad_cosine_power(160.0, 150.0), rel=1e-9, abs=1e-300)


@pytest.mark.parametrize("k,y", [(0, 1.0), (1, 0.0), (3, 0.5)])
def test_duplication_examples(k, y):
    lhs, rhs = duplication_check(k, y)
    assert lhs == pytest.approx(rhs, rel=1e-13)
    if (k, y) == (1, 0.0):
        assert lhs == pytest.approx(6 * math.sqrt(math.pi), rel=1e-14)


@settings(max_examples=60, deadline=None)
@given(k=st.integers(0, 10), y=st.floats(0.0, 1.0))
def test_duplication_property(k, y):
    lhs, rhs = duplication_check(k, y)
    assert abs(lhs - rhs) <= 1e-13 * abs(rhs)


def test_duplication_pole():
    with pytest.raises(DomainError):
        duplication_check(0, 3.0)
