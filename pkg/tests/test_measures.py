import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from markovcst.errors import DomainError, NotAProbabilityMeasure
from markovcst.measures import (
    SmoothFactor,
    SmoothKind,
    SpectralMeasure,
    affine_pushforward,
    family,
    mu_measure,
    nu_density,
    nu_measure,
    raw_mu_measure,
    tau_measure,
    wigner_measure,
)
from oracles import mp_stieltjes_density, quad_nu_moment

ADMISSIBLE = [(1, 0.7), (1, 3.0), (2, 1.0), (2, 2.0), (2, 5.0), (3, 0.6), (3, 2.0), (4, 0.8), (4, 7.0)]


def test_family_examples():
    s = family(1, 1.0)
    assert s.beta_exponents == (0.5, 0.5) and s.sigma2 == 1 and s.alpha == 1
    s = family(2, 1.0)
    assert s.beta_exponents == (-0.5, -0.5) and s.alpha == 0
    s = family(3, 1.0)
    assert s.alpha == 0.5 and s.m == 1 and s.sigma2 == 1
    assert family(4, 1.0).m == -1


@pytest.mark.parametrize("fid,lam", [(1, 0.0), (2, 0.5), (3, 0.4), (4, -1.0), (5, 2.0)])
def test_family_domain(fid, lam):
    with pytest.raises(DomainError):
        family(fid, lam)


@settings(max_examples=200, deadline=None)
@given(fid=st.integers(1, 4), lam=st.floats(0.5, 1e4, exclude_min=True))
def test_alpha_plus_gamma(fid, lam):
    s = family(fid, lam)
    assert s.alpha + s.gamma == 1


@pytest.mark.parametrize("fid,lam", [(1, 0.7), (1, 2.5), (2, 1.0), (2, 3.0), (3, 0.75), (3, 2.0), (4, 0.9), (4, 5.0)])
def test_raw_mu_is_standardized(fid, lam):
    mu = raw_mu_measure(family(fid, lam))
    assert mu.total_mass() == pytest.approx(1, abs=1e-13)
    assert mu.expect(lambda x: x) == pytest.approx(0, abs=1e-12)
    assert mu.expect(lambda x: x * x) == pytest.approx(1, rel=1e-12)


def test_raw_family1_support():
    mu = raw_mu_measure(family(1, 1.0))
    assert (mu.support_lo, mu.support_hi) == pytest.approx((-2.0, 2.0))
    back = affine_pushforward(mu, *family(1, 1.0).affine)
    assert (back.jacobi_a, back.jacobi_b) == (0.5, 0.5)


@pytest.mark.parametrize("fid,lam", ADMISSIBLE)
def test_tau_is_probability(fid, lam):
    tau = tau_measure(family(fid, lam))
    assert tau.continuous_mass + tau.atom_mass() == pytest.approx(1, abs=1e-15)
    assert tau.total_mass() == pytest.approx(1, abs=1e-13)


def test_tau_examples():
    tau = tau_measure(family(2, 2.0))
    assert tau.continuous_mass == 0.5 and sorted(tau.atoms) == [(-2.0, 0.25), (2.0, 0.25)]
    tau = tau_measure(family(2, 1.0))
    assert tau.continuous_mass == 0 and tau.total_mass() == 1
    assert tau_measure(family(3, 1.0)).atoms == ((2.0, 0.5),)
    assert tau_measure(family(4, 1.0)).atoms == ((-2.0, 0.5),)
    assert tau_measure(family(1, 4.0)).atoms == ()
    with pytest.raises(NotAProbabilityMeasure):
        tau_measure(family(2, 0.8))
    with pytest.raises(NotAProbabilityMeasure):
        nu_measure(family(2, 0.8))


@pytest.mark.parametrize("fid,lam", ADMISSIBLE)
def test_nu_normalized(fid, lam):
    nu = nu_measure(family(fid, lam))
    assert nu.total_mass() == pytest.approx(1, abs=1e-8)
    # the integral of every unnormalized nu density over [-2, 2] is pi
    if fid > 1:
        assert nu.normalization == pytest.approx(math.pi, rel=1e-12)


@pytest.mark.parametrize("fid,lam", ADMISSIBLE)
def test_nu_density_against_quadpack(fid, lam):
    # independent normalization: QUADPACK on the raw formula
    assert quad_nu_moment(fid, lam, 0, normalize=False) == pytest.approx(
        (2 * math.pi if fid == 1 else nu_measure(family(fid, lam)).normalization), rel=1e-10
    )


def test_nu_density_examples():
    assert nu_density(family(2, 2.0), 0.0) == pytest.approx(4**-0.25 / math.pi, rel=1e-13)
    assert nu_density(family(1, 5.0), 0.0) == pytest.approx(1 / math.pi, rel=1e-14)
    assert nu_density(family(2, 1.0), 0.0) == pytest.approx(1 / (2 * math.pi), rel=1e-13)
    with pytest.raises(DomainError):
        nu_density(family(2, 2.0), 2.0)
    with pytest.raises(DomainError):
        nu_density(family(3, 2.0), -2.5)


@pytest.mark.parametrize("fid,lam", [(3, 0.8), (3, 2.0), (4, 0.8), (4, 2.0), (2, 3.0)])
@pytest.mark.parametrize("x", [-1.7, -0.4, 0.9, 1.8])
def test_nu_density_is_stieltjes_inverse(fid, lam, x):
    assert nu_density(family(fid, lam), x) == pytest.approx(mp_stieltjes_density(fid, lam, x), rel=1e-12)


def test_family4_mirrors_family3():
    for x in np.linspace(-1.9, 1.9, 11):
        assert nu_density(family(4, 1.3), x) == pytest.approx(nu_density(family(3, 1.3), -x), rel=1e-13)


def test_mu_normalized():
    for fid, lam in ADMISSIBLE:
        assert mu_measure(family(fid, lam)).total_mass() == pytest.approx(1, abs=1e-12)


def test_affine_examples():
    w = affine_pushforward(wigner_measure(), 2.0, 0.0)
    assert (w.support_lo, w.support_hi) == (-4.0, 4.0)
    assert w.expect(lambda x: x * x) == pytest.approx(4.0)
    same = affine_pushforward(tau_measure(family(3, 2.0)), 1.0, 0.0)
    assert same == tau_measure(family(3, 2.0))
    with pytest.raises(DomainError):
        affine_pushforward(w, 0.0, 1.0)


@settings(max_examples=50, deadline=None)
@given(s=st.floats(-5, 5).filter(lambda v: abs(v) > 0.1), t=st.floats(-3, 3))
def test_affine_round_trip(s, t):
    m = nu_measure(family(3, 1.5))
    back = affine_pushforward(affine_pushforward(m, s, t), 1 / s, -t / s)
    assert back.support_lo == pytest.approx(m.support_lo, abs=1e-14)
    assert back.support_hi == pytest.approx(m.support_hi, abs=1e-14)
    assert (back.jacobi_a, back.jacobi_b, back.smooth_factor) == (m.jacobi_a, m.jacobi_b, m.smooth_factor)
    assert back.expect(lambda x: x**3) == pytest.approx(m.expect(lambda x: x**3), rel=1e-12, abs=1e-13)


def test_negative_scale_reflects():
    m = nu_measure(family(3, 1.5))
    r = affine_pushforward(m, -1.0, 0.0)
    assert r.expect(lambda x: x) == pytest.approx(-m.expect(lambda x: x), rel=1e-13)
    assert r.density(0.7) == pytest.approx(m.density(-0.7), rel=1e-13)


def test_measure_invariants():
    with pytest.raises(DomainError):
        SpectralMeasure(support_lo=1.0, support_hi=0.0)
    with pytest.raises(DomainError):
        SpectralMeasure(jacobi_a=-1.0)
    with pytest.raises(DomainError):
        SpectralMeasure(atoms=((3.0, 0.5),))
    with pytest.raises(DomainError):
        SpectralMeasure(atoms=((0.0, -0.5),))
    with pytest.raises(DomainError):
        SpectralMeasure(norm_const=0.0)


@pytest.mark.parametrize("kind", list(SmoothKind))
def test_smooth_factor_mirror(kind):
    f = SmoothFactor(kind, 0.4)
    v = np.linspace(-1.9, 1.9, 7)
    np.testing.assert_allclose(f.reflected()(v), f(-v), rtol=1e-14)
