"""Cauchy-Stieltjes transforms: closed forms, quadrature, identity checks,
Stieltjes inversion and half-plane diagnostics.

Powers and logarithms are principal throughout.  The closed-form
transforms of the four families are written as
``exp(alpha * Log G + gamma * Log Gtilde)``; since alpha + gamma = 1 this
is analytic off [-2, 2] and behaves like 1/z at infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad

from .errors import ConvergenceError, DomainError
from .measures import FamilySpec, SpectralMeasure, mu_measure, nu_measure, tau_measure
from .quadrature import DEFAULT_ORDER, log_kernel, order_for

Transform = Callable[[complex], complex]

STIELTJES_EPS = tuple(0.1 * 2.0**-k for k in range(13))


def _check_off_cut(z, lo: float = -2.0, hi: float = 2.0) -> None:
    z = np.asarray(z, dtype=complex)
    if np.any((z.imag == 0) & (z.real >= lo) & (z.real <= hi)):
        raise DomainError(f"z lies on the cut [{lo}, {hi}]")


def _out(z):
    return complex(z) if np.ndim(z) == 0 else z


def _sqrt_z2m4(z):
    # product of principal roots: the branch of sqrt(z^2 - 4) that is ~ z at infinity
    return np.sqrt(z - 2.0) * np.sqrt(z + 2.0)


def wigner_cst(z):
    """G(z) = 2 / (z + sqrt(z^2 - 4)), the semicircle transform."""
    _check_off_cut(z)
    z = np.asarray(z, dtype=complex)
    return _out(2.0 / (z + _sqrt_z2m4(z)))


def arcsine_cst(z):
    """1 / sqrt(z^2 - 4), the arcsine transform."""
    _check_off_cut(z)
    z = np.asarray(z, dtype=complex)
    return _out(1.0 / _sqrt_z2m4(z))


def gtilde(family_id: int, z):
    """Second factor of the closed-form transform of each family."""
    _check_off_cut(z)
    z = np.asarray(z, dtype=complex)
    if family_id == 1:
        return _out(np.ones_like(z))
    if family_id == 2:
        return _out(1.0 / _sqrt_z2m4(z))
    if family_id == 3:
        return _out(1.0 / (z - 2.0))
    if family_id == 4:
        return _out(1.0 / (z + 2.0))
    raise DomainError(f"family must be 1..4, got {family_id}")


def family_cst(spec: FamilySpec, z):
    """G(z)^alpha * Gtilde(z)^gamma, the transform of nu_lambda."""
    g = np.log(np.asarray(wigner_cst(z), dtype=complex))
    gt = np.log(np.asarray(gtilde(spec.family_id, z), dtype=complex))
    return _out(np.exp(spec.alpha * g + spec.gamma * gt))


def family_transform(spec: FamilySpec) -> Transform:
    return lambda z: family_cst(spec, z)


def cst(measure: SpectralMeasure, z, order: int = DEFAULT_ORDER) -> complex:
    """Integral of 1/(z - x) against ``measure`` (quadrature plus atoms)."""
    z = complex(z)
    if z.imag == 0 and measure.support_lo <= z.real <= measure.support_hi:
        raise DomainError(f"z={z} lies on the support")
    order = order_for(z, measure.support_lo, measure.support_hi, order)
    return complex(measure.expect(lambda x: 1.0 / (z - x), order=order))


def gcst(measure: SpectralMeasure, lam: float, z, order: int = DEFAULT_ORDER) -> complex:
    """Integral of (z - x)^(-lam) = exp(-lam Log(z - x)) against ``measure``."""
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam}")
    z = complex(z)
    order = order_for(z, measure.support_lo, measure.support_hi, order)
    x, _ = measure.continuous_rule(order)
    pts = np.concatenate([x, [loc for loc, _ in measure.atoms]])
    if z.imag == 0 and np.any(z.real - pts <= 0):
        raise DomainError(f"z - x meets the negative real axis for z={z}")
    return complex(measure.expect(lambda t: np.exp(-lam * np.log(z - t)), order=order))


def geometric_mean_cst(G1: Transform, G2: Transform, a: float, z) -> complex:
    """Principal-branch product G1(z)^a G2(z)^(1-a)."""
    if not 0 <= a <= 1:
        raise DomainError(f"weight a must lie in [0, 1], got {a}")
    g1, g2 = complex(G1(z)), complex(G2(z))
    if g1 == 0 or g2 == 0:
        raise DomainError("a factor vanishes")
    return complex(np.exp(a * np.log(g1) + (1 - a) * np.log(g2)))


# -- identity verification ---------------------------------------------------


@dataclass
class VerificationReport:
    grid: list[complex]
    lhs: list[complex]
    rhs: list[complex]
    fitted_constant: complex
    max_rel_dev: float
    tolerance: float
    passed: bool = field(init=False)

    def __post_init__(self):
        if self.fitted_constant == 0:
            raise DomainError("fitted constant vanished")
        self.passed = bool(self.max_rel_dev <= self.tolerance)


def default_grid(re_min: float = 2.5, re_max: float = 8.0, im: float = 0.0, points: int = 16) -> list[complex]:
    if points < 2:
        raise DomainError("a grid needs at least 2 points")
    return [complex(x, im) for x in np.linspace(re_min, re_max, points)]


def _nearest_root(value: complex, lam: float, target: complex) -> complex:
    """The lam-th root of ``value`` (over all log branches) closest to ``target``."""
    log_v = np.log(complex(value))
    span = int(math.ceil(lam)) + 1
    roots = [np.exp((log_v + 2j * math.pi * k) / lam) for k in range(-span, span + 1)]
    return complex(min(roots, key=lambda r: abs(r - target)))


def verify_powered_identity(spec: FamilySpec, grid: Sequence[complex], tol: float = 1e-8,
                            order: int = DEFAULT_ORDER) -> VerificationReport:
    """GCST of the standardized mu_lambda, to the power 1/lambda, against
    G^alpha Gtilde^gamma, up to one least-squares constant."""
    grid = [complex(z) for z in grid]
    if any(z.real <= 2 for z in grid):
        raise DomainError("the powered identity is checked on Re z > 2 only")
    mu = mu_measure(spec)
    rhs = [family_cst(spec, z) for z in grid]
    lhs = [_nearest_root(gcst(mu, spec.lam, z, order), spec.lam, r) for z, r in zip(grid, rhs)]
    l_arr, r_arr = np.array(lhs), np.array(rhs)
    c = complex(np.vdot(r_arr, l_arr) / np.vdot(r_arr, r_arr))
    dev = float(np.max(np.abs(l_arr - c * r_arr) / np.abs(c * r_arr)))
    return VerificationReport(grid, lhs, rhs, c, dev, tol)


def verify_markov_identity(spec: FamilySpec, grid: Sequence[complex], tol: float = 1e-8,
                           order: int = DEFAULT_ORDER) -> VerificationReport:
    """CST of nu_lambda against exp(-int Log(z - x) tau_lambda(dx)); no fitted constant."""
    grid = [complex(z) for z in grid]
    nu = nu_measure(spec)
    tau = tau_measure(spec)
    lhs = [cst(nu, z, order) for z in grid]
    rhs = [complex(np.exp(-log_kernel(z, tau, order))) for z in grid]
    dev = max(abs(a - b) / abs(b) for a, b in zip(lhs, rhs))
    return VerificationReport(grid, lhs, rhs, 1.0 + 0j, float(dev), tol)


# -- half-plane diagnostics ----------------------------------------------------


@dataclass
class ImaginaryTypeReport:
    points: int
    min_arg: float
    max_arg: float
    passed: bool


def imaginary_type_scan(T: Transform, grid: Sequence[complex]) -> ImaginaryTypeReport:
    """Range of arg T(z) over upper half-plane points; passes when inside (-pi, 0)."""
    grid = [complex(z) for z in grid]
    if any(z.imag <= 0 for z in grid):
        raise DomainError("scan points must lie in the upper half-plane")
    args = np.array([np.angle(complex(T(z))) for z in grid])
    lo, hi = float(args.min()), float(args.max())
    return ImaginaryTypeReport(len(grid), lo, hi, bool(lo > -math.pi and hi < 0))


def upper_half_plane_grid(points: int = 100, seed: int = 0) -> list[complex]:
    """Deterministic scan grid: rays at 10 angles in (0, pi), radii from 0.05 to 50."""
    rng = np.random.default_rng(seed)
    angles = np.linspace(0.05, math.pi - 0.05, 10)
    radii = np.geomspace(0.05, 50.0, max(points // 10, 1))
    pts = [r * np.exp(1j * t) for t in angles for r in radii]
    pts = pts[:points] + [complex(rng.uniform(-3, 3), rng.uniform(1e-3, 3)) for _ in range(points - len(pts))]
    return pts


# -- density recovery -----------------------------------------------------------


def stieltjes_invert(T: Transform, x: float, eps_sequence: Sequence[float] = STIELTJES_EPS,
                     tol: float = 1e-6) -> float:
    """Limit of -Im T(x + i eps) / pi, first-order Richardson along eps_k = eps_0 2^-k."""
    if not -2 < x < 2:
        raise DomainError(f"x must lie in (-2, 2), got {x}")
    eps = list(eps_sequence)
    if len(eps) < 3:
        raise DomainError("need at least three eps values")
    f = [-complex(T(complex(x, e))).imag / math.pi for e in eps]
    # error is linear in eps for halving steps: 2 f(eps/2) - f(eps) removes it
    rich = [(e0 * f1 - e1 * f0) / (e0 - e1) for e0, e1, f0, f1 in zip(eps, eps[1:], f, f[1:])]
    if abs(rich[-1] - rich[-2]) > tol * max(1.0, abs(rich[-1])):
        raise ConvergenceError(f"Stieltjes inversion at x={x} did not settle: {rich[-2]} vs {rich[-1]}")
    return float(rich[-1])


def arcsine_log_potential(x: float) -> float:
    """int log|x - u| of the arcsine law on [-2, 2], for x in (-2, 2).

    Each half of the split carries one algebraic endpoint factor and one
    logarithmic one, both absorbed in QUADPACK's weight functions.
    """
    if not -2 < x < 2:
        raise DomainError(f"x must lie in (-2, 2), got {x}")
    left, _ = quad(lambda u: 1 / math.sqrt(2 - u), -2, x, weight="alg-logb", wvar=(-0.5, 0.0), epsabs=1e-14)
    right, _ = quad(lambda u: 1 / math.sqrt(2 + u), x, 2, weight="alg-loga", wvar=(0.0, -0.5), epsabs=1e-14)
    return (left + right) / math.pi


def markov_density(spec: FamilySpec, x: float) -> float:
    """Density of nu_lambda from its tau_lambda alone:
    sin(pi F(x)) exp(-int log|x - u| tau(du)) / pi, with F the distribution function of tau."""
    if not -2 < x < 2:
        raise DomainError(f"x must lie in (-2, 2), got {x}")
    tau = tau_measure(spec)
    cont = tau.continuous_mass
    below = sum(m for loc, m in tau.atoms if loc < x)
    F = below + cont * (0.5 + math.asin(x / 2) / math.pi)
    potential = cont * arcsine_log_potential(x) + sum(m * math.log(abs(x - loc)) for loc, m in tau.atoms)
    return math.sin(math.pi * F) * math.exp(-potential) / math.pi


__all__ = [
    "wigner_cst",
    "arcsine_cst",
    "gtilde",
    "family_cst",
    "family_transform",
    "cst",
    "gcst",
    "geometric_mean_cst",
    "VerificationReport",
    "default_grid",
    "verify_powered_identity",
    "verify_markov_identity",
    "ImaginaryTypeReport",
    "imaginary_type_scan",
    "upper_half_plane_grid",
    "stieltjes_invert",
    "arcsine_log_potential",
    "markov_density",
]
