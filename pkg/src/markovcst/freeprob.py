"""K-transforms, inversion of u_n, and free cumulants.

The transform of nu_n satisfies G_n(z)^n = u_n(G(z)) with
u_n(u) = u^n, u^n / (1 - u^2), u^n / (1 - u), u^n / (1 + u) for the four
families, so its compositional inverse is K_n(z) = K(u_n^{-1}(z^n)) with
K(u) = u + 1/u the inverse of the semicircle transform.

Roots are written u = zeta * h with zeta an n-th root of w; h then solves

    family 1:  h = 1
    family 2:  h^n + zeta^2 h^2 - 1 = 0
    family 3:  h^n + zeta h - 1 = 0
    family 4:  h^n - zeta h - 1 = 0

and the wanted branch is the one with h = 1 at zeta = 0.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Sequence

from .errors import BranchError, ConvergenceError, DomainError, UnsupportedError
from .series import PowerSeries, binomial_series

SMALL_RADIUS = 0.5
CONTINUATION_STEP = 1e-3
NEWTON_TOL = 1e-14
ROOT_SEPARATION = 1e-9
MAX_RADICAL_DEGREE = 4


def semicircle_k(m: float, sigma: float, z: complex) -> complex:
    """K_{m,sigma}(z) = sigma^2 z + m + 1/z, inverse of the semicircle transform."""
    if z == 0:
        raise DomainError("K is singular at z = 0")
    return sigma * sigma * z + m + 1 / z


def semicircle_cst(m: float, sigma: float, z: complex) -> complex:
    """Transform of the semicircle law with mean m and variance sigma^2."""
    from .transforms import wigner_cst

    return wigner_cst((complex(z) - m) / sigma) / sigma


def utilde(family_id: int, n: int, u: complex) -> complex:
    u = complex(u)
    if family_id == 1:
        return u**n
    if family_id == 2:
        return u**n / (1 - u * u)
    if family_id == 3:
        return u**n / (1 - u)
    if family_id == 4:
        return u**n / (1 + u)
    raise DomainError(f"family must be 1..4, got {family_id}")


def _h_poly(family_id: int, n: int, zeta: complex):
    """f(h), f'(h) of the normalized root equation."""
    if family_id == 2:
        z2 = zeta * zeta
        return (lambda h: h**n + z2 * h * h - 1), (lambda h: n * h ** (n - 1) + 2 * z2 * h)
    s = 1 if family_id == 3 else -1
    return (lambda h: h**n + s * zeta * h - 1), (lambda h: n * h ** (n - 1) + s * zeta)


def _newton(f, df, h: complex, tol: float = NEWTON_TOL, max_iter: int = 50) -> complex:
    for _ in range(max_iter):
        d = df(h)
        if d == 0:
            raise BranchError("vanishing derivative during root tracking")
        step = f(h) / d
        h -= step
        if abs(step) <= tol * max(1.0, abs(h)) and abs(f(h)) <= tol:
            return h
    if abs(f(h)) <= 1e3 * tol:
        return h
    raise ConvergenceError(f"Newton failed to settle (residual {abs(f(h)):.2e})")


def continue_root(family_id: int, n: int, zeta: complex, step: float = CONTINUATION_STEP) -> complex:
    """h(zeta) tracked from h(0) = 1 along the segment t * zeta, t in [0, 1]."""
    if family_id == 1:
        return 1.0 + 0j
    steps = max(1, int(math.ceil(1 / step)))
    h = 1.0 + 0j
    for k in range(1, steps + 1):
        f, df = _h_poly(family_id, n, zeta * k / steps)
        h = _newton(f, df, h)
    return h


def _cbrt(x: complex) -> complex:
    return cmath.exp(cmath.log(x) / 3) if x != 0 else 0j


def _cardano(p: complex, q: complex) -> list[complex]:
    """All roots of Z^3 + p Z + q = 0 as A + B, A^3 + B^3 = -q, A B = -p/3."""
    disc = cmath.sqrt(q * q / 4 + p**3 / 27)
    big = -q / 2 + disc
    if abs(big) < abs(-q / 2 - disc):
        big = -q / 2 - disc
    a0 = _cbrt(big)
    if a0 == 0:
        return [0j, 0j, 0j]
    omega = cmath.exp(2j * math.pi / 3)
    roots = []
    for k in range(3):
        a = a0 * omega**k
        roots.append(a - p / (3 * a))
    return roots


def _quadratic(a: complex, b: complex, c: complex) -> list[complex]:
    d = cmath.sqrt(b * b - 4 * a * c)
    return [(-b + d) / (2 * a), (-b - d) / (2 * a)]


def radical_roots(family_id: int, n: int, w: complex) -> list[complex] | None:
    """Every root z of u_n(z) = w from closed-form radicals, or None where
    no radical route is implemented."""
    w = complex(w)
    if family_id == 1:
        return None
    if family_id == 2:
        if n == 1:
            return _quadratic(w, 1, -w) if w != 0 else [0j]
        if n == 2:
            r = cmath.sqrt(w / (1 + w))
            return [r, -r]
        if n == 3:
            # z = Z - w/3 removes the square term of z^3 + w z^2 - w
            p = -w * w / 3
            q = 2 * w**3 / 27 - w
            return [Z - w / 3 for Z in _cardano(p, q)]
        if n == 4:
            # v = z^2:  v^2 + w v - w = 0
            out = []
            for v in _quadratic(1, w, -w):
                r = cmath.sqrt(v)
                out += [r, -r]
            return out
        return None
    s = 1 if family_id == 3 else -1
    if n == 1:
        return [w / (1 + s * w)]
    if n == 2:
        return _quadratic(1, s * w, -w)
    if n == 3:
        # z^3 + s w z - w = 0 is already depressed
        return _cardano(s * w, -w)
    return None


def invert_utilde(family_id: int, n: int, w: complex, zeta: complex | None = None,
                  allow_continuation: bool = False, radius: float = SMALL_RADIUS) -> complex:
    """The root z(w) of u_n(z) = w that is continuous from z(0) = 0, z ~ zeta.

    ``zeta`` selects which n-th root of w the answer should follow (default:
    principal).  The closed-form radical candidate nearest the continuation
    result is returned; a mismatch or two candidates closer than 1e-9 raise
    BranchError.  Degrees above four go through continuation alone, and only
    when ``allow_continuation`` is set.
    """
    if family_id not in (1, 2, 3, 4):
        raise DomainError(f"family must be 1..4, got {family_id}")
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if n > MAX_RADICAL_DEGREE and not allow_continuation:
        raise UnsupportedError(f"n={n} has no radical inversion; pass allow_continuation=True")
    w = complex(w)
    if abs(w) > radius:
        raise DomainError(f"|w|={abs(w):.3g} exceeds the small-w radius {radius}")
    if w == 0:
        return 0j
    if zeta is None:
        zeta = cmath.exp(cmath.log(w) / n)
    else:
        zeta = complex(zeta)
        if abs(zeta**n - w) > 1e-12 * max(1.0, abs(w)):
            raise DomainError("zeta must be an n-th root of w")
    tracked = zeta * continue_root(family_id, n, zeta)
    candidates = radical_roots(family_id, n, w)
    if not candidates:
        return tracked
    ranked = sorted(candidates, key=lambda c: abs(c - tracked))
    best = ranked[0]
    if len(ranked) > 1 and abs(ranked[1] - best) < ROOT_SEPARATION:
        raise BranchError(f"two roots within {ROOT_SEPARATION} of each other at w={w}")
    if abs(best - tracked) > 1e-8 * max(1.0, abs(tracked)):
        raise BranchError(f"radical root {best} disagrees with continuation {tracked}")
    return best


def k_transform(family_id: int, n: int, z: complex, radius: float = SMALL_RADIUS, **kwargs) -> complex:
    """K_n(z) = K(u_n^{-1}(z^n)), the inverse of the transform of nu_n near 0."""
    z = complex(z)
    if z == 0:
        raise DomainError("K_n is singular at z = 0")
    if abs(z) > radius:
        raise DomainError(f"|z|={abs(z):.3g} exceeds the small-z radius {radius}")
    if family_id == 1:
        return z + 1 / z
    u = invert_utilde(family_id, n, z**n, zeta=z, radius=radius, **kwargs)
    return u + 1 / u


# -- free cumulants --------------------------------------------------------------


def cumulants_lambda2(k_max: int) -> list[Fraction]:
    """r_0 .. r_{k_max} of nu_2 (family 2, lambda = 2):
    r_{2k+1} = (-1)^k [(1/2)_k / k! + (1/2)_k / (2 (k+1)!)], even indices vanish."""
    if k_max < 0:
        raise DomainError(f"k_max must be >= 0, got {k_max}")
    out = [Fraction(0)] * (k_max + 1)
    poch = Fraction(1)  # (1/2)_k / k!
    k = 0
    while 2 * k + 1 <= k_max:
        out[2 * k + 1] = (-1) ** k * (poch + poch / (2 * (k + 1)))
        poch = poch * (Fraction(1, 2) + k) / (k + 1)
        k += 1
    return out


def _series_power_coeff(m: list, s: int, n: int):
    """[z^n] (z M(z))^s using M's coefficients m[0..]."""
    # (z M)^s = z^s M^s, so this is [z^(n-s)] M^s
    target = n - s
    if target < 0:
        return m[0] * 0
    power = [m[0] * 0 + 1] + [m[0] * 0] * target
    for _ in range(s):
        power = [sum(power[j] * m[i - j] for j in range(i + 1)) for i in range(target + 1)]
    return power[target]


def moments_to_free_cumulants(moments: Sequence) -> list:
    """kappa_1 .. kappa_N from m_0 = 1, m_1, ..., m_N.

    Solves M(z) = 1 + sum_s kappa_s (z M(z))^s order by order; exact for
    Fraction input.
    """
    m = list(moments)
    if not m or m[0] != 1:
        raise DomainError("moments[0] must equal 1")
    kappa = []
    for n in range(1, len(m)):
        rest = sum(kappa[s - 1] * _series_power_coeff(m, s, n) for s in range(1, n))
        kappa.append(m[n] - rest)
    return kappa


def free_cumulants_to_moments(cumulants: Sequence) -> list:
    """m_0 = 1, m_1 .. m_N from kappa_1 .. kappa_N (inverse of the above)."""
    kappa = list(cumulants)
    one = kappa[0] * 0 + 1 if kappa else 1
    m = [one]
    for n in range(1, len(kappa) + 1):
        m.append(one * 0)
        m[n] = sum(kappa[s - 1] * _series_power_coeff(m, s, n) for s in range(1, n + 1))
    return m


def series_k(family_id: int, n: int, order: int, exact: bool = True) -> PowerSeries:
    """Laurent expansion 1/z + r_0 + r_1 z + ... + r_order z^order of K_n.

    The inverse of z -> (u_n(z))^(1/n) = z psi(z) comes from Lagrange
    inversion, with psi = (1 - z^2)^(-1/n), (1 - z)^(-1/n), (1 + z)^(-1/n)
    (or 1 for family 1); then K_n = u + 1/u.  Coefficients are Fractions
    when ``exact``.
    """
    if order > 40:
        raise DomainError("series order is capped at 40")
    if order < 0:
        raise DomainError("order must be >= 0")
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    length = order + 3
    e = Fraction(-1, n) if exact else -1.0 / n
    one = e * 0 + 1
    if family_id == 1:
        psi = PowerSeries([one] + [one * 0] * (length - 1))
    elif family_id == 2:
        psi = binomial_series(e, -1, 2, length)
    elif family_id in (3, 4):
        psi = binomial_series(e, -1 if family_id == 3 else 1, 1, length)
    else:
        raise DomainError(f"family must be 1..4, got {family_id}")
    phi = PowerSeries([one * 0] + list(psi.coeffs[: length - 1]))
    u = phi.revert()
    h = PowerSeries(u.coeffs[1:])  # u = z h
    inv_h = h.reciprocal()
    # K = z h + (1/z)(1/h): [z^k] = h_{k-1} + (1/h)_{k+1}
    coeffs = [inv_h[0]]
    for k in range(0, order + 1):
        hk = h[k - 1] if k >= 1 else one * 0
        coeffs.append(hk + inv_h[k + 1])
    return PowerSeries(coeffs, leading_order=-1)


__all__ = [
    "semicircle_k",
    "semicircle_cst",
    "utilde",
    "continue_root",
    "radical_roots",
    "invert_utilde",
    "k_transform",
    "cumulants_lambda2",
    "moments_to_free_cumulants",
    "free_cumulants_to_moments",
    "series_k",
]
