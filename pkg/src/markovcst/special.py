"""Pochhammer symbols, Gauss and terminating hypergeometric series, and the
two Gamma-function lemmas used by the moment computations.

Exact paths accept :class:`fractions.Fraction` and never touch the Gamma
function; float paths go through ``math.lgamma`` / ``math.gamma``.
"""

from __future__ import annotations

import math
from fractions import Fraction

from scipy.special import gammaln, gammasgn, rgamma

from .errors import ConvergenceError, DomainError
from .quadrature import integrate, jacobi_rule

SERIES_TOL = 1e-16
SERIES_MAX_TERMS = 10_000


def pochhammer(a, n: int):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.

    Returns the type of ``a`` (exact for Fraction and int input).
    """
    if n < 0:
        raise DomainError(f"Pochhammer index must be >= 0, got {n}")
    out = a * 0 + 1
    for j in range(n):
        out *= a + j
    return out


def _is_nonpositive_int(c) -> bool:
    return float(c).is_integer() and float(c) <= 0


def gauss_2f1(a, b, c, z, tol: float = SERIES_TOL, max_terms: int = SERIES_MAX_TERMS) -> complex:
    """Gauss hypergeometric series 2F1(a, b; c; z) inside the unit disc."""
    z = complex(z)
    if abs(z) >= 1:
        raise DomainError(f"series needs |z| < 1, got |z|={abs(z)}")
    if _is_nonpositive_int(c):
        raise DomainError(f"c={c} is a pole of 2F1")
    term = 1.0 + 0j
    total = term
    for n in range(max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total += term
        if abs(term) <= tol * abs(total):
            return total
        if term == 0:
            return total
    raise ConvergenceError(f"2F1 series did not converge in {max_terms} terms at z={z}")


def gauss_2f1_euler(a, b, c, z, order: int = 128) -> complex:
    """2F1 through Euler's integral; requires c > b > 0.

    Gamma(c)/(Gamma(b)Gamma(c-b)) * int_0^1 (1-tz)^-a t^(b-1) (1-t)^(c-b-1) dt,
    the two power factors being the Jacobi weight of the rule.
    """
    if not (c > b > 0):
        raise DomainError(f"Euler representation needs c > b > 0, got b={b}, c={c}")
    z = complex(z)
    rule = jacobi_rule(c - b - 1, b - 1, order)
    integral = integrate(rule, lambda t: (1 - t * z) ** (-a), (0.0, 1.0))
    log_pref = math.lgamma(c) - math.lgamma(b) - math.lgamma(c - b)
    return complex(math.exp(log_pref) * integral)


def terminating_3f2(n: int, y):
    """3F2(-n, 1 - y/2, 3/2 - y/2; 2 - y, 1; 1), a finite sum of n+1 terms.

    ``y`` plays the role of 1/lambda.  Exact when ``y`` is a Fraction or int.
    """
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if isinstance(y, (Fraction, int)) and not isinstance(y, bool):
        y = Fraction(y)
        half = Fraction(1, 2)
    else:
        y = float(y)
        half = 0.5
    a2 = 1 - y * half
    a3 = 3 * half - y * half
    b1 = 2 - y
    term = y * 0 + 1
    total = term
    for k in range(n):
        if b1 + k == 0:
            raise DomainError(f"lower parameter 2 - y vanishes at index {k} (y={y})")
        term = term * (-n + k) * (a2 + k) * (a3 + k) / ((b1 + k) * (1 + k) * (k + 1))
        total += term
    return total


def cosine_power_integral(p: float, q: float) -> float:
    """Closed form of int_0^{pi/2} cos((p-q)x) cos(x)^(p+q-2) dx, for p + q > 1.

    pi / 2^(p+q-1) * Gamma(p+q-1) / (Gamma(p) Gamma(q)).  A nonpositive
    integer p or q gives exactly zero.
    """
    s = p + q
    if not s > 1:
        raise DomainError(f"needs p + q > 1, got {s}")
    if _is_nonpositive_int(p) or _is_nonpositive_int(q):
        return 0.0
    if max(s - 1, abs(p), abs(q)) < 150:
        return math.pi / 2 ** (s - 1) * math.gamma(s - 1) * float(rgamma(p)) * float(rgamma(q))
    sign = float(gammasgn(p) * gammasgn(q))
    log_val = math.log(math.pi) - (s - 1) * math.log(2) + gammaln(s - 1) - gammaln(p) - gammaln(q)
    return sign * math.exp(log_val)


def duplication_check(k: int, y: float) -> tuple[float, float]:
    """Both sides of sqrt(pi) G(2k+2-y) = 2^(2k+1-y) G(k+1-y/2) G(k+3/2-y/2)."""
    args = (2 * k + 2 - y, k + 1 - y / 2, k + 1.5 - y / 2)
    if min(args) <= 0:
        raise DomainError(f"Gamma pole or negative argument for k={k}, y={y}")
    lhs = math.exp(0.5 * math.log(math.pi) + math.lgamma(args[0]))
    rhs = math.exp((2 * k + 1 - y) * math.log(2) + math.lgamma(args[1]) + math.lgamma(args[2]))
    return lhs, rhs


def is_exact(x) -> bool:
    return isinstance(x, (Fraction, int)) and not isinstance(x, bool)


__all__ = [
    "pochhammer",
    "gauss_2f1",
    "gauss_2f1_euler",
    "terminating_3f2",
    "cosine_power_integral",
    "duplication_check",
    "is_exact",
]
