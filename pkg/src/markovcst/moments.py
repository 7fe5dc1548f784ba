"""Moments of the Markov transforms nu_lambda.

Routes offered:

* ``hyp3f2``     symmetric families, float, 4^n * 3F2(-n, ...; 1)
* ``rational``   symmetric families, exact polynomial p_n(1/lambda)
* ``series``     families 3 and 4, binomial expansion of the (2 -+ x)^(-1/2lambda)
                 factor in the angle variable, with the tail extrapolated
* ``laurent``    any family, Taylor coefficients of z * CST(z) at infinity,
                 exact for rational lambda
* ``quadrature`` any family, Gauss-Jacobi integration of x^n against nu
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import ConvergenceError, DomainError, UnsupportedError
from .measures import FamilySpec, family, nu_measure
from .quadrature import DEFAULT_ORDER
from .series import PowerSeries, binomial_series
from .special import is_exact, pochhammer, terminating_3f2

METHODS = ("hyp3f2", "rational", "series", "laurent", "quadrature")

SERIES_MAX_TERMS = 5000
SERIES_FIRST_BLOCK = 16
SERIES_LADDER = 6
SERIES_DPS = 30


def as_fraction(lam) -> Fraction:
    """Exact value of a lambda given as int, Fraction or decimal string."""
    if isinstance(lam, Fraction):
        return lam
    if isinstance(lam, (int, str)):
        return Fraction(lam)
    return Fraction(repr(float(lam)))


# -- symmetric family --------------------------------------------------------


def symmetric_moment(lam, n: int):
    """Even moment m_{2n} of nu_lambda (family 2), lambda >= 1.

    Exact (Fraction) when ``lam`` is a Fraction or int given through
    :func:`as_fraction`; float otherwise.  lam = inf gives the Wigner case.
    """
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if isinstance(lam, Fraction):
        if lam < 1:
            raise DomainError(f"symmetric moments need lambda >= 1, got {lam}")
        return 4**n * terminating_3f2(n, 1 / lam)
    lam = float(lam)
    if not lam >= 1:
        raise DomainError(f"symmetric moments need lambda >= 1, got {lam}")
    return 4.0**n * terminating_3f2(n, 1.0 / lam)


def moment_polynomial(n: int) -> list[Fraction]:
    """Ascending coefficients of p_n(y) = m_{2n} as a polynomial in y = 1/lambda.

    p_n(y) = sum_k C(n,k) 4^(n-k) / k! * prod_{j=k+2}^{2k+1} (y - j).
    """
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    total = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        poly = [Fraction(1)]
        for j in range(k + 2, 2 * k + 2):
            # multiply by (y - j)
            poly = [Fraction(0)] + poly
            for i in range(len(poly) - 1):
                poly[i] -= j * poly[i + 1]
        scale = Fraction(math.comb(n, k) * 4 ** (n - k), math.factorial(k))
        for i, c in enumerate(poly):
            total[i] += scale * c
    while len(total) > 1 and total[-1] == 0:
        total.pop()
    return total


def poly_eval(coeffs, y):
    acc = coeffs[-1] * 0
    for c in reversed(coeffs):
        acc = acc * y + c
    return acc


def norm_constant_family2(lam: float) -> float:
    """2^(1-1/lam) sqrt(pi) Gamma(1-1/(2lam)) Gamma(3/2-1/(2lam)) / Gamma(2-1/lam)."""
    lam = float(lam)
    if not lam > 0.5:
        raise DomainError(f"normalizing constant needs lambda > 1/2, got {lam}")
    y = 1.0 / lam
    return (
        2 ** (1 - y)
        * math.sqrt(math.pi)
        * math.gamma(1 - y / 2)
        * math.gamma(1.5 - y / 2)
        / math.gamma(2 - y)
    )


# -- non-symmetric families --------------------------------------------------


@lru_cache(maxsize=32)
def _angle_integrals(c: float, size: int, dps: int) -> tuple[list, list]:
    """I_m = int_{-pi/2}^{pi/2} sin^m(t) cos(t) cos(c t) dt  (m even) and
    J_m = the same with sin(c t) (m odd), for m < size.

    Two integrations by parts give the positive recurrence
    ((m+1)^2 - c^2) I_m = 2 cos(c pi/2) + m (m-1) I_{m-2}, and the same for
    J_m with sin(c pi/2); I_0 is the cosine-power integral with
    p + q = 3, p - q = c.
    """
    with mpmath.workdps(dps):
        c = mpmath.mpf(c)
        cs = 2 * mpmath.cos(c * mpmath.pi / 2)
        sn = 2 * mpmath.sin(c * mpmath.pi / 2)
        even = [mpmath.mpf(0)] * size
        odd = [mpmath.mpf(0)] * size
        for m in range(size):
            boundary, store = (cs, even) if m % 2 == 0 else (sn, odd)
            prev = store[m - 2] if m >= 2 else 0
            store[m] = (boundary + m * (m - 1) * prev) / ((m + 1) ** 2 - c * c)
        return even, odd


def _ladder_extrapolate(sums: dict[int, mpmath.mpf], blocks: list[int], beta, p: int):
    """Fit S_K = S + sum_{j<=p} d_j K^(beta - 1 - j/2) through the last p+2 blocks."""
    use = blocks[-(p + 2):]
    rows = [[1] + [mpmath.mpf(K) ** (beta - 1 - mpmath.mpf(j) / 2) for j in range(p + 1)] for K in use]
    rhs = [sums[K] for K in use]
    return mpmath.lu_solve(mpmath.matrix(rows), mpmath.matrix(rhs))[0]


def nonsymmetric_series(family_id: int, lam: float, n: int, max_terms: int = SERIES_MAX_TERMS,
                        tol: float = 1e-12, extrapolation_tol: float = 1e-6) -> tuple[float, float]:
    """Unnormalized n-th moment integral of nu_lambda (families 3, 4) and an error estimate.

    Substituting x = 2 sin t turns int x^n nu(dx) into
    2^(n+1-b) int sin^n(t) s(t) cos(t) (1 -+ sin t)^(-b) dt,  b = 1/(2 lam),
    with s(t) = sin(c(t + pi/2)) (family 3) or sin(c(pi/2 - t)) (family 4),
    c = 1 - b.  The binomial expansion of (1 -+ sin t)^(-b) reduces every term
    to the integrals of :func:`_angle_integrals`.  Terms decay like k^(b-2),
    so the plain truncation is only used once the tail estimate is below
    ``tol``; otherwise partial sums at K = 16, 32, ... are extrapolated along
    the exponent ladder b - 1 - j/2.
    """
    if family_id not in (3, 4):
        raise DomainError("series route is for the non-symmetric families 3 and 4")
    if not lam > 0.5:
        raise DomainError(f"lambda must exceed 1/2, got {lam}")
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    blocks = []
    K = SERIES_FIRST_BLOCK
    while K <= max_terms:
        blocks.append(K)
        K *= 2
    if len(blocks) < SERIES_LADDER + 3:
        raise ConvergenceError(f"max_terms={max_terms} leaves too few blocks for extrapolation")
    n_terms = blocks[-1]
    beta = 1.0 / (2 * lam)
    c = 1.0 - beta
    even, odd = _angle_integrals(c, n + n_terms + 1, SERIES_DPS)
    with mpmath.workdps(SERIES_DPS):
        b = mpmath.mpf(1) / (2 * mpmath.mpf(lam))
        sin_c = mpmath.sin((1 - b) * mpmath.pi / 2)
        cos_c = mpmath.cos((1 - b) * mpmath.pi / 2)
        sign = 1 if family_id == 3 else -1
        coef = mpmath.mpf(1)
        total = mpmath.mpf(0)
        sums = {}
        tail = None
        for k in range(n_terms):
            m = n + k
            if m % 2 == 0:
                piece = sin_c * even[m]
            else:
                piece = sign * cos_c * odd[m]
            term = coef * sign**k * piece
            total += term
            coef *= (b + k) / (k + 1)
            if k + 1 in blocks:
                sums[k + 1] = total
                # terms ~ k^(b-2): remaining tail ~ K |t_K| / (1 - b)
                tail = (k + 1) * abs(term) / (1 - b)
                if tail < tol:
                    return float(total * 2 ** (n + 1 - b)), float(tail)
        value = _ladder_extrapolate(sums, blocks, b, SERIES_LADDER)
        previous = _ladder_extrapolate(sums, blocks[:-1], b, SERIES_LADDER)
        err = abs(value - previous)
        scale = 2 ** (n + 1 - b)
        if err > extrapolation_tol * max(1, abs(value)):
            raise ConvergenceError(
                f"series for family {family_id}, lambda={lam}, n={n}: "
                f"extrapolation error {float(err):.2e} exceeds tolerance"
            )
        return float(value * scale), float(err * scale)


def nonsymmetric_moment(family_id: int, lam: float, n: int, max_terms: int = SERIES_MAX_TERMS) -> float:
    """n-th moment of nu_lambda for families 3, 4 through the series route."""
    value, _ = nonsymmetric_series(family_id, lam, n, max_terms)
    mass, _ = nonsymmetric_series(family_id, lam, 0, max_terms)
    return value / mass


# -- generic routes ----------------------------------------------------------


def quadrature_moment(spec: FamilySpec, n: int, order: int = DEFAULT_ORDER) -> float:
    return nu_measure(spec).expect(lambda x: x**n, order=order)


def laurent_moments(family_id: int, lam, count: int) -> list:
    """Moments m_0 .. m_{count-1} read off the expansion of z * CST(z) in w = 1/z.

    z G(z) = C(w^2) with C the Catalan series, and z * Gtilde(z) is
    (1 - 4w^2)^(-1/2), 1/(1 - 2w) or 1/(1 + 2w); the product of their
    alpha / gamma powers is the moment generating function.  Exact when
    ``lam`` is a Fraction.
    """
    family(family_id, float(lam))  # validates the parameter range
    exact = isinstance(lam, Fraction)
    one = Fraction(1) if exact else 1.0
    if family_id == 1:
        alpha, gamma = one, one * 0
    elif family_id == 2:
        alpha, gamma = one - 1 / (one * lam), 1 / (one * lam)
    else:
        alpha, gamma = one - 1 / (2 * one * lam), 1 / (2 * one * lam)
    catalan = [one * 0] * count
    for k in range(0, (count + 1) // 2):
        catalan[2 * k] = one * math.comb(2 * k, k) / (k + 1)
    gen = PowerSeries(catalan) ** alpha
    if family_id == 2:
        gen = gen * binomial_series(-gamma / 2, -4, 2, count)
    elif family_id == 3:
        gen = gen * PowerSeries([one * 2**j for j in range(count)]) ** gamma
    elif family_id == 4:
        gen = gen * PowerSeries([one * (-2) ** j for j in range(count)]) ** gamma
    return list(gen.coeffs)


def egf_check(y: float, z: float, N: int = 30) -> tuple[float, float]:
    """Truncated exponential generating series of p_n(y) against its closed form.

    lhs = sum_{n<N} p_n(y) z^n / n!
    rhs = e^{4z} 2F2(1 - y/2, (3-y)/2; 2 - y, 1; -4z), truncated at N terms.
    """
    if abs(z) > 0.125:
        raise DomainError(f"needs |z| <= 1/8, got {z}")
    if N < 20:
        raise DomainError("truncation order must be at least 20")
    lhs = sum(float(poly_eval(moment_polynomial(n), Fraction(repr(y)))) * z**n / math.factorial(n) for n in range(N))
    return lhs, math.exp(4 * z) * _hyp2f2_trunc(y, -4 * z, N)


def egf_printed_form(y: float, z: float, N: int = 30) -> float:
    """The generating series as printed: 2^(1-y) e^{4z} 2F2(...; +4z)."""
    return 2 ** (1 - y) * math.exp(4 * z) * _hyp2f2_trunc(y, 4 * z, N)


def _hyp2f2_trunc(y: float, x: float, N: int) -> float:
    total = 0.0
    for k in range(N):
        num = pochhammer(1 - y / 2, k) * pochhammer((3 - y) / 2, k)
        den = pochhammer(2 - y, k) * math.factorial(k) * math.factorial(k)
        total += num / den * x**k
    return total


# -- tables ------------------------------------------------------------------


@dataclass
class MomentEntry:
    order: int
    value: float
    exact: Fraction | None
    method: str


@dataclass
class MomentTable:
    family_id: int
    lam: float
    entries: list[MomentEntry] = field(default_factory=list)

    def values(self) -> list[float]:
        return [e.value for e in self.entries]

    def orders(self) -> list[int]:
        return [e.order for e in self.entries]


def moment_orders(family_id: int, n: int) -> list[int]:
    """Symmetric families report m_0, m_2, ..., m_2n; the others m_0 .. m_n."""
    return [2 * k for k in range(n + 1)] if family_id in (1, 2) else list(range(n + 1))


def moment_table(family_id: int, lam, n: int, method: str, order: int = DEFAULT_ORDER) -> MomentTable:
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}; choose from {METHODS}")
    spec = family(family_id, float(lam))
    orders = moment_orders(family_id, n)
    table = MomentTable(family_id, float(lam))
    symmetric = family_id in (1, 2)
    if symmetric and family_id == 2 and float(lam) < 1:
        raise DomainError(f"nu for family 2 needs lambda >= 1, got {lam}")

    if method in ("hyp3f2", "rational"):
        if not symmetric:
            raise UnsupportedError(f"{method} route covers the symmetric families 1 and 2 only")
        if method == "rational":
            y = Fraction(0) if family_id == 1 else 1 / as_fraction(lam)
            for k, o in enumerate(orders):
                val = poly_eval(moment_polynomial(k), y)
                table.entries.append(MomentEntry(o, float(val), val, method))
        else:
            y = 0.0 if family_id == 1 else 1.0 / float(lam)
            for k, o in enumerate(orders):
                table.entries.append(MomentEntry(o, 4.0**k * terminating_3f2(k, y), None, method))
    elif method == "series":
        if symmetric:
            raise UnsupportedError("series route covers the non-symmetric families 3 and 4 only")
        mass, _ = nonsymmetric_series(family_id, float(lam), 0)
        for o in orders:
            val = mass if o == 0 else nonsymmetric_series(family_id, float(lam), o)[0]
            table.entries.append(MomentEntry(o, val / mass, None, method))
    elif method == "laurent":
        if not isinstance(lam, float) or lam.is_integer():
            lam = as_fraction(lam)
        coeffs = laurent_moments(family_id, lam, max(orders) + 1)
        for o in orders:
            val = coeffs[o]
            table.entries.append(MomentEntry(o, float(val), val if is_exact(val) else None, method))
    else:
        for o in orders:
            table.entries.append(MomentEntry(o, quadrature_moment(spec, o, order), None, method))
    return table


__all__ = [
    "symmetric_moment",
    "moment_polynomial",
    "poly_eval",
    "norm_constant_family2",
    "nonsymmetric_series",
    "nonsymmetric_moment",
    "quadrature_moment",
    "laurent_moments",
    "egf_check",
    "egf_printed_form",
    "MomentTable",
    "MomentEntry",
    "moment_table",
    "as_fraction",
]
