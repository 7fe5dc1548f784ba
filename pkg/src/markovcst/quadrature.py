"""Gauss-Jacobi rules and weighted integration on finite intervals.

Rules are built with the Golub-Welsch construction: the eigenvalues of the
symmetric tridiagonal Jacobi matrix of the monic Jacobi recurrence are the
nodes, and the squared first eigenvector components (times the total mass
of the weight) are the weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal
from scipy.special import betaln

from .errors import ConvergenceError, DomainError, NumericalError

DEFAULT_ORDER = 256
NEAR_CUT_ORDER = 1024
NEAR_CUT_DISTANCE = 0.05


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Gauss rule for the weight (1 - t)**a * (1 + t)**b on [-1, 1]."""

    nodes: np.ndarray
    weights: np.ndarray
    a: float
    b: float

    @property
    def order(self) -> int:
        return len(self.nodes)

    @property
    def exponents(self) -> tuple[float, float]:
        return (self.a, self.b)


def jacobi_mass(a: float, b: float) -> float:
    """Total mass 2**(a+b+1) B(a+1, b+1) of the Jacobi weight."""
    return math.exp((a + b + 1) * math.log(2.0) + betaln(a + 1, b + 1))


def _recurrence(a: float, b: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(n, dtype=float)
    ab = a + b
    diag = np.empty(n)
    diag[0] = (b - a) / (ab + 2)
    if n > 1:
        kk = k[1:]
        diag[1:] = (b * b - a * a) / ((2 * kk + ab) * (2 * kk + ab + 2))
    off = np.empty(max(n - 1, 0))
    if n > 1:
        # k = 1 written with the (1 + a + b) factor cancelled; it vanishes for a + b = -1
        off[0] = 4 * (1 + a) * (1 + b) / ((2 + ab) ** 2 * (3 + ab))
        kk = k[2:]
        s = 2 * kk + ab
        off[1:] = 4 * kk * (kk + a) * (kk + b) * (kk + ab) / (s * s * (s + 1) * (s - 1))
    return diag, np.sqrt(off)


@lru_cache(maxsize=128)
def _cached_rule(a: float, b: float, order: int) -> QuadratureRule:
    diag, off = _recurrence(a, b, order)
    try:
        nodes, vecs = eigh_tridiagonal(diag, off)
    except LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ConvergenceError(f"tridiagonal eigensolver failed for order {order}") from exc
    weights = jacobi_mass(a, b) * vecs[0, :] ** 2
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(nodes, weights, a, b)


def jacobi_rule(a: float, b: float, order: int = DEFAULT_ORDER) -> QuadratureRule:
    """Return the ``order``-point Gauss-Jacobi rule for (1-t)^a (1+t)^b.

    The rule integrates polynomials of degree ``2*order - 1`` exactly
    against the weight.  Rules are cached; the arrays are read-only.
    """
    if not (a > -1 and b > -1):
        raise DomainError(f"Jacobi exponents must exceed -1, got a={a}, b={b}")
    if order < 1:
        raise DomainError(f"order must be positive, got {order}")
    return _cached_rule(float(a), float(b), int(order))


def integrate(
    rule: QuadratureRule,
    f: Callable[[np.ndarray], np.ndarray],
    interval: tuple[float, float] = (-1.0, 1.0),
) -> complex | float:
    """Integrate ``(hi - x)^a (x - lo)^b f(x)`` over ``interval``.

    ``f`` supplies only the smooth factor; the Jacobi weight of ``rule`` is
    implicit.  ``f`` is called once with the array of mapped nodes.
    """
    lo, hi = interval
    half = 0.5 * (hi - lo)
    x = lo + (rule.nodes + 1.0) * half
    values = np.asarray(f(x))
    if not np.all(np.isfinite(values)):
        raise NumericalError("integrand is not finite at a quadrature node")
    scale = half ** (rule.a + rule.b + 1)
    total = scale * np.dot(rule.weights, values)
    return complex(total) if np.iscomplexobj(total) else float(total)


def order_for(z: complex, lo: float, hi: float, order: int = DEFAULT_ORDER) -> int:
    """Escalate the order when ``z`` sits within 0.05 of the segment [lo, hi]."""
    x = min(max(z.real, lo), hi)
    if abs(complex(z) - x) < NEAR_CUT_DISTANCE:
        return max(order, NEAR_CUT_ORDER)
    return order


def log_kernel(z: complex, measure, order: int = DEFAULT_ORDER) -> complex:
    """Logarithmic potential  integral of Log(z - x) against ``measure``.

    Principal logarithm; atoms contribute ``mass * Log(z - location)``.
    """
    z = complex(z)
    if z.imag == 0 and measure.support_lo <= z.real <= measure.support_hi:
        raise DomainError(f"z={z} lies on the support [{measure.support_lo}, {measure.support_hi}]")
    order = order_for(z, measure.support_lo, measure.support_hi, order)
    return measure.expect(lambda x: np.log(z - x), order=order)
