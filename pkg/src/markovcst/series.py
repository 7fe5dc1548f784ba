"""Truncated power series with exact (Fraction) or float coefficients.

``PowerSeries(coeffs, leading_order=k)`` stands for
``sum_j coeffs[j] * z**(j + k)`` with everything past ``len(coeffs)``
unknown.  Arithmetic is implemented for ``leading_order == 0`` operands;
the offset is bookkeeping for Laurent-type results such as K-transforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError


def _zero_like(x):
    return x * 0


@dataclass(frozen=True)
class PowerSeries:
    coeffs: tuple
    leading_order: int = 0

    def __init__(self, coeffs: Sequence, leading_order: int = 0):
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "leading_order", int(leading_order))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, j: int):
        return self.coeffs[j]

    def coefficient(self, power: int):
        """Coefficient of z**power."""
        j = power - self.leading_order
        if j < 0:
            return _zero_like(self.coeffs[0])
        return self.coeffs[j]

    def _require_plain(self, other: "PowerSeries | None" = None) -> None:
        if self.leading_order != 0 or (other is not None and other.leading_order != 0):
            raise DomainError("arithmetic needs leading_order == 0 operands")

    def _coerce(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return other
        return PowerSeries([other] + [_zero_like(other)] * (len(self) - 1))

    def __add__(self, other) -> "PowerSeries":
        other = self._coerce(other)
        self._require_plain(other)
        n = min(len(self), len(other))
        return PowerSeries([self[j] + other[j] for j in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-c for c in self.coeffs], self.leading_order)

    def __sub__(self, other) -> "PowerSeries":
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            return PowerSeries([c * other for c in self.coeffs], self.leading_order)
        n = min(len(self), len(other))
        out = []
        for k in range(n):
            acc = _zero_like(self[0])
            for j in range(k + 1):
                acc += self[j] * other[k - j]
            out.append(acc)
        return PowerSeries(out, self.leading_order + other.leading_order)

    __rmul__ = __mul__

    def reciprocal(self) -> "PowerSeries":
        """1/f for f with nonzero constant term."""
        self._require_plain()
        c0 = self[0]
        if c0 == 0:
            raise DomainError("reciprocal needs a nonzero constant term")
        out = [1 / c0]
        for k in range(1, len(self)):
            acc = _zero_like(c0)
            for j in range(1, k + 1):
                acc += self[j] * out[k - j]
            out.append(-acc / c0)
        return PowerSeries(out)

    def __pow__(self, exponent) -> "PowerSeries":
        """f**exponent for f with constant term 1 (J.C.P. Miller recurrence)."""
        self._require_plain()
        if self[0] != 1:
            raise DomainError("power needs constant term 1")
        g = [self[0]]
        for k in range(1, len(self)):
            acc = _zero_like(self[0])
            for j in range(1, k + 1):
                acc += ((exponent + 1) * j - k) * self[j] * g[k - j]
            g.append(acc / k)
        return PowerSeries(g)

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by z**k (changes only the offset)."""
        return PowerSeries(self.coeffs, self.leading_order + k)

    def truncate(self, n: int) -> "PowerSeries":
        return PowerSeries(self.coeffs[:n], self.leading_order)

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """self(inner(z)) for inner with zero constant term (Horner)."""
        self._require_plain(inner)
        if inner[0] != 0:
            raise DomainError("composition needs inner series without constant term")
        n = min(len(self), len(inner))
        zero = _zero_like(self[0])
        out = PowerSeries([self[n - 1]] + [zero] * (n - 1))
        for j in range(n - 2, -1, -1):
            out = out * inner.truncate(n) + self[j]
        return out

    def revert(self) -> "PowerSeries":
        """Compositional inverse by Lagrange inversion.

        For f = c1 z + c2 z^2 + ..., [z^k] f^{-1} = (1/k) [w^(k-1)] (w / f(w))^k.
        """
        self._require_plain()
        if self[0] != 0 or self[1] == 0:
            raise DomainError("reversion needs f(0) = 0 and f'(0) != 0")
        n = len(self)
        ratio = PowerSeries(self.coeffs[1:]).reciprocal()  # w / f(w), length n-1
        out = [_zero_like(self[1])]
        power = PowerSeries([ratio[0] * 0 + 1] + [_zero_like(ratio[0])] * (n - 2))
        for k in range(1, n):
            power = power * ratio
            out.append(power[k - 1] / k)
        return PowerSeries(out)

    def __call__(self, z):
        acc = _zero_like(self[0]) * z
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc * z**self.leading_order


def binomial_series(exponent, sign: int, step: int, length: int) -> PowerSeries:
    """Coefficients of (1 + sign * z**step) ** exponent up to z**(length-1).

    Exact when ``exponent`` is a Fraction.
    """
    one = exponent * 0 + 1
    out = [one * 0] * length
    coef = one
    j = 0
    while j * step < length:
        out[j * step] = coef * sign**j
        coef = coef * (exponent - j) / (j + 1)
        j += 1
    return PowerSeries(out)
