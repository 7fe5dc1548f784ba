"""Catalog of the four Beta-type families and their tau / nu measures.

Every continuous part is stored on the standardized variable ``v`` in
[-2, 2] as ``(2 - v)^a (2 + v)^b * factor(v)`` and reaches its actual
support through an affine map.  Quadrature never samples the endpoint
singularities: they always sit in a Jacobi weight, either in ``v`` itself
or, for the trigonometric factors, in the angle variable
``phi = (2/pi) arcsin(v/2)``, where ``cos(c * arcsin(v/2))`` and friends are
analytic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property, lru_cache
from typing import Callable

import numpy as np
from scipy.special import betaln

from .errors import DomainError, NotAProbabilityMeasure
from .quadrature import DEFAULT_ORDER, jacobi_rule

LAMBDA_MIN = {1: 0.0, 2: 0.5, 3: 0.5, 4: 0.5}

UTILDE = {1: "z^lambda", 2: "z^lambda/(1-z^2)", 3: "z^lambda/(1-z)", 4: "z^lambda/(1+z)"}
GTILDE = {1: "one", 2: "inv_sqrt(z^2-4)", 3: "inv(z-2)", 4: "inv(z+2)"}
ALPHA_FORMULA = {1: "1", 2: "1 - 1/lambda", 3: "1 - 1/(2 lambda)", 4: "1 - 1/(2 lambda)"}


class SmoothKind(str, Enum):
    ONE = "one"
    COS_ARCSIN = "cos_scaled_arcsin"
    SIN_SHIFTED_ARCSIN = "sin_scaled_shifted_arcsin"
    LINEAR_MINUS = "linear(2-x)"
    LINEAR_PLUS = "linear(2+x)"


_TRIG = (SmoothKind.COS_ARCSIN, SmoothKind.SIN_SHIFTED_ARCSIN)


@dataclass(frozen=True)
class SmoothFactor:
    """Smooth multiplier of the Jacobi weight, as a function of v in [-2, 2].

    ``mirrored`` evaluates the factor at ``-v`` (the image under x -> -x).
    """

    kind: SmoothKind = SmoothKind.ONE
    c: float = 0.0
    mirrored: bool = False

    @property
    def trigonometric(self) -> bool:
        return self.kind in _TRIG

    def of_angle(self, theta: np.ndarray) -> np.ndarray:
        """Factor at v = 2 sin(theta), theta in [-pi/2, pi/2]."""
        if self.mirrored:
            theta = -theta
        if self.kind is SmoothKind.COS_ARCSIN:
            return np.cos(self.c * theta)
        if self.kind is SmoothKind.SIN_SHIFTED_ARCSIN:
            return np.sin(self.c * (theta + 0.5 * np.pi))
        return self(2.0 * np.sin(theta))

    def __call__(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        if self.trigonometric:
            # of_angle applies the mirroring itself
            return self.of_angle(np.arcsin(np.clip(0.5 * v, -1.0, 1.0)))
        if self.mirrored:
            v = -v
        if self.kind is SmoothKind.ONE:
            return np.ones_like(v)
        if self.kind is SmoothKind.LINEAR_MINUS:
            return 2.0 - v
        return 2.0 + v

    def reflected(self) -> "SmoothFactor":
        return replace(self, mirrored=not self.mirrored)


def _sinc_quarter(u: np.ndarray) -> np.ndarray:
    # sin(pi u / 4) / u, analytic and positive on [0, 2]
    return np.where(u == 0, 0.25 * np.pi, np.sin(0.25 * np.pi * u) / np.where(u == 0, 1.0, u))


@lru_cache(maxsize=256)
def _standard_rule(a: float, b: float, factor: SmoothFactor, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes v and weights for int (2-v)^a (2+v)^b factor(v) dv over [-2, 2]."""
    if factor.trigonometric:
        # v = 2 sin(pi phi / 2):  2 - v = 4 (1-phi)^2 s(1-phi)^2,  2 + v = 4 (1+phi)^2 s(1+phi)^2,
        # dv = 2 pi (1-phi)(1+phi) s(1-phi) s(1+phi) dphi  with s = _sinc_quarter
        rule = jacobi_rule(2 * a + 1, 2 * b + 1, order)
        phi = rule.nodes
        s_minus = _sinc_quarter(1.0 - phi)
        s_plus = _sinc_quarter(1.0 + phi)
        theta = 0.5 * np.pi * phi
        smooth = (
            4.0 ** (a + b) * s_minus ** (2 * a + 1) * s_plus ** (2 * b + 1) * 2 * np.pi
        ) * factor.of_angle(theta)
        v = 2.0 * np.sin(theta)
        w = rule.weights * smooth
    else:
        rule = jacobi_rule(a, b, order)
        v = 2.0 * rule.nodes
        w = rule.weights * 2.0 ** (a + b + 1) * factor(v)
    v.setflags(write=False)
    w.setflags(write=False)
    return v, w


@dataclass(frozen=True)
class SpectralMeasure:
    """Finite measure on [support_lo, support_hi]: Jacobi-weighted continuous
    part plus point atoms.

    The continuous part has total mass ``continuous_mass`` and density
    proportional to ``(2 - v)^jacobi_a (2 + v)^jacobi_b * smooth_factor(v)``
    in the standardized coordinate ``v``; ``norm_const`` is the integral of
    that unnormalized density over v in [-2, 2] (computed by quadrature and
    cached when left unset).
    """

    support_lo: float = -2.0
    support_hi: float = 2.0
    jacobi_a: float = 0.0
    jacobi_b: float = 0.0
    smooth_factor: SmoothFactor = field(default_factory=SmoothFactor)
    atoms: tuple[tuple[float, float], ...] = ()
    continuous_mass: float = 1.0
    norm_const: float | None = None
    name: str = ""

    def __post_init__(self):
        if not self.support_lo < self.support_hi:
            raise DomainError(f"empty support [{self.support_lo}, {self.support_hi}]")
        if self.continuous_mass < 0:
            raise DomainError("continuous mass must be nonnegative")
        if self.continuous_mass > 0 and not (self.jacobi_a > -1 and self.jacobi_b > -1):
            raise DomainError(f"non-integrable exponents a={self.jacobi_a}, b={self.jacobi_b}")
        tol = 1e-12 * (self.support_hi - self.support_lo)
        for loc, mass in self.atoms:
            if mass < 0:
                raise DomainError(f"negative atom mass {mass}")
            if not self.support_lo - tol <= loc <= self.support_hi + tol:
                raise DomainError(f"atom at {loc} outside the support")
        if self.norm_const is not None and not self.norm_const > 0:
            raise DomainError("norm_const must be positive")

    # -- coordinates -----------------------------------------------------
    @property
    def width(self) -> float:
        return self.support_hi - self.support_lo

    def to_standard(self, x):
        return 4.0 * (np.asarray(x, dtype=float) - self.support_lo) / self.width - 2.0

    def from_standard(self, v):
        return self.support_lo + (np.asarray(v, dtype=float) + 2.0) * self.width / 4.0

    # -- normalization and density -----------------------------------------
    @cached_property
    def normalization(self) -> float:
        if self.norm_const is not None:
            return float(self.norm_const)
        if self.continuous_mass == 0:
            return 1.0
        _, w = _standard_rule(self.jacobi_a, self.jacobi_b, self.smooth_factor, DEFAULT_ORDER)
        return float(np.sum(w))

    def unnormalized(self, v):
        v = np.asarray(v, dtype=float)
        return (2.0 - v) ** self.jacobi_a * (2.0 + v) ** self.jacobi_b * self.smooth_factor(v)

    def density(self, x):
        """Density of the continuous part at interior points x."""
        x_arr = np.asarray(x, dtype=float)
        if np.any((x_arr <= self.support_lo) | (x_arr >= self.support_hi)):
            raise DomainError("density is evaluated on the open support only")
        v = self.to_standard(x_arr)
        out = self.continuous_mass * self.unnormalized(v) / self.normalization * (4.0 / self.width)
        return float(out) if np.ndim(out) == 0 else out

    # -- integration -----------------------------------------------------
    def continuous_rule(self, order: int = DEFAULT_ORDER) -> tuple[np.ndarray, np.ndarray]:
        """Nodes and weights with sum(w * f(x)) ~ int f d(continuous part)."""
        if self.continuous_mass == 0:
            return np.empty(0), np.empty(0)
        v, w = _standard_rule(self.jacobi_a, self.jacobi_b, self.smooth_factor, order)
        return self.from_standard(v), w * (self.continuous_mass / self.normalization)

    def expect(self, f: Callable[[np.ndarray], np.ndarray], order: int = DEFAULT_ORDER):
        """Integral of f against the whole measure (continuous part + atoms)."""
        x, w = self.continuous_rule(order)
        total = np.dot(w, f(x)) if len(x) else 0.0
        if self.atoms:
            locs = np.array([loc for loc, _ in self.atoms])
            masses = np.array([mass for _, mass in self.atoms])
            total = total + np.dot(masses, f(locs))
        return complex(total) if np.iscomplexobj(total) else float(total)

    def total_mass(self, order: int = DEFAULT_ORDER) -> float:
        return self.expect(np.ones_like, order)

    def atom_mass(self) -> float:
        return sum(mass for _, mass in self.atoms)


def affine_pushforward(measure: SpectralMeasure, scale: float, shift: float) -> SpectralMeasure:
    """Image of ``measure`` under x -> scale * x + shift."""
    if scale == 0:
        raise DomainError("scale must be nonzero")
    lo = scale * measure.support_lo + shift
    hi = scale * measure.support_hi + shift
    atoms = tuple((scale * loc + shift, mass) for loc, mass in measure.atoms)
    if scale > 0:
        return replace(measure, support_lo=lo, support_hi=hi, atoms=atoms)
    return replace(
        measure,
        support_lo=hi,
        support_hi=lo,
        jacobi_a=measure.jacobi_b,
        jacobi_b=measure.jacobi_a,
        smooth_factor=measure.smooth_factor.reflected(),
        atoms=atoms,
    )


def wigner_measure() -> SpectralMeasure:
    return SpectralMeasure(jacobi_a=0.5, jacobi_b=0.5, norm_const=2 * math.pi, name="wigner")


def arcsine_measure(mass: float = 1.0) -> SpectralMeasure:
    return SpectralMeasure(
        jacobi_a=-0.5, jacobi_b=-0.5, norm_const=math.pi, continuous_mass=mass, name="arcsine"
    )


def point_mass(location: float, lo: float = -2.0, hi: float = 2.0) -> SpectralMeasure:
    return SpectralMeasure(support_lo=lo, support_hi=hi, atoms=((location, 1.0),), continuous_mass=0.0)


@dataclass(frozen=True)
class FamilySpec:
    """One member mu_lambda of the four families, with its derived data."""

    family_id: int
    lam: float

    def __post_init__(self):
        if self.family_id not in LAMBDA_MIN:
            raise DomainError(f"family must be 1..4, got {self.family_id}")
        if not self.lam > LAMBDA_MIN[self.family_id]:
            raise DomainError(
                f"family {self.family_id} needs lambda > {LAMBDA_MIN[self.family_id]}, got {self.lam}"
            )

    @property
    def lambda_min(self) -> float:
        return LAMBDA_MIN[self.family_id]

    @property
    def alpha(self) -> float:
        lam = self.lam
        return {1: 1.0, 2: 1 - 1 / lam, 3: 1 - 1 / (2 * lam), 4: 1 - 1 / (2 * lam)}[self.family_id]

    @property
    def gamma(self) -> float:
        lam = self.lam
        return {1: 0.0, 2: 1 / lam, 3: 1 / (2 * lam), 4: 1 / (2 * lam)}[self.family_id]

    @property
    def sigma2(self) -> float:
        lam = self.lam
        if self.family_id == 1:
            return (1 + lam) / 2
        if self.family_id == 2:
            return lam / 2
        return lam * lam / (2 * lam - 1)

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)

    @property
    def m(self) -> float:
        if self.family_id == 3:
            return 1 / math.sqrt(2 * self.lam - 1)
        if self.family_id == 4:
            return -1 / math.sqrt(2 * self.lam - 1)
        return 0.0

    @property
    def utilde(self) -> str:
        return UTILDE[self.family_id]

    @property
    def gtilde(self) -> str:
        return GTILDE[self.family_id]

    @property
    def beta_exponents(self) -> tuple[float, float]:
        """(a, b) of the standardized form (2 - x)^a (2 + x)^b on [-2, 2].

        Families 3 and 4 put the heavier endpoint singularity where their
        Gtilde has its pole (x = 2 for family 3, x = -2 for family 4).
        """
        lam = self.lam
        return {
            1: (lam - 0.5, lam - 0.5),
            2: (lam - 1.5, lam - 1.5),
            3: (lam - 1.5, lam - 0.5),
            4: (lam - 0.5, lam - 1.5),
        }[self.family_id]

    @property
    def affine(self) -> tuple[float, float]:
        """(scale, shift) taking the raw mu_lambda onto its [-2, 2] form."""
        lam = self.lam
        if self.family_id == 1:
            return math.sqrt(2 / (1 + lam)), 0.0
        if self.family_id == 2:
            return math.sqrt(2 / lam), 0.0
        scale = math.sqrt(2 * lam - 1) / lam
        return scale, (1 / lam if self.family_id == 3 else -1 / lam)

    def as_dict(self) -> dict:
        a, b = self.beta_exponents
        scale, shift = self.affine
        return {
            "family": self.family_id,
            "lambda": self.lam,
            "lambda_min": self.lambda_min,
            "alpha": self.alpha,
            "gamma": self.gamma,
            "m": self.m,
            "sigma2": self.sigma2,
            "utilde": self.utilde,
            "gtilde": self.gtilde,
            "beta_a": a,
            "beta_b": b,
            "scale": scale,
            "shift": shift,
        }


def family(family_id: int, lam: float) -> FamilySpec:
    return FamilySpec(int(family_id), float(lam))


def mu_measure(spec: FamilySpec) -> SpectralMeasure:
    """Standardized mu_lambda: (2-x)^a (2+x)^b on [-2, 2], normalized."""
    a, b = spec.beta_exponents
    norm = math.exp((a + b + 1) * math.log(4.0) + betaln(a + 1, b + 1))
    return SpectralMeasure(jacobi_a=a, jacobi_b=b, norm_const=norm, name=f"mu[{spec.family_id}]")


def raw_mu_measure(spec: FamilySpec) -> SpectralMeasure:
    """mu_lambda on its original support (zero mean, unit variance)."""
    scale, shift = spec.affine
    return affine_pushforward(mu_measure(spec), 1 / scale, -shift / scale)


def tau_measure(spec: FamilySpec) -> SpectralMeasure:
    """Measure whose Markov transform is nu_lambda: weighted arcsine + atoms at +-2."""
    lam, fid = spec.lam, spec.family_id
    if fid == 1:
        return replace(arcsine_measure(), name="tau[1]")
    if fid == 2:
        if lam < 1:
            raise NotAProbabilityMeasure(f"tau for family 2 is a signed measure for lambda={lam} < 1")
        atom = 1 / (2 * lam)
        atoms = ((-2.0, atom), (2.0, atom))
        cont = 1 - 1 / lam
    else:
        atom = 1 / (2 * lam)
        atoms = ((2.0 if fid == 3 else -2.0, atom),)
        cont = 1 - atom
    return replace(arcsine_measure(cont), atoms=atoms, name=f"tau[{fid}]")


def nu_measure(spec: FamilySpec) -> SpectralMeasure:
    """nu_lambda, the measure whose CST is the lambda-th root of the GCST of mu."""
    lam, fid = spec.lam, spec.family_id
    if fid == 1:
        return replace(wigner_measure(), name="nu[1]")
    if fid == 2:
        if lam < 1:
            raise NotAProbabilityMeasure(f"nu for family 2 is not a probability measure for lambda={lam} < 1")
        from .moments import norm_constant_family2

        e = -1 / (2 * lam)
        return SpectralMeasure(
            jacobi_a=e,
            jacobi_b=e,
            smooth_factor=SmoothFactor(SmoothKind.COS_ARCSIN, 1 - 1 / lam),
            norm_const=norm_constant_family2(lam),
            name="nu[2]",
        )
    e = -1 / (2 * lam)
    c = 1 - 1 / (2 * lam)
    if fid == 3:
        return SpectralMeasure(
            jacobi_a=e, jacobi_b=0.0, smooth_factor=SmoothFactor(SmoothKind.SIN_SHIFTED_ARCSIN, c), name="nu[3]"
        )
    # family 4 is the mirror image of family 3
    return SpectralMeasure(
        jacobi_a=0.0,
        jacobi_b=e,
        smooth_factor=SmoothFactor(SmoothKind.SIN_SHIFTED_ARCSIN, c, mirrored=True),
        name="nu[4]",
    )


def nu_density(spec: FamilySpec, x):
    """Normalized density of nu_lambda at interior x in (-2, 2)."""
    return nu_measure(spec).density(x)
