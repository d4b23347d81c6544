"""Quadrature conventions, state descriptors and Gaussian-noise algebra.

Conventions, fixed here once for the whole package:

* hbar = 1, with quadratures x = (a + a^dag)/sqrt(2) and
  p = (a - a^dag)/(i sqrt(2)), so the vacuum (and every coherent state)
  has quadrature variances var_x = var_p = 1/2.
* A complex amplitude encodes quadrature means as beta = (x + i p)/sqrt(2).
  A coherent state |alpha> is therefore centered at x = sqrt(2) Re(alpha),
  p = sqrt(2) Im(alpha), and displacing by beta adds beta to the amplitude.
* Noise covariances are diagonal, (var_x, var_p), in quadrature-squared
  units.  A Gaussian displacement mixture with these variances displaces
  the amplitude by beta with Re(beta) ~ N(0, var_x/2) and
  Im(beta) ~ N(0, var_p/2).

Everything in this module is an immutable value or a pure function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Union

from .errors import DomainError

#: Scalars may be exact (int, Fraction) or floating point; exactness is
#: preserved wherever the inputs allow it.
Scalar = Union[int, float, Fraction]

VACUUM_VARIANCE = Fraction(1, 2)


def _as_amplitude(value) -> complex:
    alpha = complex(value)
    if not (math.isfinite(alpha.real) and math.isfinite(alpha.imag)):
        raise DomainError(f"amplitude must be finite, got {alpha!r}")
    return alpha


def _check_variance(name: str, value) -> None:
    if isinstance(value, bool) or not isinstance(value, Real):
        raise DomainError(f"{name} must be a real number, got {value!r}")
    if not math.isfinite(float(value)) or value < 0:
        raise DomainError(f"{name} must be finite and non-negative, got {value!r}")


@dataclass(frozen=True)
class CoherentState:
    """Coherent state |alpha>; intrinsic variances are 1/2 by convention."""

    alpha: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", _as_amplitude(self.alpha))

    def quadrature_means(self) -> tuple[float, float]:
        return math.sqrt(2.0) * self.alpha.real, math.sqrt(2.0) * self.alpha.imag

    def quadrature_variances(self) -> tuple[float, float]:
        return 0.5, 0.5


@dataclass(frozen=True)
class SqueezedState:
    """Quadrature-squeezed state: var_x = e^{2r}/2, var_p = e^{-2r}/2.

    The uncertainty product stays at the minimum 1/4 for every squeezing
    parameter r; r = 0 reduces to coherent-state semantics.
    """

    alpha: complex
    r: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", _as_amplitude(self.alpha))
        r = float(self.r)
        if not math.isfinite(r):
            raise DomainError(f"squeezing parameter must be finite, got {self.r!r}")
        object.__setattr__(self, "r", r)

    def quadrature_means(self) -> tuple[float, float]:
        return math.sqrt(2.0) * self.alpha.real, math.sqrt(2.0) * self.alpha.imag

    def quadrature_variances(self) -> tuple[float, float]:
        return 0.5 * math.exp(2.0 * self.r), 0.5 * math.exp(-2.0 * self.r)


#: Center states a Gaussian mixture may be built around.
CenterState = Union[CoherentState, SqueezedState]


@dataclass(frozen=True)
class NoiseCovariance:
    """Diagonal covariance of a Gaussian displacement distribution."""

    var_x: Scalar
    var_p: Scalar

    def __post_init__(self):
        _check_variance("var_x", self.var_x)
        _check_variance("var_p", self.var_p)

    @property
    def is_isotropic(self) -> bool:
        return self.var_x == self.var_p

    @property
    def is_zero(self) -> bool:
        return self.var_x == 0 and self.var_p == 0


ZERO_NOISE = NoiseCovariance(0, 0)


@dataclass(frozen=True)
class GaussianMixtureState:
    """A center state convolved with a Gaussian displacement distribution.

    Zero noise represents the pure center state; total second moments are
    intrinsic plus noise, per quadrature.
    """

    center: CenterState
    noise: NoiseCovariance

    def __post_init__(self):
        if not isinstance(self.center, (CoherentState, SqueezedState)):
            raise TypeError(f"unsupported center state {type(self.center).__name__}")
        if not isinstance(self.noise, NoiseCovariance):
            raise TypeError("noise must be a NoiseCovariance")

    @property
    def is_pure(self) -> bool:
        return self.noise.is_zero

    def quadrature_means(self) -> tuple[float, float]:
        return self.center.quadrature_means()

    def quadrature_variances(self) -> tuple[float, float]:
        vx, vp = self.center.quadrature_variances()
        return vx + float(self.noise.var_x), vp + float(self.noise.var_p)


def displace(state, beta):
    """Displace a state: amplitudes add, any noise is left untouched.

    The global phase of D(beta) is irrelevant at the density-operator
    level, so displacement is plain complex addition on the center.
    """
    beta = _as_amplitude(beta)
    if isinstance(state, CoherentState):
        return CoherentState(state.alpha + beta)
    if isinstance(state, SqueezedState):
        return SqueezedState(state.alpha + beta, state.r)
    if isinstance(state, GaussianMixtureState):
        return GaussianMixtureState(displace(state.center, beta), state.noise)
    raise TypeError(f"cannot displace {type(state).__name__}")


def overlap_sq(a, b) -> float:
    """Squared overlap |<a|b>|^2 = exp(-|a - b|^2) of two coherent states."""
    return math.exp(-abs(_as_amplitude(a) - _as_amplitude(b)) ** 2)


def add_noise(n1: NoiseCovariance, n2: NoiseCovariance) -> NoiseCovariance:
    """Convolve two displacement distributions: variances add componentwise."""
    return NoiseCovariance(n1.var_x + n2.var_x, n1.var_p + n2.var_p)
