"""Measurement-theoretic variance bounds and seeded Monte Carlo checks.

The bound chain ties cloning to joint x/p estimation: cloning N inputs and
then measuring the clones can never beat the optimal joint measurement on
the inputs themselves.  The optimal joint measurement on N copies reaches
measured-value variance 1/N per quadrature, so the cloning noise must be at
least the gap 1/N - 1/M between the N-copy and M-copy measurement limits --
exactly the optimal cloner's noise variance.

Monte Carlo simulations here model measurement outcomes semiclassically:
Gaussian outcome distributions with the correct means and variances.  The
bound chain only involves outcome variances, so nothing operator-level is
needed (the Fock oracle covers that side).  All randomness flows through a
single seeded generator, making every report bit-for-bit reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cloner import _Unbounded
from .errors import DomainError
from .quadrature_core import CoherentState, _as_amplitude


@dataclass(frozen=True)
class MeasurementWeights:
    """Strictly positive weights (g_x, g_p) for the joint-measurement bound."""

    g_x: float
    g_p: float

    def __post_init__(self):
        for name, g in (("g_x", self.g_x), ("g_p", self.g_p)):
            if not (math.isfinite(g) and g > 0):
                raise DomainError(f"{name} must be finite and > 0, got {g!r}")


@dataclass(frozen=True)
class VarianceReport:
    """Sample statistics of a simulated measurement run.

    ``stderr_x``/``stderr_p`` are the standard errors of the reported
    sample variances, var * sqrt(2/(samples - 1)) for Gaussian outcomes.
    Identical (scenario, seed, samples) produce an identical report.
    """

    var_x_hat: float
    var_p_hat: float
    stderr_x: float
    stderr_p: float
    mean_x_hat: float
    mean_p_hat: float
    samples: int
    seed: int

    def __post_init__(self):
        if self.samples < 2:
            raise DomainError("a variance report needs at least 2 samples")
        if self.var_x_hat < 0 or self.var_p_hat < 0:
            raise DomainError("sample variances cannot be negative")


def arthurs_kelly_margin(var_x, var_p):
    """Margin var_x * var_p - 1 of the simultaneous-measurement bound.

    Non-negative for any physically realizable joint measurement of x and p
    on a single copy; a negative margin certifies impossibility.
    """
    if var_x < 0 or var_p < 0:
        raise DomainError("measured variances cannot be negative")
    return var_x * var_p - 1


def holevo_rhs(weights: MeasurementWeights, dx2, dp2):
    """Right-hand side g_x dx2 + g_p dp2 + sqrt(g_x g_p) of the weighted bound.

    ``dx2``/``dp2`` are the intrinsic quadrature variances of the state
    being measured (1/2 each for a coherent state).
    """
    if not isinstance(weights, MeasurementWeights):
        weights = MeasurementWeights(*weights)
    if dx2 <= 0 or dp2 <= 0:
        raise DomainError("intrinsic variances must be positive")
    return weights.g_x * dx2 + weights.g_p * dp2 + math.sqrt(weights.g_x * weights.g_p)


def symmetric_variance_bound(weights: MeasurementWeights, dx2=0.5, dp2=0.5):
    """Lower bound on the common variance of a symmetric joint measurement.

    Dividing the weighted bound by g_x + g_p gives
    (g_x dx2 + g_p dp2 + sqrt(g_x g_p)) / (g_x + g_p); for a coherent state
    this is at most 1 with the maximum attained exactly at g_x = g_p, which
    is why the tightest symmetric bound is variance 1.
    """
    rhs = holevo_rhs(weights, dx2, dp2)
    return rhs / (weights.g_x + weights.g_p)


def weight_ratio_grid(points: int = 61) -> np.ndarray:
    """Log-spaced g_x/g_p ratios spanning [1e-3, 1e3], symmetric about 1.

    ``points`` must be odd so the grid contains the ratio 1.0 exactly.
    """
    if points < 3 or points % 2 == 0:
        raise DomainError("the weight grid needs an odd number of points >= 3")
    half = (points - 1) // 2
    exponents = (np.arange(points) - half) * (3.0 / half)
    return 10.0 ** exponents


def optimal_measurement_variance(n_copies: int) -> Fraction:
    """Minimal isotropic measured-value variance, 1/N, for N copies.

    The single-copy optimum is variance 1 per quadrature; with N
    independent copies the optimal joint measurement repeats it and
    averages, reducing the variance by 1/N.
    """
    if isinstance(n_copies, bool) or not isinstance(n_copies, int) or n_copies < 1:
        raise DomainError(f"copy count must be a positive integer, got {n_copies!r}")
    return Fraction(1, n_copies)


def cloning_lower_bound(n_in: int, m_out) -> Fraction:
    """Cloning-noise lower bound 1/N - 1/M from the measurement cascade.

    Equals the optimal noise variance (M - N)/(M N) identically.
    """
    if isinstance(m_out, _Unbounded):
        return optimal_measurement_variance(n_in)
    if isinstance(m_out, bool) or not isinstance(m_out, int):
        raise DomainError(f"output copy count must be an integer or UNBOUNDED, got {m_out!r}")
    if m_out < n_in:
        raise DomainError(f"cloning cannot reduce the copy count: {n_in} -> {m_out}")
    return optimal_measurement_variance(n_in) - optimal_measurement_variance(m_out)


def chain_bound_1to2(dx2, dp2, noise_var):
    """Margin (dx2 + noise)(dp2 + noise) - 1 of the cloned-copy bound.

    Measuring x on one clone and p on the other must still respect the
    simultaneous-measurement limit, so the margin is non-negative for any
    realizable 1 -> 2 cloner; for a coherent input that forces
    noise >= 1/2.
    """
    if dx2 * dp2 < 0.25:
        raise DomainError("intrinsic variances violate dx2 * dp2 >= 1/4")
    if noise_var < 0:
        raise DomainError("cloning noise cannot be negative")
    return (dx2 + noise_var) * (dp2 + noise_var) - 1


def _sample_report(x: np.ndarray, p: np.ndarray, samples: int, seed: int) -> VarianceReport:
    var_x = float(x.var(ddof=1))
    var_p = float(p.var(ddof=1))
    scale = math.sqrt(2.0 / (samples - 1))
    return VarianceReport(
        var_x_hat=var_x,
        var_p_hat=var_p,
        stderr_x=var_x * scale,
        stderr_p=var_p * scale,
        mean_x_hat=float(x.mean()),
        mean_p_hat=float(p.mean()),
        samples=samples,
        seed=seed,
    )


def simulate_joint_measurement(
    noise_var, center: CoherentState, samples: int, seed: int
) -> VarianceReport:
    """Simulate x on one clone and p on the other clone of a 1 -> 2 cloner.

    Per sample, each marginal draws its own displacement from
    N(0, noise_var) and adds the intrinsic quadrature spread of the input
    state on top, so the expected outcome variance is intrinsic + noise
    per quadrature (1/2 + noise_var for a coherent input).  The two
    clones' displacements are drawn independently: only the single-clone
    marginals are modeled, and the measured variances involve nothing else.
    """
    if samples < 2:
        raise DomainError("need at least 2 samples")
    if noise_var < 0:
        raise DomainError("cloning noise cannot be negative")
    if not isinstance(center, CoherentState):
        raise TypeError("center must be a CoherentState")
    rng = np.random.default_rng(seed)
    mean_x, mean_p = center.quadrature_means()
    int_x, int_p = center.quadrature_variances()
    s_noise = math.sqrt(float(noise_var))
    x = mean_x + s_noise * rng.standard_normal(samples) \
        + math.sqrt(int_x) * rng.standard_normal(samples)
    p = mean_p + s_noise * rng.standard_normal(samples) \
        + math.sqrt(int_p) * rng.standard_normal(samples)
    return _sample_report(x, p, samples, seed)


def simulate_heterodyne_estimate(alpha, n_copies: int, samples: int, seed: int) -> VarianceReport:
    """Estimate (x, p) from N copies via the optimal single-copy joint measurement.

    Each copy yields an outcome pair with variance 1 per quadrature around
    the true means; the per-sample estimate is the mean over the N copies,
    so the estimate variance is 1/N per quadrature and the estimator is
    unbiased.
    """
    if samples < 2:
        raise DomainError("need at least 2 samples")
    if isinstance(n_copies, bool) or not isinstance(n_copies, int) or n_copies < 1:
        raise DomainError(f"copy count must be a positive integer, got {n_copies!r}")
    alpha = _as_amplitude(alpha)
    rng = np.random.default_rng(seed)
    mean_x, mean_p = CoherentState(alpha).quadrature_means()
    acc_x = np.zeros(samples)
    acc_p = np.zeros(samples)
    for _ in range(n_copies):
        acc_x += rng.standard_normal(samples)
        acc_p += rng.standard_normal(samples)
    est_x = mean_x + acc_x / n_copies
    est_p = mean_p + acc_p / n_copies
    return _sample_report(est_x, est_p, samples, seed)
