"""Named verification suites backing the ``verify-*`` CLI commands.

Each suite returns a :class:`VerificationReport` whose checks carry the
expected value, the observed value and the tolerance used, so failures are
diagnosable from the report alone.  ``verify_bounds`` is purely exact
arithmetic, ``verify_fock`` runs the truncated-Fock oracle against the
closed forms, and ``verify_mc`` runs the seeded measurement simulations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import cloner, estimation_bounds, fock_oracle
from .cloner import UNBOUNDED, optimal_cloner, optimal_fidelity, optimal_noise_variance
from .estimation_bounds import (
    MeasurementWeights,
    holevo_rhs,
    simulate_heterodyne_estimate,
    simulate_joint_measurement,
    symmetric_variance_bound,
    weight_ratio_grid,
)
from .fock_oracle import (
    QuadratureGrid,
    cascade_density_check,
    coherent_fock_vector,
    default_cutoff,
    fidelity_against,
    mixture_density_matrix,
    quadrature_moments,
    squeezed_fock_vector,
)
from .quadrature_core import CoherentState, GaussianMixtureState, NoiseCovariance, SqueezedState

ORACLE_SCENARIOS = ((1, 2), (1, 3), (2, 3), (2, 4), (3, 5))
ORACLE_CENTERS = (0j, 1 + 0j, 1 + 1j, 2 - 1j)
SATURATION_SEEDS = (42, 7, 1001)
HETERODYNE_COPIES = (1, 2, 4, 8)
ADDITIVITY_PAIRS = (
    (NoiseCovariance(0.5, 0.5), NoiseCovariance(0.25, 0.25)),
    (NoiseCovariance(0.5, 0.5), NoiseCovariance(0.0, 0.0)),
    (NoiseCovariance(0.5, 0.5), NoiseCovariance(0.5, 0.5)),
)


@dataclass(frozen=True)
class Check:
    name: str
    expected: float
    observed: float
    tolerance: float
    passed: bool

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "expected": self.expected,
            "observed": self.observed,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(check.passed for check in self.checks)

    def as_dict(self) -> dict:
        return {"checks": [c.as_dict() for c in self.checks], "overall": self.overall}


def _close(name: str, expected, observed, tolerance) -> Check:
    expected = float(expected)
    observed = float(observed)
    return Check(name, expected, observed, float(tolerance), abs(observed - expected) <= tolerance)


def _count(name: str, total: int, good: int) -> Check:
    return Check(name, float(total), float(good), 0.0, good == total)


def _at_least(name: str, bound, observed) -> Check:
    return Check(name, float(bound), float(observed), 0.0, observed >= bound)


def verify_bounds(max_count: int = 64, cascade_max: int = 32, k_max: int = 16) -> VerificationReport:
    """Exact identities of the closed-form and bound layers."""
    report = VerificationReport()
    add = report.checks.append

    anchors = [
        ("noise variance (1,2)", optimal_noise_variance(1, 2).var_x, 0.5),
        ("fidelity (1,2)", optimal_fidelity(1, 2).value, 2 / 3),
        ("noise variance (5,5)", optimal_noise_variance(5, 5).var_x, 0.0),
        ("fidelity (7,7)", optimal_fidelity(7, 7).value, 1.0),
        ("noise variance (1,inf)", optimal_noise_variance(1, UNBOUNDED).var_x, 1.0),
        ("fidelity (1,inf)", optimal_fidelity(1, UNBOUNDED).value, 0.5),
        ("fidelity (3,inf)", optimal_fidelity(3, UNBOUNDED).value, 0.75),
        ("noise variance (2,4)", optimal_noise_variance(2, 4).var_x, 0.25),
    ]
    for name, got, want in anchors:
        add(_close(name, want, got, 0.0))

    pairs = [(n, m) for n in range(1, max_count + 1) for m in range(n, max_count + 1)]
    pairs += [(n, UNBOUNDED) for n in range(1, max_count + 1)]
    good = sum(
        estimation_bounds.cloning_lower_bound(n, m) == optimal_noise_variance(n, m).var_x
        for n, m in pairs
    )
    add(_count(f"bound-chain identity (N<=M<={max_count}, inf)", len(pairs), good))

    good = sum(
        cloner.fidelity_from_variance(optimal_noise_variance(n, m)) == optimal_fidelity(n, m)
        for n, m in pairs
    )
    add(_count(f"fidelity-variance consistency (N<=M<={max_count}, inf)", len(pairs), good))

    triples = [
        (n, m, l)
        for n in range(1, cascade_max + 1)
        for m in range(n, cascade_max + 1)
        for l in range(m, cascade_max + 1)
    ]
    good = sum(
        cloner.cascade(optimal_cloner(n, m), optimal_cloner(m, l)).noise
        == optimal_noise_variance(n, l)
        for n, m, l in triples
    )
    add(_count(f"optimal-cascade closure (N<=M<=L<={cascade_max})", len(triples), good))

    good = 0
    total = 0
    for n, m in ((1, 2), (1, 3), (2, 3)):
        for k in range(1, k_max):
            total += 1
            ok = (
                optimal_noise_variance((k + 1) * n, (k + 1) * m).var_x
                < optimal_noise_variance(k * n, k * m).var_x
                and optimal_fidelity((k + 1) * n, (k + 1) * m)
                > optimal_fidelity(k * n, k * m)
            )
            good += ok
    add(_count(f"monotonicity in k (k<={k_max})", total, good))

    big = 10**4
    add(
        _at_least(
            "many-input limit f(N,N+1) -> 1",
            1 - 1e-6,
            float(optimal_fidelity(big, big + 1)),
        )
    )

    add(_close("simultaneous-measurement margin at (1,1)", 0.0,
               estimation_bounds.arthurs_kelly_margin(1.0, 1.0), 0.0))
    add(_close("1->2 chain margin at noise 1/2", 0.0,
               estimation_bounds.chain_bound_1to2(0.5, 0.5, 0.5), 0.0))
    add(_close("1->2 chain margin at noise 1", 1.25,
               estimation_bounds.chain_bound_1to2(0.5, 0.5, 1.0), 0.0))
    add(_close("1->2 chain margin at noise 1/4", -0.4375,
               estimation_bounds.chain_bound_1to2(0.5, 0.5, 0.25), 0.0))

    ratios = weight_ratio_grid()
    bounds = np.array([symmetric_variance_bound(MeasurementWeights(g, 1.0)) for g in ratios])
    peak = int(np.argmax(bounds))
    add(_close("weight sweep: symmetric bound peaks at 1", 1.0, bounds[peak], 1e-12))
    add(_close("weight sweep: peak sits at g_x = g_p", 1.0, ratios[peak], 0.0))
    off_center = np.delete(bounds, peak)
    add(_count("weight sweep: bound < 1 off the symmetric point",
               off_center.size, int(np.sum(off_center < 1.0))))
    return report


def _oracle_fidelity(n: int, m, center: complex, grid: QuadratureGrid,
                     cutoff=None, eps_trunc=fock_oracle.DEFAULT_EPS_TRUNC):
    state = CoherentState(center)
    mix = cloner.clone_reduced_output(optimal_cloner(n, m), state)
    cut = cutoff if cutoff is not None else default_cutoff(state, mix.noise)
    rho = mixture_density_matrix(mix, cut, grid, eps_trunc)
    return fidelity_against(coherent_fock_vector(state.alpha, cut, eps_trunc), rho), rho


def verify_fock(
    tolerance: float = 1e-5,
    nodes: int = fock_oracle.DEFAULT_NODES,
    cutoff: int | None = None,
    eps_trunc: float = fock_oracle.DEFAULT_EPS_TRUNC,
) -> VerificationReport:
    """Truncated-Fock oracle against the closed-form layer.

    ``tolerance`` gates the oracle-vs-closed-form fidelity checks; the
    physicality, moment, additivity and convergence tolerances are fixed.
    """
    report = VerificationReport()
    add = report.checks.append
    grid = QuadratureGrid(nodes)

    worst_herm = 0.0
    worst_trace = 1.0
    worst_eig = math.inf

    scenarios = list(ORACLE_SCENARIOS) + [(1, UNBOUNDED)]
    for n, m in scenarios:
        want = float(optimal_fidelity(n, m))
        fids = []
        for center in ORACLE_CENTERS:
            fid, rho = _oracle_fidelity(n, m, center, grid, cutoff, eps_trunc)
            fids.append(fid)
            worst_herm = max(worst_herm, rho.hermiticity_defect())
            worst_trace = min(worst_trace, rho.trace())
            worst_eig = min(worst_eig, rho.min_eigenvalue())
        label = "inf" if m is UNBOUNDED else m
        add(_close(f"oracle fidelity ({n},{label})", want, max(fids, key=lambda f: abs(f - want)),
                   tolerance))
        add(_close(f"center invariance ({n},{label})", 0.0, max(fids) - min(fids), tolerance))

    add(_close("physicality: hermiticity defect", 0.0, worst_herm, 1e-12))
    add(_at_least("physicality: trace >= 1 - eps_trunc", 1 - eps_trunc, worst_trace))
    add(_at_least("physicality: min eigenvalue >= -1e-10", -1e-10, worst_eig))

    rho = mixture_density_matrix(
        GaussianMixtureState(CoherentState(0j), NoiseCovariance(0.5, 0.5)),
        cutoff, grid, eps_trunc,
    )
    moments = quadrature_moments(rho)
    add(_close("moments: var_x of vacuum + noise 1/2", 1.0, moments.var_x, 1e-6))
    add(_close("moments: var_p of vacuum + noise 1/2", 1.0, moments.var_p, 1e-6))
    rho = mixture_density_matrix(
        GaussianMixtureState(CoherentState(1 + 1j), NoiseCovariance(1.0, 1.0)),
        cutoff, grid, eps_trunc,
    )
    moments = quadrature_moments(rho)
    add(_close("moments: mean_x of center 1+1j", math.sqrt(2.0), moments.mean_x, 1e-6))
    add(_close("moments: mean_p of center 1+1j", math.sqrt(2.0), moments.mean_p, 1e-6))
    add(_close("moments: var_x of center 1+1j + noise 1", 1.5, moments.var_x, 1e-6))

    vacuum = CoherentState(0j)
    for i, (first, second) in enumerate(ADDITIVITY_PAIRS, start=1):
        diff = cascade_density_check(vacuum, first, second, cutoff, grid)
        tol = 0.0 if second.is_zero else 1e-6
        add(_close(f"cascade additivity pair {i}", 0.0, diff, tol))

    ref_state = CoherentState(1 + 0j)
    ref_mix = cloner.clone_reduced_output(optimal_cloner(1, 2), ref_state)
    base_cut = cutoff if cutoff is not None else default_cutoff(ref_state, ref_mix.noise)
    f_base = fidelity_against(
        coherent_fock_vector(1 + 0j, base_cut, eps_trunc),
        mixture_density_matrix(ref_mix, base_cut, grid, eps_trunc),
    )
    fine_cut = 2 * base_cut
    f_fine = fidelity_against(
        coherent_fock_vector(1 + 0j, fine_cut, eps_trunc),
        mixture_density_matrix(ref_mix, fine_cut, QuadratureGrid(2 * grid.nodes_per_axis),
                               eps_trunc),
    )
    add(_close("convergence under doubled cutoff and grid", 0.0, abs(f_fine - f_base), 1e-7))

    spec = cloner.squeezed_variant(1, 2, 0.5)
    sq_center = SqueezedState(0j, 0.5)
    sq_mix = cloner.clone_reduced_output(spec, sq_center)
    sq_cut = cutoff if cutoff is not None else default_cutoff(sq_center, spec.noise)
    sq_rho = mixture_density_matrix(sq_mix, sq_cut, grid, eps_trunc)
    sq_fid = fidelity_against(squeezed_fock_vector(0j, 0.5, sq_cut, eps_trunc), sq_rho)
    add(_close("squeezed variant fidelity (1,2,r=0.5)", 2 / 3, sq_fid, 1e-4))
    add(_close("squeezed variant noise product", 0.25,
               spec.noise.var_x * spec.noise.var_p, 0.0))
    return report


def verify_mc(samples: int = 10**6, seed: int = 42) -> VerificationReport:
    """Seeded Monte Carlo checks of the measurement simulations.

    Statistical comparisons use a five-standard-error allowance.
    """
    report = VerificationReport()
    add = report.checks.append
    vacuum = CoherentState(0j)

    seeds = (seed,) + tuple(s for s in SATURATION_SEEDS if s != seed)
    for s in seeds:
        rep = simulate_joint_measurement(0.5, vacuum, samples, s)
        add(_close(f"joint measurement var_x (seed {s})", 1.0, rep.var_x_hat, 5 * rep.stderr_x))
        add(_close(f"joint measurement var_p (seed {s})", 1.0, rep.var_p_hat, 5 * rep.stderr_p))
        prod = rep.var_x_hat * rep.var_p_hat
        prod_se = math.hypot(rep.var_p_hat * rep.stderr_x, rep.var_x_hat * rep.stderr_p)
        add(_close(f"joint measurement variance product (seed {s})", 1.0, prod, 5 * prod_se))

    rep = simulate_joint_measurement(0.0, vacuum, samples, seed)
    add(_close("noiseless clone var_x", 0.5, rep.var_x_hat, 5 * rep.stderr_x))
    rep = simulate_joint_measurement(1.0, CoherentState(2 + 1j), samples, seed)
    add(_close("displaced center var_x at noise 1", 1.5, rep.var_x_hat, 5 * rep.stderr_x))

    for n in HETERODYNE_COPIES:
        rep = simulate_heterodyne_estimate(1 + 1j, n, samples, seed)
        add(_close(f"heterodyne estimate var_x (N={n})", 1 / n, rep.var_x_hat, 5 * rep.stderr_x))
        add(_close(f"heterodyne estimate var_p (N={n})", 1 / n, rep.var_p_hat, 5 * rep.stderr_p))
        se_mean = math.sqrt(rep.var_x_hat / samples)
        add(_close(f"heterodyne estimate unbiased (N={n})",
                   math.sqrt(2.0), rep.mean_x_hat, 5 * se_mean))

    rep = simulate_heterodyne_estimate(0j, 1, samples, seed)
    ratios = weight_ratio_grid()
    violations = 0
    for g in ratios:
        weights = MeasurementWeights(g, 1.0)
        lhs = g * rep.var_x_hat + rep.var_p_hat
        slack = 5 * (g * rep.stderr_x + rep.stderr_p)
        if lhs < holevo_rhs(weights, 0.5, 0.5) - slack:
            violations += 1
    add(_count("weighted bound holds across the ratio grid", ratios.size, ratios.size - violations))

    again = simulate_heterodyne_estimate(0j, 1, samples, seed)
    add(_count("determinism: identical seed, identical report", 1, int(again == rep)))
    return report
