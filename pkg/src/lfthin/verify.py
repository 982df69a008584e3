"""Monte Carlo checks of simulated INAR(1) paths against closed-form moments.

Every statistic is reported with its theoretical value, the formula it comes
from, a standard error and a z-score.  Standard errors of smooth statistics
use batch means of their influence series, which absorbs the serial
dependence; autocorrelations use Bartlett's formula evaluated at the
theoretical ACF.  The marginal chi-square runs on a subsample spaced far
enough apart that the retained values are nearly independent.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .inar import InarSpec, inma_lag, simulate, stationary_moments, theoretical_acf
from .pgf import DEFAULT_K
from .streams import spawn_rngs

Z_THRESHOLD = 4.0
N_BATCHES = 50


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    truncation_K: int = DEFAULT_K
    tolerance: float = 0.05
    output_format: str = "json"
    replicate_count: int = 1
    z_threshold: float = Z_THRESHOLD

    def __post_init__(self):
        if not -(2**63) <= int(self.seed) < 2**64:
            raise ValueError(f"seed must fit in 64 bits, got {self.seed}")
        if self.truncation_K < 16:
            raise ValueError(f"truncation_K must be >= 16, got {self.truncation_K}")
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be > 0, got {self.tolerance}")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"output_format must be csv or json, got {self.output_format!r}")
        if self.replicate_count < 1:
            raise ValueError(f"replicate_count must be >= 1, got {self.replicate_count}")
        if not self.z_threshold > 0:
            raise ValueError(f"z_threshold must be > 0, got {self.z_threshold}")


@dataclass(frozen=True)
class VerificationReport:
    statistic: str
    theoretical: float
    reference: str
    empirical: float
    standard_error: float
    z: float
    passed: bool
    underpowered: bool
    replicate: int = 0

    def as_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "theoretical": self.theoretical,
            "reference": self.reference,
            "empirical": self.empirical,
            "standard_error": self.standard_error,
            "z": self.z,
            "pass": self.passed,
            "underpowered": self.underpowered,
            "replicate": self.replicate,
        }


def _report(name, theo, ref, emp, se, config: RunConfig, replicate: int,
            underpowered: bool | None = None) -> VerificationReport:
    if se > 0:
        z = (emp - theo) / se
    else:
        z = 0.0 if emp == theo else math.copysign(math.inf, emp - theo)
    return VerificationReport(name, float(theo), ref, float(emp), float(se), float(z),
                              bool(abs(z) <= config.z_threshold),
                              bool(se > config.tolerance) if underpowered is None else underpowered, replicate)


def batch_means_se(psi: np.ndarray, n_batches: int = N_BATCHES) -> float:
    """Standard error of ``mean(psi)`` from non-overlapping batch means."""
    n = psi.size // n_batches
    if n < 1:
        raise ValueError("series too short for batch means")
    means = psi[: n * n_batches].reshape(n_batches, n).mean(axis=1)
    return float(means.std(ddof=1) / math.sqrt(n_batches))


def bartlett_se(rho, k: int, T: int, terms: int = 2000) -> float:
    """Bartlett's large-sample standard error of the lag-``k`` sample autocorrelation."""
    i = np.arange(1, terms + 1)
    w = (rho(i + k) + rho(np.abs(i - k)) - 2 * rho(i) * rho(k)) ** 2
    return math.sqrt(float(w.sum()) / T)


def sample_acf(x: np.ndarray, k: int) -> float:
    d = x - x.mean()
    return float(np.dot(d[:-k], d[k:]) / np.dot(d, d))


def marginal_chisquare(sample: np.ndarray, probs: np.ndarray, min_expected: float = 5.0):
    """Pearson statistic and degrees of freedom with sparse upper cells pooled into one."""
    n = sample.size
    counts = np.bincount(sample, minlength=probs.size)
    expected = n * np.asarray(probs, dtype=float)
    # last cell collects everything from its index on
    cut = int(np.flatnonzero(expected >= min_expected)[-1]) if np.any(expected >= min_expected) else 0
    while cut > 0 and n - expected[:cut].sum() < min_expected:
        cut -= 1
    obs = np.append(counts[:cut], counts[cut:].sum())
    exp = np.append(expected[:cut], n - expected[:cut].sum())
    stat = float(np.sum((obs - exp) ** 2 / exp))
    return stat, obs.size - 1


def run_mc_verify(spec: InarSpec, config: RunConfig, T: int = 100_000,
                  burn_in: int | None = None, max_lag: int = 5) -> list[VerificationReport]:
    """Simulate ``config.replicate_count`` independent paths and compare their statistics with theory."""
    m, r = spec.params.m, spec.params.r
    if burn_in is None:
        burn_in = 0 if spec.stationary else inma_lag(m, 1e-12)
    mom = stationary_moments(spec)
    mu_eps = float(spec.innovation.mean)
    disp = mom.variance / mom.mean
    reports = []
    for rep, rng in enumerate(spawn_rngs(config.seed, config.replicate_count)):
        path = simulate(spec, T + burn_in, rng)
        x = path.x[burn_in + 1:].astype(float)
        prev = path.x[burn_in:-1].astype(float)
        thinned = path.thinned[burn_in + 1:].astype(float)
        eps = path.innovation[burn_in + 1:].astype(float)

        def add(name, theo, ref, emp, psi):
            reports.append(_report(name, theo, ref, emp, batch_means_se(psi), config, rep))

        mean = x.mean()
        d = x - mean
        var = float(np.mean(d * d))
        add("mean", mom.mean, "E X = E eps / (1 - m)", mean, x)
        add("variance", mom.variance,
            "Var X = (m (2r + 1 - m) E X + Var eps) / (1 - m^2)", var, d * d - var)
        add("dispersion_index", disp, "Var X / E X", var / mean,
            (d * d - var) / mean - var * d / mean**2)
        add("innovation_mean", mu_eps, "E eps", eps.mean(), eps)
        s_prev = prev.mean()
        ratio = thinned.mean() / s_prev
        add("thinning_mean_ratio", m, "E[(m,r).x | x] = m x", ratio, (thinned - ratio * prev) / s_prev)
        resid = thinned - m * prev
        cvar = float(np.mean(resid**2)) / s_prev
        add("thinning_variance_ratio", m * (2 * r + 1 - m),
            "Var[(m,r).x | x] = m (2r + 1 - m) x", cvar, (resid**2 - cvar * prev) / s_prev)

        def rho(i):
            return np.asarray(m, dtype=float) ** np.asarray(i, dtype=float)

        for k in range(1, max_lag + 1):
            se = bartlett_se(rho, k, x.size)
            reports.append(_report(f"acf_{k}", theoretical_acf(spec.params, k), "corr(X_t, X_{t+k}) = m^k",
                                   sample_acf(x, k), se, config, rep))

        if spec.marginal is not None:
            stride = max(1, inma_lag(m, 1e-2))
            sub = path.x[burn_in + 1::stride]
            law = spec.marginal.pmf(config.truncation_K)
            probs = np.append(law.probs, max(0.0, 1.0 - math.fsum(law.probs)))
            stat, df = marginal_chisquare(sub, probs)
            reports.append(_report(
                "marginal_chisquare", df, f"Pearson X^2 vs stationary marginal, every {stride}th value",
                stat, math.sqrt(2 * df), config, rep, underpowered=df < 1))
    return reports
