"""INAR(1) processes ``X_t = (m, r) . X_{t-1} + eps_t`` with ``m < 1``.

Covers stationary constructions with BerG, CompNB and zero-modified
geometric marginals, path simulation (recursive and moving-average forms),
moment and autocorrelation formulas, the stationarity criteria and the
joint pgf of consecutive observations.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .berg import CompNBParams, ZMGParams, sum_berg, zmg_to_berg
from .distributions import BerG, CompNB, Convolution, PointMass
from .pgf import DEFAULT_K, CriterionResult, convolve, integrate_criterion, max_abs_diff
from .semigroup import BOUNDARY_EPS, ParameterError, ThinningParams, pgf_eval
from .streams import make_rng
from .thinning import thin_marginal_pmf

# --- specification ---------------------------------------------------------------


@dataclass(frozen=True)
class InarSpec:
    """Thinning parameters, innovation law and law of ``X_0``.

    ``marginal`` is set for the stationary constructions and is then also the
    law of ``X_0``.
    """

    params: ThinningParams
    innovation: object
    initial: object
    marginal: object | None = None
    decomposition: "InnovationDecomposition | None" = None

    def __post_init__(self):
        if not self.params.in_r1:
            raise ParameterError(f"INAR(1) needs m < 1, got m={self.params.m}")
        for name in ("innovation", "initial"):
            d = getattr(self, name)
            if not (hasattr(d, "pmf") and hasattr(d, "sample")):
                raise TypeError(f"{name} must be a distribution handle")

    @property
    def stationary(self) -> bool:
        return self.marginal is not None


@dataclass(frozen=True)
class InnovationDecomposition:
    """``psi_{m',r'}(s) / psi_{m',r'}(psi_{m,r}(s)) = psi_first(s) psi_second(s)``.

    ``second`` is None when it is the constant pgf 1 (``r' = r/(1-m)``).
    """

    first: ThinningParams
    second: ThinningParams | None

    @property
    def second_degenerate(self) -> bool:
        return self.second is None

    @property
    def mean(self) -> float:
        return self.first.m + (0.0 if self.second is None else self.second.m)


class ConstraintViolation(ParameterError):
    """One or more named inequalities of a stationary construction failed."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


def _bounds(m: float, r: float) -> tuple[float, float, float]:
    lower = -r / (1 - m)
    upper = min(r / m, 1.0)
    r_min = r / (1 - m)
    return lower, upper, r_min


def berg_marginal_violations(p: ThinningParams, marginal: ThinningParams) -> list[str]:
    """Named failures of ``-r/(1-m) < m'-r' <= min(r/m, 1)`` and ``r' >= r/(1-m)``."""
    if not p.in_r1:
        return [f"m={p.m} must be < 1"]
    lower, upper, r_min = _bounds(p.m, p.r)
    d = marginal.m - marginal.r
    out = []
    if not d > lower:
        out.append(f"m'-r' > -r/(1-m) fails: {d:.17g} <= {lower:.17g}")
    if d > upper + BOUNDARY_EPS:
        out.append(f"m'-r' <= min(r/m, 1) fails: {d:.17g} > {upper:.17g}")
    if marginal.r < r_min - BOUNDARY_EPS:
        out.append(f"r' >= r/(1-m) fails: {marginal.r:.17g} < {r_min:.17g}")
    return out


def innovation_decompose(p: ThinningParams, marginal: ThinningParams) -> InnovationDecomposition:
    """Split the innovation pgf of a stationary BerG(m', r') marginal into two BerG factors."""
    bad = berg_marginal_violations(p, marginal)
    if bad:
        raise ConstraintViolation(bad)
    m, r = p.m, p.r
    mp, rp = marginal.m, marginal.r
    d = rp - mp
    m1 = r + d * (m - 1)
    r1 = max(0.0, r + d * m)
    m1 = min(m1, r1 + 1)  # round-off at the boundary m' - r' = 1
    first = ThinningParams(m1, r1)
    m2 = rp * (1 - m) - r
    if m2 <= BOUNDARY_EPS * max(1.0, rp):
        return InnovationDecomposition(first, None)
    return InnovationDecomposition(first, ThinningParams(m2, rp))


# --- stationary constructions ----------------------------------------------------


def build_stationary_berg(p: ThinningParams, marginal: ThinningParams) -> InarSpec:
    dec = innovation_decompose(p, marginal)
    parts = (BerG(dec.first),) if dec.second is None else (BerG(dec.first), BerG(dec.second))
    innovation = parts[0] if len(parts) == 1 else Convolution(parts)
    law = BerG(marginal)
    return InarSpec(p, innovation, law, law, dec)


def compnb_marginal_violations(p: ThinningParams, marginal: ThinningParams) -> list[str]:
    """Named failures of ``0 <= r'-m' < r/(1-m)`` and ``r' >= r/(1-m)``."""
    if not p.in_r1:
        return [f"m={p.m} must be < 1"]
    _, _, r_min = _bounds(p.m, p.r)
    d = marginal.r - marginal.m
    out = []
    if d < 0:
        out.append(f"r'-m' >= 0 fails: {d:.17g} < 0")
    if not d < r_min:
        out.append(f"r'-m' < r/(1-m) fails: {d:.17g} >= {r_min:.17g}")
    if marginal.r < r_min - BOUNDARY_EPS:
        out.append(f"r' >= r/(1-m) fails: {marginal.r:.17g} < {r_min:.17g}")
    return out


def build_stationary_compnb(p: ThinningParams, marginal: ThinningParams, a: float) -> InarSpec:
    """Stationary process with CompNB(m', r', a) marginal; innovation is a CompNB convolution."""
    bad = compnb_marginal_violations(p, marginal)
    if not a > 0:
        bad.append(f"a > 0 fails: a={a}")
    if bad:
        raise ConstraintViolation(bad)
    dec = innovation_decompose(p, marginal)
    if dec.first.m - dec.first.r > BOUNDARY_EPS:
        raise ConstraintViolation([f"m1 - r1 <= 0 fails: {dec.first.m - dec.first.r:.3g}"])
    first = CompNB(CompNBParams(dec.first.m, max(dec.first.r, dec.first.m), a))
    if dec.second is None:
        innovation = first
    else:
        innovation = Convolution((first, CompNB(CompNBParams(dec.second.m, dec.second.r, a))))
    law = CompNB(CompNBParams(marginal.m, marginal.r, a))
    return InarSpec(p, innovation, law, law, dec)


def zmg_violations(p: ThinningParams, z: ZMGParams) -> list[str]:
    if not p.in_r1:
        return [f"m={p.m} must be < 1"]
    m, r = p.m, p.r
    lo, hi = -min(r / m, 1.0), r / (1 - m)
    pm = z.pi * z.mu
    out = []
    if not pm > lo:
        out.append(f"pi*mu > -min(r/m, 1) fails: {pm:.17g} <= {lo:.17g}")
    if not pm < hi:
        out.append(f"pi*mu < r/(1-m) fails: {pm:.17g} >= {hi:.17g}")
    if not z.mu > hi:
        out.append(f"mu > r/(1-m) fails: {z.mu:.17g} <= {hi:.17g}")
    return out


def build_stationary_zmg(p: ThinningParams, z: ZMGParams) -> InarSpec:
    bad = zmg_violations(p, z)
    if bad:
        raise ConstraintViolation(bad)
    return build_stationary_berg(p, zmg_to_berg(z))


def stationary_fixed_point_error(spec: InarSpec, K: int = DEFAULT_K, atoms: int | None = None) -> float:
    """Largest entrywise gap between ``(m,r).X + eps`` and ``X`` for the marginal law."""
    if spec.marginal is None:
        raise ValueError("spec has no stationary marginal")
    law = spec.marginal.pmf(K)
    step = convolve(thin_marginal_pmf(spec.params, law), spec.innovation.pmf(K))
    n = K + 1 if atoms is None else atoms
    return max_abs_diff(step.probs[:n], law.probs[:n])


# --- simulation ---------------------------------------------------------------------


@dataclass(frozen=True)
class InarPath:
    """Simulated path; ``x[t] = thinned[t] + innovation[t]`` for ``t >= 1``."""

    x: np.ndarray
    thinned: np.ndarray
    innovation: np.ndarray
    t: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.t is None:
            object.__setattr__(self, "t", np.arange(self.x.size))

    def __len__(self):
        return self.x.size

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(["t", "x", "thinned", "innovation"])
        for row in zip(self.t.tolist(), self.x.tolist(), self.thinned.tolist(), self.innovation.tolist()):
            w.writerow(row)
        return buf.getvalue()


def simulate(spec: InarSpec, T: int, seed=None) -> InarPath:
    """Simulate ``X_0, ..., X_T``; row 0 holds ``X_0`` with zero thinned and innovation parts."""
    rng = make_rng(seed)
    x0 = int(spec.initial.sample(rng))
    eps = np.asarray(spec.innovation.sample(rng, T), dtype=np.int64)
    m, r = spec.params.m, spec.params.r
    p_nonzero = m / (r + 1.0)
    p_stop = 1.0 / (r + 1.0)
    x = np.empty(T + 1, dtype=np.int64)
    thinned = np.zeros(T + 1, dtype=np.int64)
    x[0] = x0
    binomial, negbin = rng.binomial, rng.negative_binomial
    prev = x0
    for t in range(1, T + 1):
        n = binomial(prev, p_nonzero) if prev else 0
        if n and r > 0:
            n += negbin(n, p_stop)
        thinned[t] = n
        prev = n + eps[t - 1]
        x[t] = prev
    innovation = np.concatenate([[0], eps])
    return InarPath(x, thinned, innovation)


def inma_lag(m: float, tol: float = 1e-6) -> int:
    """Smallest ``L`` with ``m**L < tol``."""
    if m <= 0:
        return 0
    return max(0, math.floor(math.log(tol) / math.log(m)) + 1)


def inma_simulate(spec: InarSpec, T: int, L: int, seed=None) -> InarPath:
    """``X_t = sum_{k=0}^{L} (m,r)^k . eps'_{t-k}`` for ``t = 0..T-1``.

    Each innovation cohort is thinned one step per time unit, so the
    ``(m,r)^k`` survivors of ``eps'_j`` are nested across ``k`` as in the
    recursion and consecutive values share their thinning draws.
    ``thinned`` holds the ``k >= 1`` part and ``innovation`` the ``k = 0``
    term ``eps'_t``.
    """
    rng = make_rng(seed)
    eps = np.asarray(spec.innovation.sample(rng, T + L), dtype=np.int64)
    current = eps[L:].copy()
    older = np.zeros(T, dtype=np.int64)
    cohort = eps.copy()
    for k in range(1, L + 1):
        # cohorts past index T + L - k - 1 never reach age k inside the window
        cohort = sum_berg(spec.params, cohort[: T + L - k], rng)
        older += cohort[L - k: L - k + T]
    return InarPath(current + older, older, current)


# --- moments --------------------------------------------------------------------------


@dataclass(frozen=True)
class Moments:
    mean: float
    variance: float


def _innovation_moments(spec: InarSpec) -> tuple[float, float]:
    mu, var = float(spec.innovation.mean), float(spec.innovation.var)
    if not (math.isfinite(mu) and math.isfinite(var)):
        raise ValueError("innovation mean and variance must be finite")
    return mu, var


def conditional_moments(spec: InarSpec, x_prev: int) -> Moments:
    m, r = spec.params.m, spec.params.r
    mu, var = _innovation_moments(spec)
    return Moments(m * x_prev + mu, m * (2 * r + 1 - m) * x_prev + var)


def transient_moments(spec: InarSpec, t: int, mean0: float, var0: float) -> Moments:
    """Mean and variance of ``X_t`` from those of ``X_0``."""
    m, r = spec.params.m, spec.params.r
    mu, var_eps = _innovation_moments(spec)
    means = [mean0]
    for _ in range(t):
        means.append(m * means[-1] + mu)
    variance = m ** (2 * t) * var0
    variance += (2 * r + 1 - m) * math.fsum(m ** (2 * k - 1) * means[t - k] for k in range(1, t + 1))
    variance += var_eps * math.fsum(m ** (2 * (k - 1)) for k in range(1, t + 1))
    return Moments(means[t], variance)


def theoretical_acf(p: ThinningParams, k: int) -> float:
    return p.m**k


def stationary_moments(spec: InarSpec) -> Moments:
    m, r = spec.params.m, spec.params.r
    mu, var_eps = _innovation_moments(spec)
    mu_x = mu / (1 - m)
    return Moments(mu_x, (m * (2 * r + 1 - m) * mu_x + var_eps) / (1 - m * m))


# --- stationarity criteria -------------------------------------------------------------


@dataclass(frozen=True)
class StationarityReport:
    limit_exists: bool
    integral: CriterionResult
    log_moment: float
    log_moment_finite: bool
    innovation_mean: float
    mean_positive_finite: bool
    tail_bound: float


def stationarity_check(spec: InarSpec, K: int = DEFAULT_K, abs_tol: float = 1e-10) -> StationarityReport:
    """Evaluate the integral, log-moment and positive-mean criteria for a limit law."""
    law = spec.innovation.pmf(K)
    integral = integrate_criterion(law, spec.params, abs_tol=abs_tol)
    k = np.arange(law.probs.size, dtype=float)
    with np.errstate(divide="ignore"):
        lnp = np.where(k > 1, np.log(np.maximum(k, 1.0)), 0.0)
    log_moment = float(np.dot(lnp, law.probs))
    mu = float(spec.innovation.mean)
    mean_ok = 0 < mu < math.inf
    return StationarityReport(
        limit_exists=integral.finite,
        integral=integral,
        log_moment=log_moment,
        log_moment_finite=math.isfinite(log_moment),
        innovation_mean=mu,
        mean_positive_finite=mean_ok,
        tail_bound=law.tail_bound,
    )


# --- joint law of consecutive observations ---------------------------------------------


def joint_pgf(spec: InarSpec, s1, s2):
    """``E[s1**X_{t-1} s2**X_t]`` for the stationary process."""
    if spec.marginal is None:
        raise ValueError("joint pgf needs a stationary spec")
    phi = spec.marginal.pgf
    s1 = np.asarray(s1, dtype=float)
    s2 = np.asarray(s2, dtype=float)
    psi2 = pgf_eval(spec.params, s2)
    return phi(s1 * psi2) * phi(s2) / phi(psi2)


def reversibility_check(spec: InarSpec, grid=None) -> float:
    """Largest ``|phi(s1, s2) - phi(s2, s1)|`` over ``grid x grid``."""
    g = np.array([0.1, 0.3, 0.5, 0.7, 0.9]) if grid is None else np.asarray(grid, dtype=float)
    a, b = np.meshgrid(g, g, indexing="ij")
    return float(np.max(np.abs(joint_pgf(spec, a, b) - joint_pgf(spec, b, a))))


def inar_from_parts(p: ThinningParams, innovation, initial=None) -> InarSpec:
    """Non-stationary spec with an arbitrary innovation (``X_0 = 0`` unless given)."""
    return InarSpec(p, innovation, PointMass(0) if initial is None else initial)
