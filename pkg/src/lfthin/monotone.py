"""alpha-monotone and [M, R]-monotone count distributions.

``M`` has density ``alpha m**(alpha-1)`` on ``(0, 1)`` and ``R`` is
exponential with mean ``theta``.  ``X`` is

* alpha-monotone when ``X = M . W`` under binomial thinning, which holds iff
  ``(n + alpha) p_n >= (n + 1) p_{n+1}`` for all ``n``;
* [M, R]-monotone when ``X = (M, R) . W``, which holds iff the sequence
  ``q_n = (2 theta n + 1) p_n - theta ((n+1) p_{n+1} + (n-1) p_{n-1})`` is
  nonnegative and alpha-monotone (``q`` is then the law of ``M . W``);
* [M, r]-monotone when ``X = (M, r) . W`` for a fixed ``r``;
* [m, R]-monotone when ``X = (m, R) . W`` for a fixed ``m``.

Verdicts are three-valued.  Every inequality is evaluated together with an
error bar covering truncation and round-off; the verdict *holds* when all
inequalities hold beyond their error bars, *fails* when one is violated
beyond its error bar, and is *inconclusive* otherwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import signal
from scipy.special import betaln, gammaln, xlogy

from .berg import thin_mixture
from .pgf import PmfVector, series_compose
from .quadrature import QuadratureBudgetExceeded, gk_quad
from .semigroup import ParameterError, ThinningParams

INEQ_TOL = 1e-12
PMF_TOL = 1e-10
EPS = np.finfo(float).eps


@dataclass(frozen=True)
class MonotoneParams:
    alpha: float
    theta: float

    def __post_init__(self):
        if not (self.alpha > 0 and self.theta > 0 and math.isfinite(self.alpha) and math.isfinite(self.theta)):
            raise ParameterError(f"alpha and theta must be positive and finite, got ({self.alpha}, {self.theta})")


@dataclass(frozen=True)
class MonotonicityVerdict:
    holds: bool
    inconclusive: bool = False
    witness: int | None = None  # first index whose inequality fails or cannot be decided
    violated_value: float | None = None  # signed slack at the witness
    min_slack: float = math.inf
    q_sequence: PmfVector | None = None  # recovered mixing law when the verdict holds
    detail: str = ""
    assume_zero: int | None = None  # entries from this index on were treated as exact zeros

    @property
    def status(self) -> str:
        if self.holds:
            return "holds"
        return "inconclusive" if self.inconclusive else "fails"


def _decide(checks, detail: str = "") -> MonotonicityVerdict:
    """Combine ``(slack, err, tol, label)`` arrays into one verdict.

    Index ``n`` of each array refers to the ``n``-th inequality of its family.
    """
    min_slack = math.inf
    fail = undecided = None
    for slack, err, tol, label in checks:
        if slack.size == 0:
            continue
        min_slack = min(min_slack, float(np.min(slack)))
        bad = np.flatnonzero(slack + err < -tol)
        if bad.size and (fail is None or bad[0] < fail[0]):
            fail = (int(bad[0]), float(slack[bad[0]]), label)
        unsure = np.flatnonzero(slack - err < -tol)
        if unsure.size and (undecided is None or unsure[0] < undecided[0]):
            undecided = (int(unsure[0]), float(slack[unsure[0]]), label)
    if fail is not None:
        n, v, label = fail
        return MonotonicityVerdict(False, False, n, v, min_slack, detail=f"{label} violated at n={n}")
    if undecided is not None:
        n, v, label = undecided
        return MonotonicityVerdict(False, True, n, v, min_slack,
                                   detail=f"{label} at n={n} is within its error bar")
    return MonotonicityVerdict(True, False, None, None, min_slack, detail=detail)


def _padded(pmf: PmfVector, extra: int):
    """Lower and upper bounds for ``p_0..p_{K+extra}`` (unknown atoms lie in ``[0, tail]``)."""
    lo = np.concatenate([pmf.probs, np.zeros(extra)])
    hi = np.concatenate([pmf.probs, np.full(extra, pmf.tail_bound)])
    return lo, hi


def _staircase(lo, hi, alpha):
    """Interval bounds on ``(n + alpha) x_n - (n + 1) x_{n+1}``, ``n = 0..len-2``."""
    n = np.arange(lo.size - 1, dtype=float)
    s_lo = (n + alpha) * lo[:-1] - (n + 1) * hi[1:]
    s_hi = (n + alpha) * hi[:-1] - (n + 1) * lo[1:]
    return s_lo, s_hi


def _mid_err(s_lo, s_hi, rounding):
    mid = 0.5 * (s_lo + s_hi)
    return mid, 0.5 * (s_hi - s_lo) + rounding


def _beyond_note(pmf: PmfVector, scale: float, tol: float):
    """Check of the inequalities past the truncation, which the tail mass could flip."""
    worst = scale * pmf.tail_bound
    return np.array([0.0]), np.array([worst]), tol, "inequalities beyond the truncation"


def alpha_monotone_check(pmf: PmfVector, alpha: float, tol: float = INEQ_TOL) -> MonotonicityVerdict:
    """``(n + alpha) p_n >= (n + 1) p_{n+1}`` for every ``n``."""
    if not alpha > 0:
        raise ParameterError(f"alpha must be positive, got {alpha}")
    lo, hi = _padded(pmf, 1)
    s_lo, s_hi = _staircase(lo, hi, alpha)
    n = np.arange(s_lo.size)
    rounding = 4 * EPS * ((n + alpha) * hi[:-1] + (n + 1) * hi[1:])
    slack, err = _mid_err(s_lo, s_hi, rounding)
    K = pmf.K
    return _decide([
        (slack, err, tol, "(n+alpha)p_n >= (n+1)p_{n+1}"),
        _beyond_note(pmf, K + 2, tol),
    ])


def q_sequence_bounds(pmf: PmfVector, theta: float, extra: int = 1):
    """Interval bounds on ``q_n`` for ``n = 0..K+extra`` plus a round-off allowance."""
    lo, hi = _padded(pmf, extra + 1)
    n = np.arange(lo.size - 1, dtype=float)
    prev_lo = np.concatenate([[0.0], lo[:-2]])
    prev_hi = np.concatenate([[0.0], hi[:-2]])
    diag = 2 * theta * n + 1
    # coefficient of p_{n-1} is -theta (n-1), which is +theta at n = 0 where p_{-1} = 0
    q_lo = diag * lo[:-1] - theta * ((n + 1) * hi[1:] + (n - 1) * prev_hi)
    q_hi = diag * hi[:-1] - theta * ((n + 1) * lo[1:] + (n - 1) * prev_lo)
    rounding = 4 * EPS * (diag * hi[:-1] + theta * ((n + 1) * hi[1:] + np.abs(n - 1) * prev_hi))
    return q_lo, q_hi, rounding


def q_sequence(pmf: PmfVector, theta: float) -> np.ndarray:
    """``q_n`` for ``n = 0..K`` with ``p_{K+1}`` taken as 0."""
    p = np.concatenate([pmf.probs, [0.0]])
    n = np.arange(pmf.K + 1, dtype=float)
    prev = np.concatenate([[0.0], p[:-2]])
    return (2 * theta * n + 1) * p[:-1] - theta * ((n + 1) * p[1:] + (n - 1) * prev)


def mr_monotone_check(pmf: PmfVector, mp: MonotoneParams, tol: float = INEQ_TOL) -> MonotonicityVerdict:
    """[M, R]-monotonicity through the sign and staircase conditions on ``q``."""
    alpha, theta = mp.alpha, mp.theta
    q_lo, q_hi, q_round = q_sequence_bounds(pmf, theta)
    q_mid, q_err = _mid_err(q_lo, q_hi, q_round)
    s_lo, s_hi = _staircase(q_lo - q_round, q_hi + q_round, alpha)
    n = np.arange(s_lo.size)
    s_round = 4 * EPS * ((n + alpha) * np.abs(q_hi[:-1]) + (n + 1) * np.abs(q_hi[1:]))
    s_mid, s_err = _mid_err(s_lo, s_hi, s_round)
    K = pmf.K
    verdict = _decide([
        (q_mid[: K + 1], q_err[: K + 1], tol, "q_n >= 0"),
        (s_mid[: K + 1], s_err[: K + 1], tol, "(n+alpha)q_n >= (n+1)q_{n+1}"),
        _beyond_note(pmf, _beyond_scale(theta, K), tol),
    ])
    if verdict.holds:
        q = np.clip(q_sequence(pmf, theta), 0.0, None)
        mass = math.fsum(q)
        q_pmf = PmfVector(q, max(0.0, 1.0 - mass))
        verdict = MonotonicityVerdict(True, False, None, None, verdict.min_slack, q_pmf, verdict.detail)
    return verdict


# --- synthesis by mixing ---------------------------------------------------------------


def power_thin(law: PmfVector, alpha: float) -> PmfVector:
    """Law of ``M . W`` (binomial thinning by a power(alpha) variable), computed exactly.

    ``P(M . w = k) = C(w, k) alpha B(k + alpha, w - k + 1)``.
    """
    w_probs = law.probs
    nz = np.flatnonzero(w_probs)
    N = int(nz[-1]) if nz.size else 0
    w = np.arange(N + 1)[:, None]
    k = np.arange(N + 1)[None, :]
    with np.errstate(invalid="ignore", divide="ignore"):
        log_kernel = np.where(
            k <= w,
            gammaln(w + 1) - gammaln(k + 1) - gammaln(np.maximum(w - k, 0) + 1)
            + math.log(alpha) + betaln(k + alpha, np.maximum(w - k, 0) + 1),
            -np.inf,
        )
    out = w_probs[: N + 1] @ np.exp(log_kernel)
    probs = np.zeros(law.K + 1)
    probs[: N + 1] = out
    return PmfVector(probs, law.tail_bound)


def _log_tail_terms(r: float, K: int, imax: int) -> np.ndarray:
    """``log[C(K, i) (1+r)^-K r^(K-i)]`` for ``i < imax``: summands of ``P(Bin(K, 1/(1+r)) = i)``."""
    i = np.arange(imax, dtype=float)
    return (gammaln(K + 1) - gammaln(i + 1) - gammaln(K - i + 1)
            - K * math.log1p(r) + xlogy(K - i, r))


def exp_mixture_tail(law: PmfVector, theta: float, K: int) -> float:
    """Upper bound on ``P((1, R) . V > K)``.

    Given ``R = r`` and ``V = v``, the thinned count is a sum of ``v``
    T-geometric variables and exceeds ``K`` iff fewer than ``v`` successes
    occur in ``K`` Bernoulli(1/(1+r)) trials.  The mixture over ``R`` is
    integrated numerically and its error estimate is added.
    """
    v = np.flatnonzero(law.probs)
    vmax = int(v[-1]) if v.size else 0
    if vmax == 0:
        return law.tail_bound

    def f(r):
        return np.array([np.exp(_log_tail_terms(x, K, vmax)) * math.exp(-x / theta) / theta for x in r])

    res = gk_quad(f, 0.0, _R_MAX * theta, abs_tol=1e-300, rel_tol=1e-8,
                  initial_points=_breakpoints(theta, K), max_intervals=20000)
    h = np.asarray(res.value + res.error, dtype=float)
    surv = np.cumsum(h)  # surv[v-1] bounds P(sum of v T-geometrics > K)
    bound = float(np.dot(law.probs[1: vmax + 1], np.minimum(1.0, surv)))
    return law.tail_bound + bound + math.exp(-_R_MAX)


def _trim_trailing(law: PmfVector, mass: float) -> PmfVector:
    """Move trailing atoms of total probability at most ``mass`` into the tail bound."""
    tail = np.cumsum(law.probs[::-1])[::-1]
    keep = np.flatnonzero(tail > mass)
    last = int(keep[-1]) if keep.size else 0
    return law if last == law.K else law.resized(last)


def _beyond_scale(theta: float, K: int) -> float:
    """Factor by which :func:`mr_monotone_check` multiplies the tail bound."""
    return (2 * theta * (K + 3) + 1) * (K + 3)

# R is integrated over [0, _R_MAX * theta]; the neglected probability is exp(-_R_MAX).
_R_MAX = 700.0


def _breakpoints(theta: float, K: int) -> list[float]:
    # the k-th atom is concentrated near r = sqrt(k theta)
    pts = {theta * 2.0**j for j in range(-4, 10)}
    pts.update(math.sqrt(k * theta) for k in (4**j for j in range(1, 8)) if k <= K)
    return sorted(pts)


def exp_mixture(law: PmfVector, theta: float, K: int, accuracy: float = 1e-15,
                max_intervals: int = 20000) -> PmfVector:
    """Law of ``(1, R) . V`` for ``R ~ Exp(mean theta)``, by adaptive quadrature in ``r``.

    Atom ``k`` gets absolute accuracy ``accuracy / (2 theta k + 1)``, the scale
    at which it enters the q-sequence.
    """

    # trimmed mass lands in the tail bound, which the checks scale by about 2 theta K**2
    law = _trim_trailing(law, 1e-3 * INEQ_TOL / _beyond_scale(theta, K))

    def f(r):
        w = np.exp(-r / theta) / theta
        return np.array([thin_mixture(ThinningParams(1.0, x), law, K).probs for x in r]) * w[:, None]

    k = np.arange(K + 1)
    res = gk_quad(f, 0.0, _R_MAX * theta, abs_tol=accuracy / (2 * theta * k + 1),
                  initial_points=_breakpoints(theta, K), max_intervals=max_intervals)
    if not res.converged:
        raise QuadratureBudgetExceeded(
            f"mixing over R stopped after {res.n_intervals} intervals with error {np.max(res.error):.3g}"
        )
    probs = np.clip(res.value, 0.0, None)
    return PmfVector(probs, exp_mixture_tail(law, theta, K))


def _auto_K(law: PmfVector, theta: float, scale_tol: float, K0: int = 256, K_max: int = 8192) -> int:
    """Smallest power-of-two ``K`` whose tail bound is negligible for the inequality checks."""
    K = K0
    while K < K_max:
        if exp_mixture_tail(law, theta, K) * _beyond_scale(theta, K) < scale_tol:
            break
        K *= 2
    return K


def mr_monotone_synthesize(w: PmfVector, mp: MonotoneParams, K: int | None = None) -> PmfVector:
    """pmf of ``(M, R) . W``, an [M, R]-monotone law by construction.

    ``(M, R) = (1, R) * (M, 0)``, so ``W`` is first thinned binomially by
    ``M`` (exact) and the result is then mixed over ``R`` by quadrature.
    With ``K=None`` the truncation is doubled from 256 until the tail bound
    is too small to affect :func:`mr_monotone_check`.
    """
    v = power_thin(w, mp.alpha)
    if K is None:
        K = _auto_K(v, mp.theta, INEQ_TOL)
    if not np.any(v.probs[1:]):
        return v.resized(K)
    return exp_mixture(v, mp.theta, K)


def binomial_thin(law: PmfVector, m: float) -> PmfVector:
    """Law of ``(m, 0) . W``."""
    probs = thin_mixture(ThinningParams(m, 0.0), law, law.K).probs
    return PmfVector(probs, law.tail_bound)


def thinned_alpha_is_MR(alpha: float, theta: float, m: float, w: PmfVector,
                        K: int | None = None) -> MonotonicityVerdict:
    """Build ``(m, R) . W`` for an alpha-monotone ``W`` and test it for [M, R]-monotonicity."""
    if not 0 < m <= 1:
        raise ParameterError(f"m must lie in (0, 1], got {m}")
    mp = MonotoneParams(alpha, theta)
    v = binomial_thin(w, m)
    if K is None:
        K = _auto_K(v, theta, INEQ_TOL)
    law = exp_mixture(v, theta, K) if np.any(v.probs[1:]) else v.resized(K)
    return mr_monotone_check(law, mp)


# --- marginal versions -------------------------------------------------------------------


def _horner(coef: np.ndarray, b, a) -> np.ndarray:
    """Coefficients of ``sum_n coef_n f(s)**n`` where ``f`` has filter form ``b / a``."""
    res = np.zeros(coef.size)
    res[0] = coef[-1]
    for c in coef[-2::-1]:
        res = signal.lfilter(b, a, res)
        res[0] += c
    return res


def _horner_running_error(coef: np.ndarray, b, a):
    """:func:`_horner` together with a running bound on its accumulated round-off.

    Each filter output ``y_k = b0 x_k + b1 x_{k-1} - a1 y_{k-1}`` commits at
    most ``4 eps`` times the absolute sum of its terms; that local error and
    the error inherited from earlier levels propagate through the
    absolute-value filter ``|b| / (1 - |a1| s)``.
    """
    b_abs = np.abs(b)
    a_abs = np.array([1.0, -abs(a[1])])
    res = np.zeros(coef.size)
    res[0] = coef[-1]
    err = np.zeros(coef.size)
    for c in coef[-2::-1]:
        local = signal.lfilter(b_abs, a_abs, np.abs(res))
        res = signal.lfilter(b, a, res)
        err = signal.lfilter(b_abs, a_abs, err) + 4 * EPS * local
        res[0] += c
        err[0] += EPS * abs(res[0])
    return res, err


def _inverse_filter(r: float):
    """Filter form ``b / a`` of ``psi_{1,-r}(s) = ((1+r)s - r) / ((1-r) + r s)`` for ``r != 1``."""
    d = 1.0 - r
    return np.array([-r / d, (1.0 + r) / d]), np.array([1.0, r / d])


def _inverse_lf_series(coef: np.ndarray, r: float):
    """Coefficients of ``phi(psi_{1,-r}(s))``, their round-off bound and the unseen-mass radius.

    Truncated power series form a ring, so Horner's scheme with one filter
    per level gives the leading coefficients of the composition exactly up
    to round-off.  The error bound adds the running Horner bound to
    ``8 eps |A| |coef|``, which covers relative errors of that size in the
    input, where ``|A|`` is the absolute-value majorant of the map.  Also returns the point ``x`` where the majorant of the inner
    map equals 1 (0 if there is none), which bounds the effect of unseen
    mass beyond the truncation by ``x**-k``.
    """
    b, a = _inverse_filter(r)
    c = abs(a[1])
    b_abs = np.abs(b)
    with np.errstate(over="ignore", invalid="ignore"):
        out, running = _horner_running_error(np.asarray(coef, dtype=float), b, a)
        major = _horner(np.abs(coef), b_abs, np.array([1.0, -c]))
        err = running + 8 * EPS * major
    # G(x) = (|b0| + |b1| x) / (1 - c x) = 1 where x = (1 - |b0|) / (|b1| + c)
    x_star = (1.0 - b_abs[0]) / (b_abs[1] + c) if b_abs[0] < 1 else 0.0
    return out, err, x_star


def _unseen_mass_bound(tail: float, x_star: float, r: float, K: int) -> np.ndarray:
    """Bound on coefficient ``k`` of ``sum_{j >= K} p_j g(s)**j`` given ``sum p_j <= tail``.

    With ``G`` the majorant of the inner map ``g``, ``|coef_k| <= tail G(x)**K / x**k``
    for every ``0 < x <= x_star``; the bound is minimised over a grid of ``x``.
    """
    k = np.arange(K, dtype=float)
    if tail == 0:
        return np.zeros(K)
    if not x_star > 0:
        return np.full(K, np.inf)
    b, a = _inverse_filter(r)
    xs = x_star * np.geomspace(1e-3, 1.0, 200)
    g = np.minimum((abs(b[0]) + abs(b[1]) * xs) / (1.0 - abs(a[1]) * xs), 1.0)
    with np.errstate(divide="ignore"):
        log_b = math.log(tail) + K * np.log(g)[None, :] - k[:, None] * np.log(xs)[None, :]
    return np.exp(log_b.min(axis=1))


def marginal_Mr_check(pmf: PmfVector, alpha: float, r: float,
                      tol: float = INEQ_TOL, pmf_tol: float = PMF_TOL) -> MonotonicityVerdict:
    """[M, r]-monotonicity: ``phi(psi_{1,-r}(s))`` must be an alpha-monotone pgf.

    The inverse map has a power series for ``r != 1``, convergent on
    ``|s| < |1 - r| / r``.  For ``r >= 1/2`` its constant term has modulus at
    least 1, so unseen tail mass cannot be bounded and only finite-support
    inputs are decided; at ``r = 1`` the composition has a pole at 0 unless
    the input is a point mass at 0.
    """
    if not alpha > 0 or not r >= 0:
        raise ParameterError(f"need alpha > 0 and r >= 0, got ({alpha}, {r})")
    if r == 0:
        return alpha_monotone_check(pmf, alpha, tol)
    if r == 1:
        return _Mr_check_at_one(pmf)
    q, err, x_star = _inverse_lf_series(pmf.probs, r)
    k = np.arange(q.size, dtype=float)
    err = err + _unseen_mass_bound(pmf.tail_bound, x_star, r, q.size)
    bad = ~np.isfinite(q) | ~np.isfinite(err)
    q = np.where(bad, 0.0, q)
    err = np.where(bad, np.inf, err)
    n = k[:-1]
    with np.errstate(invalid="ignore"):
        stair = (n + alpha) * q[:-1] - (n + 1) * q[1:]
        stair_err = (n + alpha) * err[:-1] + (n + 1) * err[1:]
    verdict = _decide([
        (q, err, pmf_tol, "recovered coefficient >= 0"),
        (stair, stair_err, tol, "(n+alpha)q_n >= (n+1)q_{n+1}"),
    ])
    if verdict.holds:
        qp = np.clip(q, 0.0, None)
        q_pmf = PmfVector(qp, max(0.0, 1.0 - math.fsum(qp)))
        verdict = MonotonicityVerdict(True, False, None, None, verdict.min_slack, q_pmf, verdict.detail)
    return verdict


def _Mr_check_at_one(pmf: PmfVector) -> MonotonicityVerdict:
    """``phi(2 - 1/s)`` is a power series only for a point mass at 0."""
    nz = np.flatnonzero(pmf.probs)
    if pmf.tail_bound > 0:
        return MonotonicityVerdict(False, True, 0, None, detail="r = 1 with unseen tail mass: inverse map has a pole at 0")
    if nz.size == 1 and nz[0] == 0:
        return MonotonicityVerdict(True, False, None, None, 0.0, PmfVector([1.0]))
    return MonotonicityVerdict(False, False, 0, -math.inf, -math.inf,
                               detail=f"composition has a pole of order {int(nz[-1])} at 0")


def marginal_mR_check(pmf: PmfVector, m: float, theta: float, tol: float = PMF_TOL,
                      input_tol: float = 1e-14, max_amplified: float = 1e-10) -> MonotonicityVerdict:
    """[m, R]-monotonicity: ``q`` from the recovery relation must be an ``m``-binomial thinning.

    ``G(s) = Q(1 + (s - 1)/m)`` has to be a pgf.  De-thinning multiplies an
    error at index ``n`` by up to ``((2 - m)/m)**n``, so any perturbation of a
    valid input is eventually amplified into a violation.  The input entries
    are therefore taken as known to ``input_tol`` only; ``q`` entries that are
    indistinguishable from zero at that accuracy are treated as exact zeros,
    and ``assume_zero`` records the first index past which all entries were
    zeroed.
    """
    if not 0 < m <= 1 or not theta > 0:
        raise ParameterError(f"need 0 < m <= 1 and theta > 0, got ({m}, {theta})")
    q_lo, q_hi, q_round = q_sequence_bounds(pmf, theta, extra=0)
    q, q_err = _mid_err(q_lo, q_hi, q_round)
    q_err = q_err + input_tol * (4 * theta * np.arange(q.size) + 1)
    if m == 1:
        return _decide([(q, q_err, tol, "q_n >= 0")], detail="theta-only check")
    noise = np.abs(q) <= 2 * q_err
    keep = np.flatnonzero(~noise)
    last = int(keep[-1]) if keep.size else -1
    q_used = np.where(noise, 0.0, q)[: last + 1]
    assume_zero = last + 1 if last + 1 < q.size else None
    if q_used.size == 0:
        return MonotonicityVerdict(True, False, None, None, 0.0, PmfVector([1.0]), "q vanishes",
                                   assume_zero)
    g = series_compose(q_used, (1.0 / m, 0.0))
    amp = ((2.0 - m) / m) ** np.arange(q_used.size)
    # an error e_n in q_n moves every g_k by at most e_n * amp_n
    g_err = np.full(g.size, float(np.dot(np.where(noise[: last + 1], 0.0, q_err[: last + 1]), amp)))
    g_err += 64 * EPS * float(np.dot(np.abs(q_used), amp))
    checks = [(g, g_err, tol, "de-thinned coefficient >= 0"), (q, q_err, tol, "q_n >= 0")]
    verdict = _decide(checks)
    if verdict.holds and g_err[0] > max_amplified:
        verdict = MonotonicityVerdict(False, True, 0, float(g[0]), verdict.min_slack,
                                      detail=f"de-thinning error bar {g_err[0]:.3g} too large")
    if verdict.holds:
        gp = np.clip(g, 0.0, None)
        verdict = MonotonicityVerdict(True, False, None, None, verdict.min_slack,
                                      PmfVector(gp, max(0.0, 1.0 - math.fsum(gp))), verdict.detail, assume_zero)
    else:
        verdict = MonotonicityVerdict(verdict.holds, verdict.inconclusive, verdict.witness,
                                      verdict.violated_value, verdict.min_slack, None, verdict.detail, assume_zero)
    return verdict


# --- convolution parameters ----------------------------------------------------------------


def convolution_params(mp1: MonotoneParams, mp2: MonotoneParams) -> MonotoneParams:
    """Parameters under which the convolution of two [M_i, R_i]-monotone laws is [M, R]-monotone."""
    alpha = mp1.alpha + mp2.alpha + 1 / mp1.theta + 1 / mp2.theta
    theta = mp1.theta * mp2.theta / (mp1.theta + mp2.theta)
    return MonotoneParams(alpha, theta)


def marginal_convolution_params(kind: str, params1, params2, atol: float = 1e-12):
    """Combine ``(alpha, r)`` pairs (kind ``fixed_r``) or ``(m, theta)`` pairs (kind ``fixed_m``)."""
    (a1, s1), (a2, s2) = params1, params2
    if kind == "fixed_r":
        if abs(s1 - s2) > atol:
            raise ParameterError(f"fixed_r needs equal r, got {s1} and {s2}")
        if not (a1 > 0 and a2 > 0):
            raise ParameterError("alpha must be positive")
        return (a1 + a2, s1)
    if kind == "fixed_m":
        if abs(a1 - a2) > atol:
            raise ParameterError(f"fixed_m needs equal m, got {a1} and {a2}")
        if not (s1 > 0 and s2 > 0):
            raise ParameterError("theta must be positive")
        return (a1, s1 * s2 / (s1 + s2))
    raise ValueError(f"kind must be 'fixed_r' or 'fixed_m', got {kind!r}")
