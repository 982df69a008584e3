"""BerG(m, r) laws, their n-fold convolutions, the CompNB family and ZMG laws."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats
from scipy.special import gammaln, xlogy

from .pgf import DEFAULT_K, PmfVector, convolve_power, lf_power_series
from .semigroup import ParameterError, ThinningParams, pgf_eval

# Below these distances from r = 0 and m = r + 1 the n-fold closed form is
# replaced by repeated convolution.
SINGULAR_EPS = 1e-10


def _log_binom(n, k):
    """log C(n, k) for arrays with 0 <= k <= n (callers mask the rest)."""
    n = np.asarray(n, dtype=float)
    k = np.asarray(k, dtype=float)
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)


def _logsumexp(a, axis):
    mx = np.max(a, axis=axis, keepdims=True)
    finite = np.isfinite(mx)
    shift = np.where(finite, mx, 0.0)
    with np.errstate(divide="ignore"):
        out = np.log(np.sum(np.exp(a - shift), axis=axis, keepdims=True)) + shift
    out = np.where(finite, out, -np.inf)
    return np.squeeze(out, axis=axis)


# --- BerG --------------------------------------------------------------------

def berg_pmf(p: ThinningParams, K: int = DEFAULT_K) -> PmfVector:
    """``p_0 = 1 - m/(1+r)``, ``p_k = m r^(k-1) / (1+r)^(k+1)``; exact geometric tail bound."""
    m, r = p.m, p.r
    probs = np.zeros(K + 1)
    probs[0] = max(0.0, 1.0 - m / (1.0 + r))
    if K >= 1:
        k = np.arange(1, K + 1)
        probs[1:] = m / (1.0 + r) ** 2 * (r / (1.0 + r)) ** (k - 1)
    tail = m * (r / (1.0 + r)) ** K / (1.0 + r) if r > 0 else 0.0
    return PmfVector(probs, tail)


@dataclass(frozen=True)
class BergMoments:
    mean: float
    variance: float
    dispersion_index: float
    dispersion: str  # "equi", "under" or "over"


def berg_moments(p: ThinningParams, atol: float = 1e-12) -> BergMoments:
    m, r = p.m, p.r
    index = 2 * r + 1 - m
    if abs(m - 2 * r) <= atol:
        label = "equi"
    elif m > 2 * r:
        label = "under"
    else:
        label = "over"
    return BergMoments(m, m * index, index, label)


def berg_sample(p: ThinningParams, rng: np.random.Generator, size=None):
    """Draw ``B * W`` with ``B ~ Bernoulli(m/(r+1))`` and ``W ~ T-Geometric(1/(r+1))`` by inversion."""
    m, r = p.m, p.r
    b = rng.random(size) < m / (r + 1.0)
    u = 1.0 - rng.random(size)  # in (0, 1]
    if r == 0:
        w = np.ones_like(u, dtype=np.int64) if size is not None else 1
    else:
        w = 1 + np.floor(np.log(u) / math.log(r / (1.0 + r))).astype(np.int64)
    out = np.where(b, w, 0)
    return int(out) if size is None else out.astype(np.int64)


def sum_berg(p: ThinningParams, n, rng: np.random.Generator):
    """Sum of ``n`` iid BerG(m, r) draws (vectorized over integer arrays ``n``).

    Uses the equivalent two-stage draw: ``N ~ Binomial(n, m/(r+1))`` nonzero
    summands, each ``T-Geometric(1/(r+1))``, whose total is ``N`` plus a
    negative binomial count of failures.
    """
    n = np.asarray(n, dtype=np.int64)
    m, r = p.m, p.r
    nonzero = rng.binomial(n, min(1.0, m / (r + 1.0)))
    if r == 0:
        out = nonzero
    else:
        extra = rng.negative_binomial(np.maximum(nonzero, 1), 1.0 / (r + 1.0))
        out = nonzero + np.where(nonzero > 0, extra, 0)
    return int(out) if out.ndim == 0 else out


def _is_singular(p: ThinningParams) -> bool:
    return p.r < SINGULAR_EPS or (p.r + 1.0 - p.m) < SINGULAR_EPS


def berg_nfold_pmf(p: ThinningParams, n: int, K: int = DEFAULT_K) -> PmfVector:
    """pmf of the n-fold convolution of BerG(m, r).

    Closed form
        p_k = (1 - m/(r+1))^n (r/(r+1))^k sum_i C(n,i) C(k-1,i-1) (m/(r(r+1-m)))^i
    evaluated in log space, with ``C(-1,-1) = 1`` and ``C(k-1,-1) = 0`` for
    ``k >= 1``.  At ``r = 0`` or ``m = r + 1`` the ratio inside the sum is
    singular and repeated convolution of :func:`berg_pmf` is used instead.
    """
    if n < 1 or int(n) != n:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    if _is_singular(p):
        return convolve_power(berg_pmf(p, K), n)
    m, r = p.m, p.r
    # log(r + 1 - m) enters log_p0 and log_c identically, so it cancels
    # exactly in the terms where it should
    log_gap = math.log(r + 1.0 - m)
    log_p0 = log_gap - math.log(r + 1.0)
    log_rho = math.log(r / (r + 1.0))
    log_c = math.log(m) - math.log(r) - log_gap

    k = np.arange(K + 1)[:, None]
    i = np.arange(1, min(n, K) + 1)[None, :]
    valid = (i <= k) & (k >= 1)
    with np.errstate(invalid="ignore"):
        terms = np.where(
            valid,
            _log_binom(n, i) + _log_binom(np.maximum(k - 1, i - 1), i - 1) + i * log_c,
            -np.inf,
        )
    log_sum = _logsumexp(terms, axis=1)
    log_sum[0] = 0.0  # only the i = 0 term survives at k = 0
    logp = n * log_p0 + np.arange(K + 1) * log_rho + log_sum
    probs = np.exp(logp)
    # exact tail: total mass is 1
    tail = max(0.0, 1.0 - math.fsum(probs))
    return PmfVector(probs, tail)


def thin_mixture(p: ThinningParams, weights: PmfVector, K: int = DEFAULT_K) -> PmfVector:
    """Law of ``sum_{i<=X} Z_i`` with ``Z_i ~ BerG(p)`` iid and ``X ~ weights``.

    The n-fold closed form is summed against the weights with the order of
    summation swapped: first the binomial count ``N`` of nonzero summands
    (success probability ``m/(r+1)``), then ``N`` T-geometric(1/(r+1)) parts.
    Written with powers of ``r`` and ``r+1-m`` instead of their ratio, the
    expression stays regular on the whole parameter region.
    """
    w = weights.probs
    nz = np.flatnonzero(w)
    if nz.size == 0:
        return PmfVector(np.zeros(K + 1), weights.tail_bound)
    N = int(nz[-1])
    m, r = p.m, p.r
    mu = m / (r + 1.0)
    beta = max(0.0, (r + 1.0 - m) / (r + 1.0))
    rho = r / (r + 1.0)
    I = min(N, K)

    x = np.arange(N + 1)[:, None]
    i = np.arange(N + 1)[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        logw = np.log(w[: N + 1])[:, None]
        a = np.where(
            i <= x,
            logw + _log_binom(np.maximum(x, i), i) + xlogy(i, mu) + xlogy(np.maximum(x - i, 0), beta),
            -np.inf,
        )
    log_d_all = _logsumexp(a, axis=0)  # law of the number of nonzero summands
    log_d = log_d_all[: I + 1]
    i = i[:, : I + 1]

    k = np.arange(K + 1)[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        comb = np.where(
            (i <= k) & (i >= 1),
            _log_binom(np.maximum(k - 1, 0), np.maximum(i - 1, 0)),
            -np.inf,
        )
        comb[0, 0] = 0.0  # C(-1, -1) = 1
        b = comb + xlogy(i, 1.0 - rho) + xlogy(np.maximum(k - i, 0), rho) + log_d[None, :]
    probs = np.exp(_logsumexp(b, axis=1))
    # i parts of size >= 1 exceed K iff fewer than i successes occur in K trials
    over = np.exp(log_d[1:] + stats.binom.logcdf(np.arange(I), K, 1.0 - rho))
    beyond = np.exp(log_d_all[K + 1:])  # more nonzero parts than K
    tail = weights.tail_bound + math.fsum(over) + math.fsum(beyond)
    return PmfVector(probs, tail)


# --- negative binomial and CompNB ----------------------------------------------------

def nb_pmf(prob: float, a: float, K: int = DEFAULT_K) -> PmfVector:
    """Negative binomial with pgf ``(prob / (1 - (1-prob) s))**a``."""
    if not (0 < prob <= 1) or a <= 0:
        raise ParameterError(f"negative binomial needs 0 < p <= 1 and a > 0, got ({prob}, {a})")
    k = np.arange(K + 1)
    probs = stats.nbinom.pmf(k, a, prob)
    return PmfVector(probs, float(stats.nbinom.sf(K, a, prob)))


@dataclass(frozen=True)
class CompNBParams:
    """``[psi_{m',r'}(s)]**a`` is a pgf when ``0 < m' <= r'`` and ``a > 0``."""

    m_prime: float
    r_prime: float
    a: float

    def __post_init__(self):
        ThinningParams(self.m_prime, self.r_prime)
        if not self.a > 0:
            raise ParameterError(f"CompNB power must be positive, got a={self.a}")
        if self.m_prime > self.r_prime:
            raise ParameterError(
                f"CompNB needs m' <= r' (got m'={self.m_prime}, r'={self.r_prime}); "
                "for r' < m' the power psi^a can have negative coefficients, "
                "e.g. (0.8, 0.2, 1/2) has second derivative -0.24056 at 0"
            )

    @property
    def base(self) -> ThinningParams:
        return ThinningParams(self.m_prime, self.r_prime)

    @property
    def mean(self) -> float:
        return self.a * self.m_prime

    @property
    def variance(self) -> float:
        return self.a * self.m_prime * (2 * self.r_prime + 1 - self.m_prime)

    def pgf(self, s):
        return pgf_eval(self.base, s) ** self.a


def compnb_pmf(c: CompNBParams, K: int = DEFAULT_K, nb_tail: float = 1e-12) -> PmfVector:
    """pmf of CompNB(m', r', a) as a negative binomial mixture of BerG(1, r'-m') sums.

    The counting law has pgf ``[psi_{m',m'}]**a`` (negative binomial with
    success probability ``1/(m'+1)``), truncated where its tail drops below
    ``nb_tail``; the dropped mass is carried in the tail bound.
    """
    prob = 1.0 / (c.m_prime + 1.0)
    if c.r_prime == c.m_prime:
        return nb_pmf(prob, c.a, K)
    N = int(stats.nbinom.isf(nb_tail, c.a, prob)) + 1
    while stats.nbinom.sf(N, c.a, prob) > nb_tail:
        N *= 2
    weights = nb_pmf(prob, c.a, N)
    return thin_mixture(ThinningParams(1.0, c.r_prime - c.m_prime), weights, K)


def compnb_series(m_prime: float, r_prime: float, a: float, K: int) -> np.ndarray:
    """Signed series of ``psi_{m',r'}**a``; no validity check, so it exposes negative coefficients."""
    return lf_power_series(m_prime, r_prime, a, K)


def compnb_sample(c: CompNBParams, rng: np.random.Generator, size=None):
    """Negative binomial number of BerG(1, r'-m') summands."""
    n = rng.negative_binomial(c.a, 1.0 / (c.m_prime + 1.0), size)
    return sum_berg(ThinningParams(1.0, c.r_prime - c.m_prime), n, rng)


# --- zero-modified geometric ---------------------------------------------------

@dataclass(frozen=True)
class ZMGParams:
    """pgf ``(1 + pi mu (1-s)) / (1 + mu (1-s))`` with ``mu > 0`` and ``-1/mu < pi < 1``."""

    pi: float
    mu: float

    def __post_init__(self):
        if not (math.isfinite(self.pi) and math.isfinite(self.mu)):
            raise ParameterError("ZMG parameters must be finite")
        if not self.mu > 0:
            raise ParameterError(f"ZMG needs mu > 0, got {self.mu}")
        if not (-1.0 / self.mu < self.pi < 1.0):
            raise ParameterError(f"ZMG needs -1/mu < pi < 1, got pi={self.pi}, mu={self.mu}")

    def pgf(self, s):
        t = 1.0 - np.asarray(s, dtype=float)
        return (1.0 + self.pi * self.mu * t) / (1.0 + self.mu * t)


def zmg_to_berg(z: ZMGParams) -> ThinningParams:
    return ThinningParams(z.mu * (1.0 - z.pi), z.mu)
