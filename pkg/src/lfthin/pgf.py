"""Truncated pmf vectors and the series arithmetic shared by every other module.

A :class:`PmfVector` stores probabilities on ``{0, ..., K}`` together with a
certified upper bound on the mass that lives beyond ``K``.  Signed power
series (intermediate results that need not be distributions) are plain 1-d
numpy arrays.
"""
from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import signal

from .quadrature import gk_quad
from .semigroup import ThinningParams, pgf_eval

DEFAULT_K = 512
NEG_CLAMP = 1e-15
MASS_TOL = 1e-9


class TruncationWarning(UserWarning):
    pass


@dataclass(frozen=True, eq=False)
class PmfVector:
    """Probability mass on ``{0..K}`` plus a bound on the mass beyond ``K``."""

    probs: np.ndarray
    tail_bound: float = 0.0

    def __post_init__(self):
        p = np.array(self.probs, dtype=float, copy=True).ravel()
        if p.size == 0:
            raise ValueError("a pmf needs at least one atom")
        if not np.all(np.isfinite(p)):
            raise ValueError("pmf entries must be finite")
        if np.any(p < -NEG_CLAMP):
            i = int(np.argmin(p))
            raise ValueError(f"negative mass {p[i]!r} at index {i}")
        p[p < 0] = 0.0
        p.setflags(write=False)
        tail = float(self.tail_bound)
        if not (tail >= 0 and math.isfinite(tail)):
            raise ValueError(f"tail_bound must be finite and >= 0, got {tail!r}")
        object.__setattr__(self, "probs", p)
        object.__setattr__(self, "tail_bound", tail)

    @property
    def K(self) -> int:
        return self.probs.size - 1

    def __len__(self):
        return self.probs.size

    def __getitem__(self, k):
        return self.probs[k]

    def __repr__(self):
        head = ", ".join(f"{x:.6g}" for x in self.probs[:6])
        more = ", ..." if self.probs.size > 6 else ""
        return f"PmfVector([{head}{more}], K={self.K}, tail_bound={self.tail_bound:.3g})"

    @property
    def mass(self) -> float:
        return math.fsum(self.probs)

    def is_complete(self, tol: float = MASS_TOL) -> bool:
        return abs(self.mass + self.tail_bound - 1.0) <= tol

    def mean(self) -> float:
        return float(np.dot(np.arange(self.probs.size), self.probs))

    def var(self) -> float:
        k = np.arange(self.probs.size)
        mu = self.mean()
        return float(np.dot((k - mu) ** 2, self.probs))

    def pgf(self, s):
        """Polynomial part of the pgf; the neglected tail adds at most ``tail_bound``."""
        return np.polynomial.polynomial.polyval(np.asarray(s, dtype=float), self.probs)

    def survival(self) -> np.ndarray:
        """``P(X > k)`` for ``k = 0..K`` computed from the retained atoms and the tail bound."""
        rev = np.cumsum(self.probs[::-1])[::-1]
        return np.concatenate([rev[1:], [0.0]]) + self.tail_bound

    def resized(self, K: int) -> "PmfVector":
        """Truncate or zero-pad to ``K``; truncated mass moves into the tail bound."""
        if K + 1 >= self.probs.size:
            return PmfVector(np.pad(self.probs, (0, K + 1 - self.probs.size)), self.tail_bound)
        dropped = math.fsum(self.probs[K + 1:])
        return PmfVector(self.probs[: K + 1], self.tail_bound + dropped)

    def allclose(self, other: "PmfVector", atol: float) -> bool:
        return max_abs_diff(self, other) <= atol

    # serialization ---------------------------------------------------------

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(["index", "probability"])
        for k, x in enumerate(self.probs):
            w.writerow([k, format(float(x), ".17g")])
        w.writerow(["tail_bound", format(self.tail_bound, ".17g")])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "PmfVector":
        rows = list(csv.reader(io.StringIO(text)))
        if rows and rows[0] and rows[0][0].strip() == "index":
            rows = rows[1:]
        probs, tail = {}, 0.0
        for row in rows:
            if not row:
                continue
            key = row[0].strip()
            if key == "tail_bound":
                tail = float(row[1])
            else:
                probs[int(key)] = float(row[1])
        if not probs:
            raise ValueError("CSV holds no probabilities")
        arr = np.zeros(max(probs) + 1)
        for k, v in probs.items():
            arr[k] = v
        return cls(arr, tail)

    def to_json(self) -> str:
        return json.dumps({"probs": [float(x) for x in self.probs], "tail_bound": self.tail_bound})

    @classmethod
    def from_json(cls, text: str) -> "PmfVector":
        obj = json.loads(text)
        if isinstance(obj, list):
            return cls(obj)
        return cls(obj["probs"], obj.get("tail_bound", 0.0))


def point_mass(k: int, K: int | None = None) -> PmfVector:
    K = k if K is None else K
    p = np.zeros(K + 1)
    if k <= K:
        p[k] = 1.0
        return PmfVector(p)
    return PmfVector(p, 1.0)


def max_abs_diff(a, b) -> float:
    """Largest entrywise difference, padding the shorter vector with zeros."""
    pa = a.probs if isinstance(a, PmfVector) else np.asarray(a, dtype=float)
    pb = b.probs if isinstance(b, PmfVector) else np.asarray(b, dtype=float)
    n = max(pa.size, pb.size)
    return float(np.max(np.abs(np.pad(pa, (0, n - pa.size)) - np.pad(pb, (0, n - pb.size)))))


def geometric_truncation(ratio: float, eps: float = 1e-16, floor: int = 16, cap: int = 1 << 16) -> int:
    """Smallest K with ``ratio**K < eps`` (clipped to ``[floor, cap]``)."""
    if ratio <= 0:
        return floor
    if ratio >= 1:
        return cap
    return int(min(cap, max(floor, math.ceil(math.log(eps) / math.log(ratio)))))


# --- convolution -------------------------------------------------------------

def convolve(a: PmfVector, b: PmfVector) -> PmfVector:
    """Law of the independent sum, truncated at the shorter truncation order.

    The tail bound covers both the input tails and the product mass that falls
    beyond the output truncation.
    """
    K = min(a.K, b.K)
    full = np.convolve(a.probs, b.probs)
    out = full[: K + 1]
    dropped = math.fsum(full[K + 1:])
    tail = dropped + a.tail_bound * b.mass + b.tail_bound * a.mass + a.tail_bound * b.tail_bound
    return PmfVector(out, tail)


def convolve_power(a: PmfVector, n: int) -> PmfVector:
    """n-fold convolution by repeated squaring (``n = 0`` gives the point mass at 0)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    result = point_mass(0, a.K)
    base = a
    while n:
        if n & 1:
            result = convolve(result, base)
        n >>= 1
        if n:
            base = convolve(base, base)
    return result


# --- series composition -------------------------------------------------------

def _lf_filter(m: float, r: float):
    """IIR coefficients of multiplication by ``1 - m(1-s)/(1+r(1-s))`` as a series."""
    d0 = 1.0 + r
    if d0 == 0:
        raise ValueError("linear fractional map has a pole at 0 (r = -1)")
    b = np.array([(1.0 + r - m) / d0, -(r - m) / d0])
    a = np.array([1.0, -r / d0])
    return b, a


def multiply_lf(series: np.ndarray, m: float, r: float) -> np.ndarray:
    """Truncated product of ``series`` with the series of ``psi_{m,r}``."""
    b, a = _lf_filter(m, r)
    return signal.lfilter(b, a, series)


def series_compose(outer, inner, K: int | None = None) -> np.ndarray:
    """Coefficients of ``outer(inner(s))`` up to ``s**K``.

    ``inner`` is a :class:`ThinningParams` (a genuine pgf) or a raw ``(m, r)``
    tuple, which may lie outside the parameter region (formal maps such as
    ``s -> 1 + (s - 1)/m`` are ``(1/m, 0)``).  The output is exact for the
    given coefficients of ``outer``; no clamping happens here.
    """
    c = outer.probs if isinstance(outer, PmfVector) else np.asarray(outer, dtype=float)
    if K is None:
        K = c.size - 1
    m, r = (inner.m, inner.r) if isinstance(inner, ThinningParams) else map(float, inner)
    nz = np.flatnonzero(c)
    if nz.size == 0:
        return np.zeros(K + 1)
    b, a = _lf_filter(m, r)
    res = np.zeros(K + 1)
    res[0] = c[nz[-1]]
    for n in range(nz[-1] - 1, -1, -1):
        res = signal.lfilter(b, a, res)
        res[0] += c[n]
    return res


def compose_pmf(outer: PmfVector, inner: ThinningParams, K: int | None = None) -> PmfVector:
    """pgf-level composition ``outer(psi_inner(s))`` as a :class:`PmfVector`.

    Both arguments must be genuine pgfs; round-off below ``-1e-12`` is an error.
    """
    K = outer.K if K is None else K
    coef = series_compose(outer, inner, K)
    if np.any(coef < -1e-12):
        raise ArithmeticError(f"composition of pgfs produced a coefficient {coef.min():.3g} < 0")
    coef = np.clip(coef, 0.0, None)
    dropped = max(0.0, outer.mass - math.fsum(coef))
    return PmfVector(coef, outer.tail_bound + dropped)


def lf_power_series(m: float, r: float, a: float, K: int) -> np.ndarray:
    """Signed series of ``psi_{m,r}(s)**a`` via the generalized binomial theorem.

    ``psi = ((1+r-m) - (r-m)s) / ((1+r)(1 - rho s))`` with ``rho = r/(1+r)``;
    both factors are expanded and multiplied.  Needs ``1 + r - m > 0``.
    """
    A = 1.0 + r - m
    if A <= 0:
        raise ValueError("series of psi**a at 0 needs psi(0) > 0")
    rho = r / (1.0 + r)
    x = -(r - m) / A
    j = np.arange(1, K + 1)
    num = np.empty(K + 1)
    num[0] = 1.0
    num[1:] = np.cumprod((a - j + 1) / j * x)  # coefficients of (1 + x s)^a
    den = np.empty(K + 1)
    den[0] = 1.0
    den[1:] = np.cumprod((a + j - 1) / j * rho)  # coefficients of (1 - rho s)^(-a)
    scale = (A / (1.0 + r)) ** a
    return scale * np.convolve(num, den)[: K + 1]


# --- derivatives ----------------------------------------------------------------

def pgf_derivative_at(pmf, s: float, order: int = 1, accuracy: float = 1e-8) -> float:
    """First or second derivative of ``sum_k c_k s**k`` from its coefficients."""
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    if not 0 <= s <= 1:
        raise ValueError("s must lie in [0, 1]")
    if isinstance(pmf, PmfVector):
        c, tail = pmf.probs, pmf.tail_bound
    else:
        c, tail = np.asarray(pmf, dtype=float), 0.0
    K = c.size - 1
    if tail and tail * max(K, 1) ** order > accuracy:
        warnings.warn(
            f"tail bound {tail:.3g} at K={K} may move the order-{order} derivative by more than {accuracy:g}",
            TruncationWarning,
            stacklevel=2,
        )
    k = np.arange(c.size, dtype=float)
    if order == 1:
        d = (k * c)[1:]
    else:
        d = (k * (k - 1) * c)[2:]
    if s == 0:
        return float(d[0]) if d.size else 0.0
    return float(np.polynomial.polynomial.polyval(s, d))


# --- stationarity integral -----------------------------------------------------

@dataclass(frozen=True)
class CriterionResult:
    value: float
    error: float
    finite: bool
    n_intervals: int

    @property
    def diverged(self) -> bool:
        return not self.finite


class ContractViolation(ArithmeticError):
    pass


def integrate_criterion(innovation, p: ThinningParams, *, mean: float | None = None,
                        abs_tol: float = 1e-10, max_intervals: int = 10**6) -> CriterionResult:
    """Adaptive quadrature of ``int_0^1 (1 - phi(s)) / (psi_{m,r}(s) - s) ds``.

    ``innovation`` is a :class:`PmfVector` (then ``(1-phi(s))/(1-s)`` is the
    survival series, free of cancellation) or a callable pgf; for a callable,
    ``mean`` enables the endpoint limit ``mean / (1 - m)`` near ``s = 1``.
    """
    m, r = p.m, p.r
    if m > 1 + 1e-12:
        raise ValueError("criterion is defined for m <= 1")
    if m >= 1 - 1e-15 and r == 0:
        raise ContractViolation("psi(s) - s vanishes identically for (1, 0)")

    if isinstance(innovation, PmfVector):
        surv = innovation.survival()
        if not np.any(surv > 0):
            return CriterionResult(0.0, 0.0, True, 0)

        def ratio(s):
            return np.polynomial.polynomial.polyval(s, surv)
    else:
        phi: Callable = innovation
        if np.all(np.asarray(phi(np.linspace(0, 1, 9))) == 1.0):
            return CriterionResult(0.0, 0.0, True, 0)
        limit = mean if mean is not None and math.isfinite(mean) else None

        def ratio(s):
            t = 1.0 - s
            with np.errstate(divide="ignore", invalid="ignore"):
                val = (1.0 - np.asarray(phi(s), dtype=float)) / t
            if limit is not None:
                val = np.where(t < 1e-9, limit, val)
            return val

    def integrand(s):
        t = 1.0 - s
        gap = (1.0 - m + r * t) / (1.0 + r * t)  # (psi(s) - s) / (1 - s)
        if np.any(gap <= 0):
            raise ContractViolation("psi(s) <= s inside (0, 1)")
        return ratio(s) / gap

    res = gk_quad(integrand, 0.0, 1.0, abs_tol=abs_tol, max_intervals=max_intervals)
    finite = bool(res.converged and math.isfinite(res.value))
    return CriterionResult(float(res.value), float(res.error), finite, res.n_intervals)


def criterion_endpoint_limit(mean: float, p: ThinningParams) -> float:
    """Value of the criterion integrand at ``s = 1``."""
    return mean / (1.0 - p.m)


__all__ = [
    "PmfVector",
    "point_mass",
    "convolve",
    "convolve_power",
    "series_compose",
    "compose_pmf",
    "multiply_lf",
    "lf_power_series",
    "pgf_derivative_at",
    "integrate_criterion",
    "CriterionResult",
    "ContractViolation",
    "TruncationWarning",
    "max_abs_diff",
    "geometric_truncation",
    "pgf_eval",
]
