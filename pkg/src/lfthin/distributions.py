"""Distribution handles used as innovations, initial laws and CLI inputs.

Every handle exposes ``pmf(K)``, ``pgf(s)``, ``mean``, ``var`` and
``sample(rng, size)``.  Descriptors have the form ``name:p1,p2,...``:

    berg:m,r        compnb:m,r,a     zmg:pi,mu      nb:p,a
    pointmass:k     poisson:lam      binom:n,p      uniform:n

``nb:p,a`` has pgf ``(p / (1 - (1-p) s))**a``; ``uniform:n`` is uniform on
``{0..n}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .berg import (
    CompNBParams,
    ZMGParams,
    berg_moments,
    berg_pmf,
    berg_sample,
    compnb_pmf,
    compnb_sample,
    nb_pmf,
    zmg_to_berg,
)
from .pgf import DEFAULT_K, PmfVector, convolve, point_mass
from .semigroup import ParameterError, ThinningParams, pgf_eval


class DescriptorError(ValueError):
    """A distribution descriptor could not be parsed."""


@dataclass(frozen=True)
class BerG:
    params: ThinningParams

    def pmf(self, K: int = DEFAULT_K) -> PmfVector:
        return berg_pmf(self.params, K)

    def pgf(self, s):
        return pgf_eval(self.params, s)

    @property
    def mean(self) -> float:
        return self.params.m

    @property
    def var(self) -> float:
        return berg_moments(self.params).variance

    def sample(self, rng, size=None):
        return berg_sample(self.params, rng, size)

    @property
    def descriptor(self) -> str:
        return f"berg:{self.params.m!r},{self.params.r!r}"


@dataclass(frozen=True)
class CompNB:
    params: CompNBParams

    def pmf(self, K: int = DEFAULT_K) -> PmfVector:
        return compnb_pmf(self.params, K)

    def pgf(self, s):
        return self.params.pgf(s)

    @property
    def mean(self) -> float:
        return self.params.mean

    @property
    def var(self) -> float:
        return self.params.variance

    def sample(self, rng, size=None):
        return compnb_sample(self.params, rng, size)

    @property
    def descriptor(self) -> str:
        c = self.params
        return f"compnb:{c.m_prime!r},{c.r_prime!r},{c.a!r}"


@dataclass(frozen=True)
class NegBinom:
    """Failures before the ``a``-th success, success probability ``p``."""

    p: float
    a: float

    def __post_init__(self):
        if not (0 < self.p <= 1) or not self.a > 0:
            raise ParameterError(f"nb needs 0 < p <= 1 and a > 0, got ({self.p}, {self.a})")

    def pmf(self, K: int = DEFAULT_K) -> PmfVector:
        return nb_pmf(self.p, self.a, K)

    def pgf(self, s):
        s = np.asarray(s, dtype=float)
        return (self.p / (1.0 - (1.0 - self.p) * s)) ** self.a

    @property
    def mean(self) -> float:
        return self.a * (1 - self.p) / self.p

    @property
    def var(self) -> float:
        return self.a * (1 - self.p) / self.p**2

    def sample(self, rng, size=None):
        return rng.negative_binomial(self.a, self.p, size)

    @property
    def descriptor(self) -> str:
        return f"nb:{self.p!r},{self.a!r}"


@dataclass(frozen=True)
class PointMass:
    k: int = 0

    def __post_init__(self):
        if self.k < 0 or int(self.k) != self.k:
            raise ParameterError(f"point mass needs a nonnegative integer, got {self.k!r}")

    def pmf(self, K: int = DEFAULT_K) -> PmfVector:
        return point_mass(int(self.k), K)

    def pgf(self, s):
        return np.asarray(s, dtype=float) ** self.k

    @property
    def mean(self) -> float:
        return float(self.k)

    @property
    def var(self) -> float:
        return 0.0

    def sample(self, rng, size=None):
        return int(self.k) if size is None else np.full(size, int(self.k), dtype=np.int64)

    @property
    def descriptor(self) -> str:
        return f"pointmass:{int(self.k)}"


@dataclass(frozen=True)
class Poisson:
    lam: float

    def __post_init__(self):
        if not self.lam >= 0:
            raise ParameterError(f"poisson needs lam >= 0, got {self.lam}")

    def pmf(self, K: int = DEFAULT_K) -> PmfVector:
        k = np.arange(K + 1)
        return PmfVector(stats.poisson.pmf(k, self.lam), float(stats.poisson.sf(K, self.lam)))

    def pgf(self, s):
        return np.exp(self.lam * (np.asarray(s, dtype=float) - 1.0))

    @property
    def mean(self) -> float:
        return self.lam

    @property
    def var(self) -> float:
        return self.lam

    def sample(self, rng, size=None):
        return rng.poisson(self.lam, size)

    @property
    def descriptor(self) -> str:
        return f"poisson:{self.lam!r}"


@dataclass(frozen=True)
class Binomial:
    n: int
    p: float

    def __post_init__(self):
        if self.n < 0 or int(self.n) != self.n or not (0 <= self.p <= 1):
            raise ParameterError(f"binom needs integer n >= 0 and 0 <= p <= 1, got ({self.n}, {self.p})")

    def pmf(self, K: int = DEFAULT_K) -> PmfVector:
        k = np.arange(K + 1)
        return PmfVector(stats.binom.pmf(k, self.n, self.p), float(stats.binom.sf(K, self.n, self.p)))

    def pgf(self, s):
        return (1 - self.p + self.p * np.asarray(s, dtype=float)) ** self.n

    @property
    def mean(self) -> float:
        return self.n * self.p

    @property
    def var(self) -> float:
        return self.n * self.p * (1 - self.p)

    def sample(self, rng, size=None):
        return rng.binomial(int(self.n), self.p, size)

    @property
    def descriptor(self) -> str:
        return f"binom:{int(self.n)},{self.p!r}"


@dataclass(frozen=True)
class Uniform:
    """Uniform on ``{0, ..., n}``."""

    n: int

    def __post_init__(self):
        if self.n < 0 or int(self.n) != self.n:
            raise ParameterError(f"uniform needs an integer n >= 0, got {self.n!r}")

    def pmf(self, K: int = DEFAULT_K) -> PmfVector:
        p = np.zeros(K + 1)
        top = min(int(self.n), K)
        p[: top + 1] = 1.0 / (self.n + 1)
        return PmfVector(p, max(0, self.n - K) / (self.n + 1))

    def pgf(self, s):
        s = np.asarray(s, dtype=float)
        return np.polynomial.polynomial.polyval(s, np.full(int(self.n) + 1, 1.0 / (self.n + 1)))

    @property
    def mean(self) -> float:
        return self.n / 2

    @property
    def var(self) -> float:
        return self.n * (self.n + 2) / 12

    def sample(self, rng, size=None):
        return rng.integers(0, int(self.n) + 1, size)

    @property
    def descriptor(self) -> str:
        return f"uniform:{int(self.n)}"


@dataclass(frozen=True)
class Convolution:
    """Independent sum of the component laws."""

    parts: tuple

    def pmf(self, K: int = DEFAULT_K) -> PmfVector:
        out = point_mass(0, K)
        for d in self.parts:
            out = convolve(out, d.pmf(K))
        return out

    def pgf(self, s):
        out = np.ones_like(np.asarray(s, dtype=float))
        for d in self.parts:
            out = out * d.pgf(s)
        return out

    @property
    def mean(self) -> float:
        return math.fsum(d.mean for d in self.parts)

    @property
    def var(self) -> float:
        return math.fsum(d.var for d in self.parts)

    def sample(self, rng, size=None):
        total = 0 if size is None else np.zeros(size, dtype=np.int64)
        for d in self.parts:
            total = total + d.sample(rng, size)
        return total

    @property
    def descriptor(self) -> str:
        return "+".join(d.descriptor for d in self.parts)


@dataclass(frozen=True)
class FromPmf:
    """A law given directly by a :class:`PmfVector` (sampling ignores the tail)."""

    law: PmfVector

    def pmf(self, K: int = DEFAULT_K) -> PmfVector:
        return self.law.resized(K)

    def pgf(self, s):
        return self.law.pgf(s)

    @property
    def mean(self) -> float:
        return self.law.mean()

    @property
    def var(self) -> float:
        return self.law.var()

    def sample(self, rng, size=None):
        p = self.law.probs / self.law.mass
        return rng.choice(p.size, size=size, p=p)

    @property
    def descriptor(self) -> str:
        return "pmf"


def _args(name: str, body: str, count: int) -> list[float]:
    parts = [x.strip() for x in body.split(",")] if body.strip() else []
    if len(parts) != count:
        raise DescriptorError(f"{name} takes {count} parameter(s), got {len(parts)} in {body!r}")
    try:
        return [float(x) for x in parts]
    except ValueError as exc:
        raise DescriptorError(f"non-numeric parameter in {name}:{body}") from exc


def _int(x: float, what: str) -> int:
    if x != int(x):
        raise DescriptorError(f"{what} must be an integer, got {x}")
    return int(x)


def parse_descriptor(text: str):
    """Build a distribution handle from ``name:params`` (``+`` joins convolution factors)."""
    text = text.strip()
    if "+" in text:
        return Convolution(tuple(parse_descriptor(t) for t in text.split("+")))
    if ":" not in text:
        raise DescriptorError(f"descriptor {text!r} is not of the form name:params")
    name, body = text.split(":", 1)
    name = name.strip().lower()
    if name == "berg":
        m, r = _args(name, body, 2)
        return BerG(ThinningParams(m, r))
    if name == "compnb":
        m, r, a = _args(name, body, 3)
        return CompNB(CompNBParams(m, r, a))
    if name == "zmg":
        pi, mu = _args(name, body, 2)
        return BerG(zmg_to_berg(ZMGParams(pi, mu)))
    if name == "nb":
        p, a = _args(name, body, 2)
        return NegBinom(p, a)
    if name == "pointmass":
        (k,) = _args(name, body, 1)
        return PointMass(_int(k, "k"))
    if name == "poisson":
        (lam,) = _args(name, body, 1)
        return Poisson(lam)
    if name == "binom":
        n, p = _args(name, body, 2)
        return Binomial(_int(n, "n"), p)
    if name == "uniform":
        (n,) = _args(name, body, 1)
        return Uniform(_int(n, "n"))
    raise DescriptorError(f"unknown distribution {name!r}")
