"""Parameter region of the linear-fractional pgfs and its semigroup law.

A point ``(m, r)`` with ``r >= 0`` and ``0 < m <= r + 1`` indexes the pgf

    psi_{m,r}(s) = 1 - m (1 - s) / (1 + r (1 - s)),

whose derivative at 1 is ``m``.  The binary operation

    (m, r) * (m', r') = (m m', r + r' m)

turns the region into a semigroup with neutral element ``(1, 0)`` and encodes
composition of pgfs: ``psi_q(psi_p(s)) == psi_{p * q}(s)``.  In operator terms
``(p * q) . X`` has the law of ``p . (q . X)``: the right factor thins first.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

# Boundary tolerance for the closed constraints m = r + 1 and m = 1.
BOUNDARY_EPS = 1e-12


class ParameterError(ValueError):
    """Parameters fall outside the region they are required to lie in."""


class NonFiniteParameterError(ParameterError):
    """A parameter is NaN or infinite."""


class Region(enum.Enum):
    REJECTED = "rejected"
    R1 = "R1"  # 0 < m < 1: expectation thinning
    R = "R"  # member, m >= 1


@dataclass(frozen=True)
class Classification:
    region: Region
    binomial: bool = False  # r == 0
    geometric: bool = False  # m == r, Z ~ Geometric(1/(r+1))
    t_geometric: bool = False  # m == r + 1, Z ~ T-Geometric(1/(r+1))
    critical: bool = False  # m == 1
    reason: str = ""

    @property
    def member(self) -> bool:
        return self.region is not Region.REJECTED

    @property
    def in_r1(self) -> bool:
        return self.region is Region.R1


def validate(m: float, r: float) -> Classification:
    """Classify ``(m, r)`` against the parameter region.

    Raises :class:`NonFiniteParameterError` for NaN/inf input; every other
    failure is reported through ``Classification.region == Region.REJECTED``.
    """
    if not (math.isfinite(m) and math.isfinite(r)):
        raise NonFiniteParameterError(f"non-finite parameters (m={m!r}, r={r!r})")
    if r < 0:
        return Classification(Region.REJECTED, reason=f"r={r} < 0")
    if m <= 0:
        return Classification(Region.REJECTED, reason=f"m={m} <= 0")
    if m > r + 1 + BOUNDARY_EPS:
        return Classification(Region.REJECTED, reason=f"m={m} > r + 1 = {r + 1}")
    critical = abs(m - 1) <= BOUNDARY_EPS
    region = Region.R1 if m < 1 and not critical else Region.R
    return Classification(
        region,
        binomial=r == 0,
        geometric=abs(m - r) <= BOUNDARY_EPS,
        t_geometric=abs(m - (r + 1)) <= BOUNDARY_EPS,
        critical=critical,
    )


@dataclass(frozen=True)
class ThinningParams:
    """A point ``(m, r)`` of the parameter region (validated on construction)."""

    m: float
    r: float

    def __post_init__(self):
        m, r = float(self.m), float(self.r)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "r", r)
        c = validate(m, r)
        if not c.member:
            raise ParameterError(f"({m}, {r}) is not in the parameter region: {c.reason}")

    @classmethod
    def parse(cls, text: str) -> "ThinningParams":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 2:
            raise ValueError(f"expected 'm,r', got {text!r}")
        return cls(float(parts[0]), float(parts[1]))

    @property
    def classification(self) -> Classification:
        return validate(self.m, self.r)

    @property
    def in_r1(self) -> bool:
        return self.classification.in_r1

    def as_tuple(self) -> tuple[float, float]:
        return (self.m, self.r)

    def __iter__(self):
        yield self.m
        yield self.r

    def __mul__(self, other: "ThinningParams") -> "ThinningParams":
        return compose(self, other)

    def __pow__(self, k: int) -> "ThinningParams":
        return power(self, k)

    def __call__(self, s):
        return pgf_eval(self, s)


IDENTITY = ThinningParams(1.0, 0.0)


def compose(p: ThinningParams, q: ThinningParams) -> ThinningParams:
    """Return ``p * q = (m m', r + r' m)``.

    ``psi_q(psi_p(s)) == psi_{p*q}(s)``: as pgfs, ``p`` is the inner map.  As
    thinning operators, ``(p * q) . X`` equals ``p . (q . X)`` in law, so
    ``q`` is applied to ``X`` first and ``p`` second.
    """
    return ThinningParams(p.m * q.m, p.r + q.r * p.m)


def commutes(p: ThinningParams, q: ThinningParams, atol: float = 1e-12) -> bool:
    return abs(p.r * (1 - q.m) - q.r * (1 - p.m)) <= atol


def power(p: ThinningParams, k: int) -> ThinningParams:
    """k-fold product of ``p`` with itself, ``(m^k, r (1 + m + ... + m^(k-1)))``."""
    if k < 0 or int(k) != k:
        raise ValueError(f"power needs a nonnegative integer, got {k!r}")
    k = int(k)
    if k == 0:
        return IDENTITY
    if p.m == 1.0:
        s_k = float(k)
    else:
        s_k = -math.expm1(k * math.log(p.m)) / (1.0 - p.m)
    return ThinningParams(p.m**k, p.r * s_k)


def _check_unit_interval(s):
    arr = np.asarray(s, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0) or np.any(arr > 1):
        raise ValueError("pgf argument must lie in [0, 1]")
    return arr


def pgf_eval(p: ThinningParams, s):
    """Evaluate ``psi_{m,r}(s)`` for scalar or array ``s`` in [0, 1]."""
    arr = _check_unit_interval(s)
    t = 1.0 - arr
    out = np.clip(1.0 - p.m * t / (1.0 + p.r * t), 0.0, 1.0)
    out = np.where(arr == 1.0, 1.0, out)
    return float(out) if out.ndim == 0 else out


def pgf_iterate(p: ThinningParams, k: int, s):
    """k-fold functional composition of ``psi_{m,r}`` applied to ``s``."""
    if k < 1 or int(k) != k:
        raise ValueError(f"iteration count must be a positive integer, got {k!r}")
    out = pgf_eval(p, s)
    for _ in range(int(k) - 1):
        out = pgf_eval(p, out)
    return out
