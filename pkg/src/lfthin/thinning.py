"""The thinning operator ``(m, r) . X``: sampling, exact laws and moments.

``(m, r) . X`` is the sum of ``X`` iid BerG(m, r) variables.  Its pgf is
``Q(psi_{m,r}(s))`` when ``Q`` is the pgf of ``X``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .berg import berg_nfold_pmf, sum_berg, thin_mixture
from .pgf import PmfVector, max_abs_diff, point_mass
from .semigroup import ThinningParams, compose, power


def thin_sample(p: ThinningParams, x, rng: np.random.Generator):
    """Draw ``(m, r) . x`` for a count or an integer array of counts."""
    x = np.asarray(x)
    if np.any(x < 0):
        raise ValueError("thinning needs nonnegative counts")
    return sum_berg(p, x, rng)


def thin_conditional_pmf(p: ThinningParams, x: int, K: int) -> PmfVector:
    """Law of ``(m, r) . x`` for a fixed count ``x``."""
    if x < 0:
        raise ValueError("thinning needs a nonnegative count")
    if x == 0:
        return point_mass(0, K)
    return berg_nfold_pmf(p, int(x), K)


def thin_marginal_pmf(p: ThinningParams, law: PmfVector, K: int | None = None) -> PmfVector:
    """Law of ``(m, r) . X`` for ``X ~ law``; pgf ``Q(psi_{m,r}(s))``."""
    return thin_mixture(p, law, law.K if K is None else K)


def thin_iterate_pmf(p: ThinningParams, k: int, law: PmfVector, K: int | None = None) -> PmfVector:
    """Apply ``(m, r) .`` to ``law`` ``k`` times in succession."""
    out = law
    for _ in range(k):
        out = thin_marginal_pmf(p, out, K)
    return out


@dataclass(frozen=True)
class Moments:
    mean: float
    variance: float


@dataclass(frozen=True)
class ConditionalMoments:
    mean: float
    second_moment: float
    variance: float


def thin_moments(p: ThinningParams, mean_x: float, var_x: float) -> Moments:
    m, r = p.m, p.r
    return Moments(m * mean_x, m * m * var_x + m * (2 * r + 1 - m) * mean_x)


def thin_conditional_moments(p: ThinningParams, x: int) -> ConditionalMoments:
    m, r = p.m, p.r
    return ConditionalMoments(
        m * x,
        (2 * r + 1) * m * x + m * m * x * (x - 1),
        m * (2 * r + 1 - m) * x,
    )


@dataclass(frozen=True)
class ComposeReport:
    nested: PmfVector  # p . (q . X)
    direct: PmfVector  # (p * q) . X
    max_diff: float


def operator_compose_check(p: ThinningParams, q: ThinningParams, law: PmfVector,
                           K: int | None = None) -> ComposeReport:
    """Compare ``p . (q . X)`` with ``(p * q) . X``; ``q`` thins first."""
    nested = thin_marginal_pmf(p, thin_marginal_pmf(q, law, K), K)
    direct = thin_marginal_pmf(compose(p, q), law, K)
    return ComposeReport(nested, direct, max_abs_diff(nested, direct))


def iterate_check(p: ThinningParams, k: int, law: PmfVector, K: int | None = None) -> ComposeReport:
    """Compare ``k`` successive thinnings with a single thinning by ``p**k``."""
    nested = thin_iterate_pmf(p, k, law, K)
    direct = thin_marginal_pmf(power(p, k), law, K)
    return ComposeReport(nested, direct, max_abs_diff(nested, direct))
