import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats

from lfthin import (IDENTITY, Poisson, ThinningParams, berg_nfold_pmf, berg_pmf, compose, iterate_check,
                    operator_compose_check, point_mass, power, thin_conditional_moments, thin_conditional_pmf,
                    thin_iterate_pmf, thin_marginal_pmf, thin_moments, thin_sample)

from strategies import region_points

P = ThinningParams(0.5, 0.3)


def test_thin_sample_examples(rng):
    assert thin_sample(P, 0, rng) == 0
    x = thin_sample(P, np.full(10**6, 4), rng)
    assert x.mean() == pytest.approx(2.0, abs=0.006)
    y = thin_sample(ThinningParams(0.3, 0.0), np.full(10**5, 7), rng)
    counts = np.bincount(y, minlength=8)
    assert stats.chisquare(counts, stats.binom.pmf(np.arange(8), 7, 0.3) * y.size).pvalue > 1e-3
    with pytest.raises(ValueError):
        thin_sample(P, -1, rng)


def test_thin_sample_law_matches_exact_pmf(rng):
    x = thin_sample(P, np.full(10**5, 3), rng)
    pmf = thin_conditional_pmf(P, 3, 12).probs
    counts = np.bincount(np.minimum(x, 8), minlength=9)
    exp = np.append(pmf[:8], 1 - pmf[:8].sum()) * x.size
    assert stats.chisquare(counts, exp).pvalue > 1e-3


def test_thin_conditional_pmf_examples():
    assert thin_conditional_pmf(P, 0, 10).probs[0] == 1.0
    np.testing.assert_allclose(thin_conditional_pmf(P, 1, 30).probs, berg_pmf(P, 30).probs)
    assert thin_conditional_pmf(P, 2, 30).probs[1] == pytest.approx(0.364133, abs=1e-6)


def test_thin_marginal_pmf_examples():
    assert thin_marginal_pmf(P, point_mass(0, 20)).probs[0] == 1.0
    np.testing.assert_allclose(thin_marginal_pmf(P, point_mass(1, 40), 40).probs, berg_pmf(P, 40).probs,
                               atol=1e-15)
    q = ThinningParams(1.2, 1.0)
    out = thin_marginal_pmf(P, berg_pmf(q, 500), 60)
    np.testing.assert_allclose(out.probs, berg_pmf(compose(P, q), 60).probs, atol=1e-10)


def test_thin_moments_examples():
    mo = thin_moments(P, 2.0, 1.0)
    assert (mo.mean, mo.variance) == pytest.approx((1.0, 1.35))
    assert thin_moments(P, 0.0, 0.0) == thin_moments(P, 0, 0)
    assert (thin_moments(P, 0.0, 0.0).mean, thin_moments(P, 0.0, 0.0).variance) == (0.0, 0.0)
    mo = thin_moments(IDENTITY, 3.0, 2.0)
    assert (mo.mean, mo.variance) == (3.0, 2.0)


def test_thin_conditional_moments_examples():
    c = thin_conditional_moments(P, 0)
    assert (c.mean, c.second_moment, c.variance) == (0, 0, 0)
    c = thin_conditional_moments(P, 4)
    assert (c.mean, c.second_moment, c.variance) == pytest.approx((2.0, 6.2, 2.2))
    v = thin_conditional_pmf(P, 4, 300)
    k = np.arange(v.probs.size)
    assert np.dot(k, v.probs) == pytest.approx(2.0, abs=1e-8)
    assert np.dot(k * k, v.probs) == pytest.approx(6.2, abs=1e-8)


@given(region_points(max_r=2.0), st.floats(0.1, 3.0))
def test_thin_moments_match_exact_law(p, lam):
    law = Poisson(lam).pmf(80)
    out = thin_marginal_pmf(p, law, 800)
    mo = thin_moments(p, lam, lam)
    assert out.mean() == pytest.approx(mo.mean, rel=1e-8, abs=1e-10)
    assert out.var() == pytest.approx(mo.variance, rel=1e-7, abs=1e-9)


def test_operator_compose_identity():
    law = Poisson(2.0).pmf(60)
    assert operator_compose_check(P, IDENTITY, law).max_diff <= 1e-12


@given(region_points(max_r=2.0), region_points(max_r=2.0), st.floats(0.2, 4.0))
def test_operator_compose_orientation(p, q, lam):
    law = Poisson(lam).pmf(60)
    rep = operator_compose_check(p, q, law, 200)
    assert rep.max_diff <= 1e-10


def test_iterate_check_k3():
    law = Poisson(3.0).pmf(80)
    assert iterate_check(ThinningParams(0.7, 0.4), 3, law, 80).max_diff <= 1e-10
    direct = thin_iterate_pmf(P, 2, law, 80)
    np.testing.assert_allclose(direct.probs, thin_marginal_pmf(power(P, 2), law, 80).probs, atol=1e-12)


def test_nfold_equals_conditional():
    np.testing.assert_allclose(thin_conditional_pmf(P, 5, 40).probs, berg_nfold_pmf(P, 5, 40).probs)
