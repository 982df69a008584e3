import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lfthin import (MonotoneParams, ParameterError, PmfVector, ThinningParams, alpha_monotone_check,
                    binomial_thin, convolution_params, convolve, exp_mixture, marginal_convolution_params,
                    marginal_Mr_check, marginal_mR_check, mr_monotone_check, mr_monotone_synthesize, point_mass,
                    power_thin, thin_mixture, thinned_alpha_is_MR)


def geometric(q, K=200):
    k = np.arange(K + 1)
    return PmfVector((1 - q) * q**k, q ** (K + 1))


def uniform(n):
    return PmfVector(np.full(n + 1, 1.0 / (n + 1)))


def shifted_geometric(shift, q=0.5, K=200):
    probs = np.zeros(K + 1)
    probs[shift:] = (1 - q) * q ** np.arange(K + 1 - shift)
    return PmfVector(probs, q ** (K + 1 - shift))


def test_alpha_monotone_examples():
    assert alpha_monotone_check(geometric(0.5), 0.5).holds
    v = alpha_monotone_check(geometric(0.5), 0.4)
    assert v.status == "fails" and v.witness == 0
    for a in (0.1, 1.0, 7.0):
        assert alpha_monotone_check(point_mass(0, 10), a).holds


@settings(max_examples=40)
@given(st.floats(0.05, 0.95), st.floats(0.01, 3.0), st.floats(0.0, 3.0))
def test_alpha_monotone_is_monotone_in_alpha(q, a, extra):
    g = geometric(q)
    if alpha_monotone_check(g, a).holds:
        assert alpha_monotone_check(g, a + extra).holds


def test_mr_check_examples():
    mp = MonotoneParams(1.0, 1.0)
    v = mr_monotone_check(point_mass(0, 10), mp)
    assert v.holds
    np.testing.assert_array_equal(v.q_sequence.probs[:3], [1.0, 0.0, 0.0])
    v = mr_monotone_check(point_mass(5, 10), mp)
    assert v.status == "fails" and v.witness == 4


def test_synthesize_round_trip():
    mp = MonotoneParams(1.0, 1.0)
    x = mr_monotone_synthesize(point_mass(1, 10), mp)
    v = mr_monotone_check(x, mp)
    assert v.holds
    assert sum(v.q_sequence.probs) == pytest.approx(1.0, abs=1e-8)
    assert x.mean() == pytest.approx(0.5, abs=1e-6)


def test_synthesize_zero():
    x = mr_monotone_synthesize(point_mass(0, 10), MonotoneParams(2.0, 0.5), K=20)
    assert x.probs[0] == 1.0 and not x.probs[1:].any()


@pytest.mark.parametrize("alpha, theta, w", [(0.5, 0.5, 2), (2.0, 1.5, 3), (1.0, 0.25, 4)])
def test_synthesize_mean_and_check(alpha, theta, w):
    mp = MonotoneParams(alpha, theta)
    x = mr_monotone_synthesize(point_mass(w, 10), mp)
    assert x.mean() == pytest.approx(alpha / (alpha + 1) * w, abs=1e-6)
    assert mr_monotone_check(x, mp).holds


@pytest.mark.parametrize("law", [point_mass(2, 20), point_mass(3, 20), point_mass(7, 20), uniform(5),
                                 shifted_geometric(1), shifted_geometric(3)])
def test_non_representable_corpus_fails(law):
    v = mr_monotone_check(law, MonotoneParams(1.0, 1.0))
    assert v.status == "fails" and v.witness is not None


def test_thinned_alpha_is_MR():
    g = geometric(0.5)
    assert thinned_alpha_is_MR(0.5, 1.0, 0.7, g).holds
    assert thinned_alpha_is_MR(0.5, 1.0, 1.0, g).holds
    assert thinned_alpha_is_MR(0.5, 1.0, 0.7, point_mass(0, 10)).holds
    with pytest.raises(ParameterError):
        thinned_alpha_is_MR(0.5, 1.0, 1.5, g)


def test_convolution_params():
    c = convolution_params(MonotoneParams(1, 1), MonotoneParams(2, 2))
    assert (c.alpha, c.theta) == pytest.approx((4.5, 2 / 3))
    d = convolution_params(MonotoneParams(2, 2), MonotoneParams(1, 1))
    assert (d.alpha, d.theta) == (c.alpha, c.theta)


def test_convolution_end_to_end():
    a = mr_monotone_synthesize(point_mass(2, 10), MonotoneParams(1, 1))
    b = mr_monotone_synthesize(point_mass(1, 10), MonotoneParams(2, 2))
    both = convolve(a, b)
    assert mr_monotone_check(both, convolution_params(MonotoneParams(1, 1), MonotoneParams(2, 2))).holds


def test_marginal_convolution_params():
    assert marginal_convolution_params("fixed_r", (1.0, 0.3), (2.0, 0.3)) == (3.0, 0.3)
    assert marginal_convolution_params("fixed_m", (0.6, 1.0), (0.6, 1.0)) == (0.6, 0.5)
    with pytest.raises(ParameterError):
        marginal_convolution_params("fixed_r", (1.0, 0.3), (2.0, 0.4))
    with pytest.raises(ValueError):
        marginal_convolution_params("other", (1.0, 0.3), (2.0, 0.3))


def Mr_law(w, alpha, r, K=200):
    return thin_mixture(ThinningParams(1.0, r), power_thin(w, alpha), K)


def test_marginal_Mr_reduces_at_r_zero():
    g = geometric(0.5)
    for a in (0.4, 0.5):
        assert marginal_Mr_check(g, a, 0.0) == alpha_monotone_check(g, a)


@pytest.mark.parametrize("alpha, r", [(1.0, 0.05), (0.5, 0.1), (2.0, 0.1), (1.0, 0.2)])
def test_marginal_Mr_round_trip(alpha, r):
    w = point_mass(3, 10)
    v = marginal_Mr_check(Mr_law(w, alpha, r), alpha, r)
    assert v.holds
    np.testing.assert_allclose(v.q_sequence.probs[:4], power_thin(w, alpha).probs[:4], atol=1e-9)


@pytest.mark.parametrize("r", [0.1, 0.5, 1.0, 2.0])
def test_marginal_Mr_point_mass_fails(r):
    v = marginal_Mr_check(point_mass(5, 30), 1.0, r)
    assert v.status == "fails" and v.witness == 0


def test_marginal_Mr_at_one():
    assert marginal_Mr_check(point_mass(0, 10), 1.0, 1.0).holds


def test_marginal_Mr_large_r_is_not_decided_on_noise():
    v = marginal_Mr_check(Mr_law(point_mass(3, 10), 1.0, 1.5), 1.0, 1.5)
    assert v.status in ("holds", "inconclusive")


def test_marginal_mR_examples():
    assert marginal_mR_check(point_mass(0, 10), 0.5, 1.0).holds
    law = exp_mixture(binomial_thin(point_mass(3, 10), 0.6), 1.0, 400)
    v = marginal_mR_check(law, 0.6, 1.0)
    assert v.holds
    np.testing.assert_allclose(v.q_sequence.probs[:4], [0, 0, 0, 1], atol=1e-8)
    assert marginal_mR_check(point_mass(5, 30), 0.5, 1.0).status == "fails"


def test_marginal_mR_theta_only_case():
    law = exp_mixture(point_mass(2, 10), 0.5, 400)
    assert marginal_mR_check(law, 1.0, 0.5).holds
    assert marginal_mR_check(point_mass(2, 30), 1.0, 0.5).status == "fails"


def test_marginal_convolution_end_to_end():
    w1, w2 = point_mass(2, 10), point_mass(1, 10)
    x = convolve(Mr_law(w1, 1.0, 0.1), Mr_law(w2, 2.0, 0.1))
    assert marginal_Mr_check(x, 3.0, 0.1).holds
    y = convolve(exp_mixture(binomial_thin(w1, 0.6), 1.0, 400), exp_mixture(binomial_thin(w2, 0.6), 1.0, 400))
    # the combined mixing law has unbounded support, so de-thinning cannot certify it
    assert marginal_mR_check(y, 0.6, 0.5).status != "fails"
    assert marginal_mR_check(y, 1.0, 0.5).holds


def test_params_validation():
    with pytest.raises(ParameterError):
        MonotoneParams(0.0, 1.0)
    with pytest.raises(ParameterError):
        alpha_monotone_check(geometric(0.5), -1)
