import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lfthin import (IDENTITY, NonFiniteParameterError, ParameterError, Region, ThinningParams, commutes,
                    compose, pgf_eval, pgf_iterate, power, validate)

from strategies import region_points


def test_validate_examples():
    assert validate(0.5, 0.3).region is Region.R1
    c = validate(1.2, 1.0)
    assert c.member and not c.in_r1
    assert validate(1.5, 0.2).region is Region.REJECTED


def test_validate_boundary_flags():
    assert validate(0.7, 0.0).binomial
    assert validate(0.3, 0.3).geometric
    assert validate(1.3, 0.3).t_geometric
    assert validate(1.0, 0.5).critical


@pytest.mark.parametrize("m, r", [(math.nan, 0.1), (0.5, math.inf), (-math.inf, 0.0)])
def test_validate_rejects_non_finite(m, r):
    with pytest.raises(NonFiniteParameterError):
        validate(m, r)


@pytest.mark.parametrize("m, r", [(0.0, 0.5), (0.5, -0.1), (2.5, 1.0)])
def test_constructor_rejects_points_outside_region(m, r):
    with pytest.raises(ParameterError):
        ThinningParams(m, r)


def test_compose_examples():
    c = compose(ThinningParams(0.5, 1.0), ThinningParams(0.5, 2.0))
    assert (c.m, c.r) == pytest.approx((0.25, 2.0))
    c = ThinningParams(0.5, 0.3) * ThinningParams(1.2, 1.0)
    assert (c.m, c.r) == pytest.approx((0.6, 0.8))


def test_commutes_examples():
    assert commutes(ThinningParams(0.5, 0), ThinningParams(0.7, 0))
    assert commutes(ThinningParams(1, 2), ThinningParams(1, 3))
    assert not commutes(ThinningParams(0.5, 1), ThinningParams(0.8, 1))


def test_power_examples():
    p = power(ThinningParams(0.5, 0.3), 2)
    assert (p.m, p.r) == pytest.approx((0.25, 0.45))
    assert power(ThinningParams(0.5, 0.3), 0) == IDENTITY
    p = power(ThinningParams(1.0, 0.5), 3)
    assert (p.m, p.r) == pytest.approx((1.0, 1.5))
    with pytest.raises(ValueError):
        power(ThinningParams(0.5, 0.3), -1)


def test_pgf_eval_examples():
    p = ThinningParams(0.5, 0.3)
    assert pgf_eval(p, 0) == pytest.approx(0.8 / 1.3)
    assert pgf_eval(p, 1) == 1.0
    h = 1e-7
    assert (pgf_eval(p, 1) - pgf_eval(p, 1 - h)) / h == pytest.approx(0.5, abs=1e-6)
    with pytest.raises(ValueError):
        pgf_eval(p, 1.5)


def test_pgf_iterate_examples():
    p = ThinningParams(0.5, 0.3)
    s = np.linspace(0, 1, 7)
    np.testing.assert_allclose(pgf_iterate(p, 1, s), pgf_eval(p, s))
    assert pgf_iterate(p, 2, 0.0) == pytest.approx(pgf_eval(ThinningParams(0.25, 0.45), 0.0))
    assert pgf_iterate(p, 5, 1.0) == 1.0


def test_parse_and_call():
    p = ThinningParams.parse("0.5, 0.3")
    assert p == ThinningParams(0.5, 0.3)
    assert p(0.0) == pytest.approx(0.8 / 1.3)


@given(region_points(), region_points(), region_points())
def test_associativity(p, q, u):
    a = compose(compose(p, q), u)
    b = compose(p, compose(q, u))
    assert a.m == pytest.approx(b.m, rel=1e-12, abs=1e-12)
    assert a.r == pytest.approx(b.r, rel=1e-12, abs=1e-12)


@given(region_points(), region_points())
def test_homomorphism(p, q):
    s = np.linspace(0, 1, 11)
    np.testing.assert_allclose(pgf_eval(q, pgf_eval(p, s)), pgf_eval(compose(p, q), s), atol=1e-12)


@given(region_points(), st.integers(0, 12))
def test_power_matches_iterated_compose(p, k):
    it = IDENTITY
    for _ in range(k):
        it = compose(it, p)
    pk = power(p, k)
    assert pk.m == pytest.approx(it.m, rel=1e-12, abs=1e-12)
    assert pk.r == pytest.approx(it.r, rel=1e-11, abs=1e-12)


@given(region_points())
def test_identity_is_neutral(p):
    assert compose(p, IDENTITY) == p
    assert compose(IDENTITY, p) == p
