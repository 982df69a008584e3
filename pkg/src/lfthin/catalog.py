"""Thinning operators from the literature, mapped onto ``(m, r)``.

Each entry knows its native parameter domain, its native pgf and the map to
the linear-fractional parameters.  ``thinning`` is true when the mapped
operator is an expectation thinning (``m < 1``).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .semigroup import ParameterError, ThinningParams


@dataclass(frozen=True)
class OperatorCatalogEntry:
    name: str
    native_params: tuple[float, ...]
    mapped: ThinningParams
    thinning: bool

    def native_pgf(self, s):
        return _OPERATORS[self.name].pgf(*self.native_params, np.asarray(s, dtype=float))


@dataclass(frozen=True)
class _Operator:
    names: tuple[str, ...]
    check: Callable  # returns an error message or ""
    to_mr: Callable
    pgf: Callable
    extra: Callable | None = None  # thinning condition beyond m < 1, as a message


def _binomial_check(a):
    return "" if 0 < a <= 1 else f"alpha={a} not in (0, 1]"


def _aly_bouzar_check(a, th):
    if not 0 < a < 1:
        return f"alpha={a} not in (0, 1)"
    return "" if 0 <= th <= 1 else f"theta={th} not in [0, 1]"


def _zhu_joe_check(a, g):
    if not 0 < a <= 1:
        return f"alpha={a} not in (0, 1]"
    return "" if 0 <= g < 1 else f"gamma={g} not in [0, 1)"


def _iterated_check(a, rho):
    if not 0 < a < 1:
        return f"alpha={a} not in (0, 1)"
    return "" if 0 < rho < 1 else f"rho={rho} not in (0, 1)"


def _negbin_check(a):
    return "" if 0 < a < 1 else f"alpha={a} not in (0, 1)"


def _jazi_check(pi, rho):
    if not 0 < pi <= 1:
        return f"pi={pi} not in (0, 1]"
    return "" if 0 <= rho < 1 else f"rho={rho} not in [0, 1)"


def _rho_binomial_check(rho, a):
    if not 0 <= rho < 1:
        return f"rho={rho} not in [0, 1)"
    return "" if 0 < a < 1 / (1 + rho) else f"alpha={a} not in (0, 1/(1+rho))"


def _rho_negbin_check(rho, a):
    if not 0 <= rho < 1:
        return f"rho={rho} not in [0, 1)"
    return "" if 0 < a < 1 - rho else f"alpha={a} not in (0, 1-rho)"


def _bw_check(a, b):
    if not 0 < a < 1:
        return f"alpha={a} not in (0, 1)"
    return "" if b > 0 else f"beta={b} not > 0"


_OPERATORS = {
    "binomial": _Operator(
        ("alpha",), _binomial_check,
        lambda a: (a, 0.0),
        lambda a, s: 1 - a + a * s,
    ),
    "aly_bouzar": _Operator(
        ("alpha", "theta"), _aly_bouzar_check,
        lambda a, th: (a / (1 - th * (1 - a)), th * (1 - a) / (1 - th * (1 - a))),
        lambda a, th, s: 1 - a * (1 - s) / (1 - th * (1 - a) * s),
    ),
    "zhu_joe": _Operator(
        ("alpha", "gamma"), _zhu_joe_check,
        lambda a, g: (a, g * (1 - a) / (1 - g)),
        lambda a, g, s: ((1 - a) + (a - g) * s) / ((1 - a * g) - (1 - a) * g * s),
    ),
    "iterated": _Operator(
        ("alpha", "rho"), _iterated_check,
        lambda a, rho: (rho, 1 / a),
        lambda a, rho, s: 1 - a * rho * (1 - s) / (1 + a - s),
    ),
    "negbin": _Operator(
        ("alpha",), _negbin_check,
        lambda a: (a, a),
        lambda a, s: 1 / (1 + a * (1 - s)),
    ),
    "jazi_alamatsaz": _Operator(
        ("pi", "rho"), _jazi_check,
        lambda pi, rho: (pi / (1 - rho), rho / (1 - rho)),
        lambda pi, rho, s: 1 - pi * (1 - s) / (1 - rho * s),
        lambda pi, rho: "" if pi + rho < 1 else "pi + rho < 1 fails",
    ),
    "rho_binomial": _Operator(
        ("rho", "alpha"), _rho_binomial_check,
        lambda rho, a: (a * (1 + rho), rho),
        lambda rho, a, s: (1 - (1 - s) * (a * (1 + rho) - rho)) / (1 + rho * (1 - s)),
    ),
    "rho_negbin": _Operator(
        ("rho", "alpha"), _rho_negbin_check,
        lambda rho, a: (a / (1 - rho), (a + rho) / (1 - rho)),
        lambda rho, a, s: (1 - rho * s) / (1 - rho * s + a * (1 - s)),
    ),
    "bourguignon_weiss": _Operator(
        ("alpha", "beta"), _bw_check,
        lambda a, b: (a + b, b),
        lambda a, b, s: (1 - a * (1 - s)) / (1 + b * (1 - s)),
        lambda a, b: "" if a + b < 1 else "alpha + beta < 1 fails",
    ),
}

CATALOG_NAMES = tuple(_OPERATORS)


def native_param_names(name: str) -> tuple[str, ...]:
    return _OPERATORS[name].names


def catalog_map(name: str, native_params) -> OperatorCatalogEntry:
    """Map a named operator with native parameters onto ``(m, r)``."""
    if name not in _OPERATORS:
        raise KeyError(f"unknown operator {name!r}; known: {', '.join(CATALOG_NAMES)}")
    op = _OPERATORS[name]
    params = tuple(float(x) for x in native_params)
    if len(params) != len(op.names):
        raise ParameterError(f"{name} takes parameters {op.names}, got {len(params)} values")
    problem = op.check(*params)
    if problem:
        raise ParameterError(f"{name}: {problem}")
    mapped = ThinningParams(*op.to_mr(*params))
    thinning = mapped.m < 1 and (op.extra is None or not op.extra(*params))
    return OperatorCatalogEntry(name, params, mapped, thinning)
