"""Command-line front end.

Distribution descriptors have the form ``name:p1,p2,...`` and may be joined
with ``+`` for a convolution.  Known names: ``berg:m,r``, ``compnb:m,r,a``,
``zmg:pi,mu``, ``nb:p,a``, ``pointmass:k``, ``poisson:lam``, ``binom:n,p``
and ``uniform:n``.

Exit status: 0 on success, 1 when a validation or verification fails, 2
when a verdict is inconclusive and 64 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from .berg import ZMGParams, berg_moments
from .catalog import CATALOG_NAMES, catalog_map
from .distributions import BerG, CompNB, DescriptorError, parse_descriptor
from .inar import (ConstraintViolation, InarSpec, build_stationary_berg, build_stationary_compnb,
                   build_stationary_zmg, inar_from_parts, innovation_decompose, simulate,
                   stationarity_check, stationary_fixed_point_error, stationary_moments)
from .monotone import (MonotoneParams, MonotonicityVerdict, alpha_monotone_check, convolution_params,
                       marginal_convolution_params, marginal_Mr_check, marginal_mR_check,
                       mr_monotone_check, mr_monotone_synthesize)
from .pgf import DEFAULT_K, PmfVector
from .semigroup import ParameterError, ThinningParams, compose, power, validate
from .streams import RNG_ALGORITHM, make_rng
from .thinning import thin_marginal_pmf, thin_sample
from .verify import RunConfig, run_mc_verify

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 64

GLOBAL_DEFAULTS = {"seed": 0, "K": DEFAULT_K, "tol": 0.05, "format": None, "out": None}

F_BERG_PGF = "psi_{m,r}(s) = 1 - m(1-s)/(1 + r(1-s))"
F_BERG_PMF = "P(0) = 1 - m/(1+r); P(k) = m r^(k-1)/(1+r)^(k+1), k >= 1"
F_COMPOSE = "(m,r)*(m',r') = (m m', r + r' m)"
F_POWER = "(m,r)^k = (m^k, r (1 - m^k)/(1 - m))"
F_THIN = "(m,r).X has pgf phi_X(psi_{m,r}(s))"
F_STAT = "phi_X(s) = phi_X(psi_{m,r}(s)) phi_eps(s)"
F_DECOMP = "m1 = r + (r'-m')(m-1), r1 = r + (r'-m') m; m2 = r'(1-m) - r, r2 = r'"
F_ALPHA = "(n+alpha) p_n >= (n+1) p_{n+1}"
F_Q = "q_n = (2 theta n + 1) p_n - theta((n+1) p_{n+1} + (n-1) p_{n-1})"
F_MR_MARGINAL = "phi(s) = phi_1(psi_{1,r}(s)), phi_1 alpha-monotone"
F_MR_THETA = "Q(s) = phi(s) - theta (1-s)^2 phi'(s) = G(1 - m(1-s))"
F_CONV = "alpha = alpha1 + alpha2 + 1/theta1 + 1/theta2, theta = theta1 theta2/(theta1 + theta2)"
F_MEAN_VAR = "E (m,r).X = m E X; Var (m,r).X = m^2 Var X + m(2r + 1 - m) E X"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


# --- argument helpers ------------------------------------------------------------


def _floats(text: str, count: int | None = None) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None
    if count is not None and len(vals) != count:
        raise UsageError(f"expected {count} numbers, got {text!r}")
    return vals


def _params(text: str) -> ThinningParams:
    m, r = _floats(text, 2)
    return ThinningParams(m, r)


def _dist(text: str):
    try:
        return parse_descriptor(text)
    except DescriptorError as exc:
        raise UsageError(str(exc)) from None


def _op(text: str) -> tuple[ThinningParams, dict]:
    """``m,r`` or ``name:native,params`` from the operator catalog."""
    name, _, body = text.partition(":")
    if name.strip() in CATALOG_NAMES:
        entry = catalog_map(name.strip(), _floats(body) if body else [])
        return entry.mapped, {"operator": entry.name, "native_params": list(entry.native_params),
                              "thinning": entry.thinning}
    if ":" in text:
        raise UsageError(f"unknown operator {name!r}; known: {', '.join(CATALOG_NAMES)}")
    return _params(text), {}


def _read_pmf(path: str) -> PmfVector:
    text = Path(path).read_text() if path != "-" else sys.stdin.read()
    try:
        if text.lstrip().startswith(("{", "[")):
            return PmfVector.from_json(text)
        return PmfVector.from_csv(text)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"cannot read pmf from {path}: {exc}") from None


# --- output -----------------------------------------------------------------------


def _num(x):
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else repr(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.ndarray):
        return [_num(v) for v in x.tolist()]
    if isinstance(x, dict):
        return {k: _num(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_num(v) for v in x]
    return x


def _json(obj) -> str:
    return json.dumps(_num(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(x) for x in row])
    return buf.getvalue()


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)


def _fmt(args, default: str) -> str:
    return args.format or default


def _pmf_output(args, pmf: PmfVector, meta: dict) -> str:
    if _fmt(args, "csv") == "csv":
        return pmf.to_csv()
    return _json({**meta, "probs": pmf.probs, "tail_bound": pmf.tail_bound})


def _record_output(args, record: dict) -> str:
    """JSON object, or a two-column CSV of its scalar fields."""
    if _fmt(args, "json") == "json":
        return _json(record)
    rows = []
    for key in sorted(record):
        v = record[key]
        if isinstance(v, (list, tuple, dict)):
            v = json.dumps(_num(v), sort_keys=True)
        rows.append((key, v))
    return _csv(["field", "value"], rows)


# --- commands ------------------------------------------------------------------


def cmd_dist_pmf(args) -> int:
    d = _dist(args.name)
    pmf = d.pmf(args.K)
    formulas = [F_BERG_PMF] if isinstance(d, BerG) else [f"pmf of {d.descriptor}"]
    if isinstance(d, CompNB):
        formulas = [f"[{F_BERG_PGF}]^a"]
    _emit(args, _pmf_output(args, pmf, {"descriptor": d.descriptor, "K": args.K, "formulas": formulas}))
    return EXIT_OK


def cmd_dist_moments(args) -> int:
    d = _dist(args.name)
    mean, var = float(d.mean), float(d.var)
    rec = {"descriptor": d.descriptor, "mean": mean, "variance": var,
           "dispersion_index": var / mean if mean > 0 else math.nan,
           "formulas": ["dispersion index = Var/E"]}
    if isinstance(d, BerG):
        bm = berg_moments(d.params)
        rec["dispersion"] = bm.dispersion
        rec["formulas"] += ["E Z = m", "Var Z = m(2r + 1 - m)"]
    _emit(args, _record_output(args, rec))
    return EXIT_OK


def cmd_dist_sample(args) -> int:
    d = _dist(args.name)
    x = np.asarray(d.sample(make_rng(args.seed), args.n), dtype=np.int64)
    if _fmt(args, "csv") == "csv":
        text = _csv(["index", "value"], enumerate(x.tolist()))
    else:
        text = _json({"descriptor": d.descriptor, "seed": args.seed, "rng": RNG_ALGORITHM,
                      "samples": x.tolist(), "formulas": []})
    _emit(args, text)
    return EXIT_OK


def cmd_semigroup_compose(args) -> int:
    p, q = _params(args.p), _params(args.q)
    c = compose(p, q)
    _emit(args, _record_output(args, {"m": c.m, "r": c.r, "formulas": [F_COMPOSE, "psi_q(psi_p(s)) = psi_{p*q}(s)"]}))
    return EXIT_OK


def cmd_semigroup_power(args) -> int:
    c = power(_params(args.p), args.n)
    _emit(args, _record_output(args, {"m": c.m, "r": c.r, "n": args.n, "formulas": [F_POWER]}))
    return EXIT_OK


def cmd_semigroup_validate(args) -> int:
    m, r = _floats(args.p, 2)
    try:
        c = validate(m, r)
    except ParameterError as exc:
        _emit(args, _record_output(args, {"m": m, "r": r, "member": False, "region": "rejected",
                                          "reason": str(exc), "formulas": ["r >= 0, 0 < m <= r + 1"]}))
        return EXIT_FAIL
    rec = {"m": m, "r": r, "member": c.member, "region": c.region.value, "binomial": c.binomial,
           "geometric": c.geometric, "t_geometric": c.t_geometric, "critical": c.critical,
           "reason": c.reason, "formulas": ["r >= 0, 0 < m <= r + 1", "expectation thinning: m < 1"]}
    _emit(args, _record_output(args, rec))
    return EXIT_OK if c.member else EXIT_FAIL


def cmd_thin(args) -> int:
    p, op_meta = _op(args.op)
    try:
        law = PmfVector(np.eye(1, int(args.x) + 1, int(args.x)).ravel())
        label = str(int(args.x))
        dist = None
    except ValueError:
        dist = _dist(args.x)
        law = dist.pmf(args.K)
        label = dist.descriptor
    if args.sample is not None:
        rng = make_rng(args.seed)
        xs = dist.sample(rng, args.sample) if dist is not None else np.full(args.sample, int(args.x))
        y = np.asarray(thin_sample(p, np.asarray(xs, dtype=np.int64), rng), dtype=np.int64)
        if _fmt(args, "csv") == "csv":
            text = _csv(["index", "x", "thinned"], zip(range(y.size), np.asarray(xs).tolist(), y.tolist()))
        else:
            text = _json({"m": p.m, "r": p.r, "x": label, "seed": args.seed, "rng": RNG_ALGORITHM,
                          "x_values": np.asarray(xs).tolist(), "samples": y.tolist(), **op_meta,
                          "formulas": ["(m,r).x = sum of x iid BerG(m,r)"]})
        _emit(args, text)
        return EXIT_OK
    out = thin_marginal_pmf(p, law, args.K)
    meta = {"m": p.m, "r": p.r, "x": label, "K": args.K, **op_meta, "formulas": [F_THIN, F_MEAN_VAR]}
    _emit(args, _pmf_output(args, out, meta))
    return EXIT_OK


def _inar_spec(args) -> InarSpec:
    p = ThinningParams(args.m, args.r)
    if args.innovation:
        initial = _dist(args.initial) if args.initial else None
        return inar_from_parts(p, _dist(args.innovation), initial)
    if not args.marginal:
        raise UsageError("give --marginal for a stationary process or --innovation")
    name, _, body = args.marginal.partition(":")
    name = name.strip().lower()
    vals = _floats(body)
    if name == "berg" and len(vals) == 2:
        return build_stationary_berg(p, ThinningParams(*vals))
    if name == "compnb" and len(vals) in (2, 3):
        a = vals[2] if len(vals) == 3 else args.a
        if a is None:
            raise UsageError("compnb marginal needs a shape: compnb:m',r',a or --a")
        return build_stationary_compnb(p, ThinningParams(vals[0], vals[1]), a)
    if name == "zmg" and len(vals) == 2:
        return build_stationary_zmg(p, ZMGParams(*vals))
    raise UsageError(f"marginal must be berg:m',r', compnb:m',r'[,a] or zmg:pi,mu, got {args.marginal!r}")


def _spec_record(spec: InarSpec) -> dict:
    rec = {"m": spec.params.m, "r": spec.params.r, "innovation": spec.innovation.descriptor,
           "stationary": spec.stationary}
    if spec.marginal is not None:
        rec["marginal"] = spec.marginal.descriptor
    return rec


def cmd_inar_simulate(args) -> int:
    spec = _inar_spec(args)
    path = simulate(spec, args.T, args.seed)
    if _fmt(args, "csv") == "csv":
        text = path.to_csv()
    else:
        text = _json({**_spec_record(spec), "seed": args.seed, "rng": RNG_ALGORITHM, "T": args.T,
                      "t": path.t, "x": path.x, "thinned": path.thinned, "innovation": path.innovation,
                      "formulas": ["X_t = (m,r).X_{t-1} + eps_t"]})
    _emit(args, text)
    return EXIT_OK


def cmd_inar_decompose(args) -> int:
    p, marginal = ThinningParams(args.m, args.r), ThinningParams(args.mprime, args.rprime)
    dec = innovation_decompose(p, marginal)
    rec = {"first": {"m": dec.first.m, "r": dec.first.r},
           "second": None if dec.second is None else {"m": dec.second.m, "r": dec.second.r},
           "second_degenerate": dec.second_degenerate, "innovation_mean": dec.mean,
           "formulas": [F_DECOMP, "phi_eps(s) = psi_{m',r'}(s)/psi_{m',r'}(psi_{m,r}(s))"]}
    _emit(args, _record_output(args, rec))
    return EXIT_OK


def _spec_from_json(text: str) -> InarSpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"spec is not valid JSON: {exc}") from None
    ns = argparse.Namespace(m=obj.get("m"), r=obj.get("r", 0.0), marginal=obj.get("marginal"),
                            a=obj.get("a"), innovation=obj.get("innovation"), initial=obj.get("initial"))
    if ns.m is None:
        raise UsageError("spec needs at least m and r")
    return _inar_spec(ns)


def cmd_inar_check(args) -> int:
    text = args.spec
    if not text.lstrip().startswith("{"):
        text = Path(text).read_text()
    spec = _spec_from_json(text)
    rep = stationarity_check(spec, args.K)
    rec = {**_spec_record(spec),
           "limit_exists": rep.limit_exists,
           "criterion_integral": rep.integral.value,
           "criterion_error": rep.integral.error,
           "log_moment": rep.log_moment,
           "log_moment_finite": rep.log_moment_finite,
           "innovation_mean": rep.innovation_mean,
           "mean_positive_finite": rep.mean_positive_finite,
           "tail_bound": rep.tail_bound,
           "formulas": ["int_0^1 (1 - phi_eps(s)) / (psi_{m,r}(s) - s) ds < inf",
                        "E log(eps) < inf", "0 < E eps < inf"]}
    if spec.stationary:
        mom = stationary_moments(spec)
        rec["fixed_point_error"] = stationary_fixed_point_error(spec, args.K)
        rec["stationary_mean"] = mom.mean
        rec["stationary_variance"] = mom.variance
        rec["formulas"].append(F_STAT)
    _emit(args, _record_output(args, rec))
    ok = rep.limit_exists and rep.mean_positive_finite
    return EXIT_OK if ok else EXIT_FAIL


def cmd_inar_verify(args) -> int:
    spec = _inar_spec(args)
    config = RunConfig(seed=args.seed, truncation_K=args.K, tolerance=args.tol,
                       output_format=_fmt(args, "json"), replicate_count=args.replicates)
    reports = run_mc_verify(spec, config, T=args.T)
    if config.output_format == "csv":
        keys = list(reports[0].as_dict()) if reports else []
        text = _csv(keys, ([r.as_dict()[k] for k in keys] for r in reports))
    else:
        text = _json({**_spec_record(spec), "seed": args.seed, "rng": RNG_ALGORITHM, "T": args.T,
                      "z_threshold": config.z_threshold, "reports": [r.as_dict() for r in reports],
                      "formulas": sorted({r.reference for r in reports})})
    _emit(args, text)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _verdict_record(v: MonotonicityVerdict, kind: str, params: dict, formulas: list[str]) -> dict:
    rec = {"check": kind, **params, "status": v.status, "holds": v.holds, "inconclusive": v.inconclusive,
           "witness": v.witness, "violated_value": v.violated_value, "min_slack": v.min_slack,
           "detail": v.detail, "assume_zero": v.assume_zero, "formulas": formulas}
    if v.q_sequence is not None:
        rec["q_sequence"] = v.q_sequence.probs
    return rec


def _status_code(v: MonotonicityVerdict) -> int:
    return EXIT_OK if v.holds else (EXIT_INCONCLUSIVE if v.inconclusive else EXIT_FAIL)


def cmd_mono_check(args) -> int:
    if args.pmf:
        pmf = _read_pmf(args.pmf)
    elif args.dist:
        pmf = _dist(args.dist).pmf(args.K)
    else:
        raise UsageError("give --pmf or --dist")
    given = [name for name in ("theta", "r", "m") if getattr(args, name) is not None]
    if given == ["m"]:
        raise UsageError("--m needs --theta")
    if given == ["theta", "m"]:
        v = marginal_mR_check(pmf, args.m, args.theta)
        rec = _verdict_record(v, "[m,R]", {"m": args.m, "theta": args.theta}, [F_Q, F_MR_THETA])
    elif args.alpha is None:
        raise UsageError("--alpha is required unless --m and --theta are given")
    elif given == []:
        v = alpha_monotone_check(pmf, args.alpha)
        rec = _verdict_record(v, "alpha", {"alpha": args.alpha}, [F_ALPHA])
    elif given == ["theta"]:
        v = mr_monotone_check(pmf, MonotoneParams(args.alpha, args.theta))
        rec = _verdict_record(v, "[M,R]", {"alpha": args.alpha, "theta": args.theta}, [F_Q, F_ALPHA])
    elif given == ["r"]:
        v = marginal_Mr_check(pmf, args.alpha, args.r)
        rec = _verdict_record(v, "[M,r]", {"alpha": args.alpha, "r": args.r}, [F_MR_MARGINAL, F_ALPHA])
    else:
        raise UsageError("give at most one of --theta, --r, or the pair --m --theta")
    _emit(args, _record_output(args, rec))
    return _status_code(v)


def cmd_mono_synth(args) -> int:
    w = _dist(args.dist).pmf(args.K)
    mp = MonotoneParams(args.alpha, args.theta)
    # an explicit --K fixes the output truncation; otherwise it is chosen automatically
    out = mr_monotone_synthesize(w, mp, args.K if "K" in args.explicit else None)
    meta = {"descriptor": args.dist, "alpha": args.alpha, "theta": args.theta,
            "formulas": ["X = (M,R).W, M ~ power(alpha) on (0,1), R ~ exponential(mean theta)"]}
    _emit(args, _pmf_output(args, out, meta))
    return EXIT_OK


def cmd_mono_convolve(args) -> int:
    a, b = _floats(args.p1, 2), _floats(args.p2, 2)
    if args.kind == "MR":
        c = convolution_params(MonotoneParams(*a), MonotoneParams(*b))
        rec = {"kind": "MR", "alpha": c.alpha, "theta": c.theta, "formulas": [F_CONV]}
    elif args.kind == "fixed_r":
        alpha, r = marginal_convolution_params("fixed_r", a, b)
        rec = {"kind": "fixed_r", "alpha": alpha, "r": r, "formulas": ["alpha = alpha1 + alpha2, same r"]}
    else:
        m, theta = marginal_convolution_params("fixed_m", a, b)
        rec = {"kind": "fixed_m", "m": m, "theta": theta,
               "formulas": ["theta = theta1 theta2/(theta1 + theta2), same m"]}
    _emit(args, _record_output(args, rec))
    return EXIT_OK


# --- parser ------------------------------------------------------------------------


def _global_flags() -> argparse.ArgumentParser:
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="RNG seed (default 0)")
    g.add_argument("--K", type=int, default=argparse.SUPPRESS, help=f"truncation index (default {DEFAULT_K})")
    g.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="tolerance (default 0.05)")
    g.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS)
    g.add_argument("--out", default=argparse.SUPPRESS, help="output path (default stdout)")
    return g


def _inar_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--marginal", help="berg:m',r' | compnb:m',r'[,a] | zmg:pi,mu")
    p.add_argument("--a", type=float, help="CompNB shape")
    p.add_argument("--innovation", help="innovation descriptor for a non-stationary process")
    p.add_argument("--initial", help="law of X_0 with --innovation (default pointmass:0)")
    p.add_argument("--T", type=int, default=1000)


def build_parser() -> argparse.ArgumentParser:
    g = _global_flags()
    parser = _Parser(prog="lfthin", parents=[g], description="Linear-fractional thinning toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def leaf(group, name, func, **kw):
        p = group.add_parser(name, parents=[g], **kw)
        p.set_defaults(func=func)
        return p

    dist = sub.add_parser("dist", help="distribution pmfs, moments and samples").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    for name, func in (("pmf", cmd_dist_pmf), ("moments", cmd_dist_moments), ("sample", cmd_dist_sample)):
        p = leaf(dist, name, func)
        p.add_argument("--name", required=True, help="descriptor, e.g. berg:0.5,0.3")
        if name == "sample":
            p.add_argument("--n", type=int, default=1000)

    sg = sub.add_parser("semigroup", help="parameter composition and validation").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    p = leaf(sg, "compose", cmd_semigroup_compose)
    p.add_argument("--p", required=True, help="m,r")
    p.add_argument("--q", required=True, help="m,r")
    p = leaf(sg, "power", cmd_semigroup_power)
    p.add_argument("--p", required=True, help="m,r")
    p.add_argument("--n", type=int, required=True)
    p = leaf(sg, "validate", cmd_semigroup_validate)
    p.add_argument("--p", required=True, help="m,r")

    p = leaf(sub, "thin", cmd_thin, help="law or samples of (m,r).X")
    p.add_argument("--op", required=True, help=f"m,r or name:params with name in {', '.join(CATALOG_NAMES)}")
    p.add_argument("--x", required=True, help="a count or a distribution descriptor")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact pmf (default)")
    mode.add_argument("--sample", type=int, metavar="N", help="draw N samples")

    inar = sub.add_parser("inar", help="INAR(1) processes").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    _inar_flags(leaf(inar, "simulate", cmd_inar_simulate))
    p = leaf(inar, "decompose", cmd_inar_decompose)
    for name in ("m", "r", "mprime", "rprime"):
        p.add_argument(f"--{name}", type=float, required=True)
    p = leaf(inar, "check", cmd_inar_check)
    p.add_argument("--spec", required=True, help="JSON object or path to one")
    p = leaf(inar, "verify", cmd_inar_verify)
    _inar_flags(p)
    p.set_defaults(T=100_000)
    p.add_argument("--replicates", type=int, default=1)

    mono = sub.add_parser("mono", help="monotonicity checks and constructions").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    p = leaf(mono, "check", cmd_mono_check)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--pmf", help="CSV or JSON pmf file ('-' for stdin)")
    src.add_argument("--dist", help="distribution descriptor")
    p.add_argument("--alpha", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--r", type=float)
    p.add_argument("--m", type=float)
    p = leaf(mono, "synth", cmd_mono_synth)
    p.add_argument("--dist", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)
    p = leaf(mono, "convolve-params", cmd_mono_convolve)
    p.add_argument("--p1", required=True, help="alpha,theta | alpha,r | m,theta")
    p.add_argument("--p2", required=True)
    p.add_argument("--kind", choices=("MR", "fixed_r", "fixed_m"), default="MR")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    args.explicit = {key for key in GLOBAL_DEFAULTS if hasattr(args, key)}
    for key, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    if args.K < 16:
        sys.stderr.write("lfthin: error: --K must be >= 16\n")
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"lfthin: error: {exc}\n")
        return EXIT_USAGE
    except ConstraintViolation as exc:
        sys.stderr.write("lfthin: constraint violated:\n" + "".join(f"  {v}\n" for v in exc.violations))
        return EXIT_FAIL
    except (ParameterError, ValueError) as exc:
        sys.stderr.write(f"lfthin: invalid input: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
