"""Command-line front end: scenarios, sweeps, verification suites and reports."""

from __future__ import annotations

import argparse
import concurrent.futures as cf
import csv
import io
import json
import math
import os
import sys
import time
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import asym, fredholm, legendre_limit, scaling, specfun, toeplitz
from .errors import ConfigError, GapscaleError
from .sets import ArcSet, IntervalSet

EXIT_OK, EXIT_ERROR, EXIT_BREACH = 0, 1, 2

# column -> what it holds; every report column must be listed here
DATA_DICTIONARY = {
    "kind": "scenario kind",
    "s": "bandwidth of the sine kernel",
    "alpha": "left endpoint of the outer interval",
    "beta": "right endpoint of the outer interval",
    "nu": "half-width of the closing gap (-nu, nu)",
    "alpha1": "left endpoint of the first interval",
    "beta1": "right endpoint of the first interval",
    "alpha2": "left endpoint of the second interval",
    "beta2": "right endpoint of the second interval",
    "n": "Toeplitz matrix size",
    "nodes": "Gauss nodes per interval (0 = bandlimit default)",
    "theta0": "half-angle of the small arc around 1",
    "theta1": "upper edge of the removed arc",
    "theta2": "lower edge of the removed arc",
    "k": "integer part of omega = k + x",
    "x": "fractional part of omega, in [-1/2, 1/2)",
    "omega": "s sqrt|alpha beta| / log(1/(gamma nu))",
    "gamma": "(1/beta - 1/alpha) / 8",
    "variant": "transition formula variant (finite-k or large-k)",
    "u0": "theta0 n / s",
    "u1": "theta1 n / s",
    "u2": "theta2 n / s",
    "log_p": "log det(I - K_s) on the interval set (Nystrom)",
    "log_p0": "log det(I - K_s) on the outer interval alone",
    "log_d": "log D_n of the arc set (Szego recursion)",
    "total": "sum of the asymptotic terms",
    "residual": "|numerical value - asymptotic total|",
    "tolerance": "acceptance bound applied to the residual",
    "pass": "1 if the residual is within tolerance",
    "warnings": "regime warnings raised during evaluation",
    "wall_time": "evaluation time in seconds (only with --timing)",
    # one-gap / one-arc / transition terms
    "leading": "leading (quadratic) term",
    "log_s": "logarithmic term in s",
    "log_length": "-log((beta - alpha)/2)/4",
    "log_n_sin": "-log(n sin((theta1 - theta2)/4))/4",
    "constant": "constant term",
    "one_gap": "one-gap expansion total",
    "one_arc": "one-arc Toeplitz expansion total",
    "exponent": "s sqrt|alpha beta| (omega - x^2/omega)",
    "c_k": "c(k) from Barnes G values",
    "delta_k": "delta_k(x), the two-logarithm correction",
    "loglog": "log(log(1/(gamma nu)))/4",
    "x_squared": "-x^2 log(1/(gamma nu))",
    "correction": "log(1 + (gamma nu)^(1 - 2|x|))",
    "log_geometry": "-log(((beta - alpha)/2) sqrt|alpha beta|)/4",
    # two-gap geometry
    "q1": "linear coefficient of the monic quadratic q",
    "q0": "constant coefficient of q",
    "G1": "s^2 coefficient of the two-gap expansion",
    "V": "frequency of the theta-function oscillation",
    "tau_imag": "Im tau of the theta function",
    "period_residual": "largest defining integral of q (relative)",
    "residue": "1/z coefficient of q/r at infinity",
    "theta": "log theta3(s V; tau)",
    # verification extras
    "lhs": "finite-difference derivative of log D_n in theta0",
    "rhs": "orthogonal-polynomial side of the differential identity",
    "gap": "|D_n - det(I - K_s)| for the scaled arcs",
    "c_barnes": "c(k) from Barnes G values",
    "c_kappa": "c(k) from Legendre leading coefficients",
    "side_low": "transition total with decomposition (k, 1/2)",
    "side_high": "transition total with decomposition (k + 1, -1/2)",
    "omega_leading": "leading-order value of Omega",
    "omega_solved": "Omega solving zeta(a) - zeta(conj a) = 4",
    "omega_residual": "|zeta(a) - zeta(conj a) - 4| at the solved Omega",
    "jump_g1": "max error of the g1 jump on J2",
    "value_g1": "error of g1 at b1",
    "jump_h": "max error of the h jumps",
    "value_h": "error of h at b1",
    "trace": "nu times the integral of the diagonal of H_n over (-1, 1)",
    "kernel_residual": "max probe error against 2 K_Leg(2 x1, 2 x2)",
    "target_max": "max |2 K_Leg| over the probes",
}


@dataclass
class Scenario:
    kind: str
    parameters: dict = field(default_factory=dict)
    out: str | None = None
    fmt: str = "csv"
    timing: bool = False


# schemas: kind -> {parameter: default}; None marks a required parameter
_SCHEMAS: dict[str, dict] = {
    "fredholm": {"s": None, "alpha": -1.0, "beta": 1.0, "nu": 0.0, "nodes": 0},
    "toeplitz": {"n": None, "s": None, "alpha": -1.0, "beta": 1.0, "nu": 0.0},
    "asym-one-gap": {"s": None, "alpha": -1.0, "beta": 1.0},
    "asym-one-arc": {"n": None, "theta1": None, "theta2": None},
    "asym-transition": {"s": 8.0, "alpha": -1.0, "beta": 1.0, "nu": 1e-3, "variant": "finite-k"},
    "asym-two-arc": {"n": None, "s": 4.0, "alpha": -1.0, "beta": 1.0, "nu": 1e-3},
    "asym-two-gap": {"alpha1": -1.0, "beta1": -0.3, "alpha2": 0.3, "beta2": 1.0, "s": 8.0},
    "verify-diffid": {"n": 0, "theta0": 0.0},
    "verify-one-gap": {"s": 8.0, "alpha": -1.0, "beta": 1.0},
    "verify-transition": {"s": 8.0, "alpha": -1.0, "beta": 1.0, "nu": 1e-3},
    "verify-continuity": {"alpha": -1.0, "beta": 1.0, "nu": 1e-3, "k": 0},
    "verify-cdual": {"k": 0},
    "verify-one-arc": {"n": 1024, "theta1": 1.0},
    "verify-appendix": {"s": 2.0, "n": 256, "nu": 0.1},
    "verify-two-gap": {"alpha1": -1.0, "beta1": -1e-8, "alpha2": 1e-8, "beta2": 1.0},
    "verify-scaling": {"s": 8.0, "n": 1e5, "u0": 1e-3, "u1": 2.0, "u2": -2.0},
    "verify-legendre": {"s": 8.0, "k": 1, "n": 2048},
}
_STRINGS = {"variant"}
_INTS = {"n", "nodes", "k"}


def kinds() -> list[str]:
    return list(_SCHEMAS)


def validate(sc: Scenario) -> dict:
    """Fill defaults and coerce types; unknown or missing keys are config errors."""
    if sc.kind not in _SCHEMAS:
        raise ConfigError(f"unknown scenario kind {sc.kind!r}")
    if sc.fmt not in ("csv", "json"):
        raise ConfigError(f"unknown format {sc.fmt!r}")
    schema = _SCHEMAS[sc.kind]
    unknown = sorted(set(sc.parameters) - set(schema))
    if unknown:
        raise ConfigError(f"unknown parameters for {sc.kind}: {', '.join(unknown)}")
    out = {}
    for key, default in schema.items():
        val = sc.parameters.get(key, default)
        if val is None:
            raise ConfigError(f"{sc.kind} needs parameter {key!r}")
        try:
            if key in _STRINGS:
                out[key] = str(val)
            elif key in _INTS:
                fv = float(val)
                if fv != int(fv):
                    raise ValueError
                out[key] = int(fv)
            else:
                out[key] = float(val)
        except (TypeError, ValueError):
            raise ConfigError(f"parameter {key!r} has invalid value {val!r}") from None
    return out


def _interval_set(p) -> IntervalSet:
    if p["nu"] > 0:
        return IntervalSet.two_gaps(p["alpha"], p["beta"], p["nu"])
    return IntervalSet(((p["alpha"], p["beta"]),))


def _terms(b: asym.AsymptoticBreakdown) -> dict:
    row = dict(b.terms)
    row["total"] = b.total
    return row


def _check(row: dict, value: float, tol: float) -> dict:
    row["residual"] = value
    row["tolerance"] = tol
    row["pass"] = int(bool(value <= tol))
    return row


def _run_fredholm(p):
    if p["s"] == 0:
        return [{"log_p": 0.0}]
    A = _interval_set(p)
    return [{"log_p": fredholm.log_gap_probability(p["s"], A, p["nodes"] or None)}]


def _run_toeplitz(p):
    J = toeplitz.limit_arcs(p["s"], _interval_set(p), p["n"])
    return [{"log_d": toeplitz.log_toeplitz_det_szego(J, p["n"]).log_det}]


def _run_one_gap(p):
    return [_terms(asym.one_gap_asymptotic(p["s"], p["alpha"], p["beta"]))]


def _run_one_arc(p):
    return [_terms(asym.one_arc_toeplitz_asymptotic(p["n"], p["theta1"], p["theta2"]))]


def _transition_cols(tp: asym.TransitionParams) -> dict:
    return {"gamma": tp.gamma, "omega": tp.omega, "k": tp.k, "x": tp.x}


def _run_transition(p):
    tp = asym.transition_params(p["s"], p["alpha"], p["beta"], p["nu"])
    b = asym.transition_asymptotic(p["s"], p["alpha"], p["beta"], p["nu"], variant=p["variant"])
    return [{**_transition_cols(tp), **_terms(b)}]


def _run_two_arc(p):
    tp = asym.transition_params(p["s"], p["alpha"], p["beta"], p["nu"])
    b = asym.two_arc_toeplitz_asymptotic(p["n"], p["s"], p["alpha"], p["beta"], p["nu"])
    return [{**_transition_cols(tp), **_terms(b)}]


def _geometry_cols(g: asym.TwoGapGeometry) -> dict:
    return {
        "q1": g.q1,
        "q0": g.q0,
        "G1": g.G1,
        "V": g.V,
        "tau_imag": g.tau.imag,
        "period_residual": max(g.period_residuals),
        "residue": g.residue_at_infinity,
    }


def _run_two_gap(p):
    g = asym.two_gap_geometry(p["alpha1"], p["beta1"], p["alpha2"], p["beta2"])
    return [{**_geometry_cols(g), **_terms(asym.two_gap_leading(p["s"], g))}]


def _verify_diffid(p):
    ns = [p["n"]] if p["n"] else [8, 16, 24]
    ts = [p["theta0"]] if p["theta0"] else [0.1, 0.4, 0.8]
    rows = []
    for n in ns:
        for t0 in ts:
            lhs, rhs = toeplitz.diff_identity_check(n, t0)
            row = {"n": n, "theta0": t0, "lhs": lhs, "rhs": rhs}
            rows.append(_check(row, abs(lhs - rhs) / abs(rhs), 1e-4))
    return rows


def _verify_one_gap(p):
    logp = fredholm.log_gap_probability(p["s"], IntervalSet(((p["alpha"], p["beta"]),)))
    row = {"log_p": logp, **_terms(asym.one_gap_asymptotic(p["s"], p["alpha"], p["beta"]))}
    # an O(1/s) error budget that equals 0.02 at s = 8 on (-1, 1)
    tol = 0.16 / (p["s"] * 0.5 * (p["beta"] - p["alpha"]))
    return [_check(row, abs(logp - row["total"]), tol)]


def _verify_transition(p):
    A = IntervalSet.two_gaps(p["alpha"], p["beta"], p["nu"])
    logp = fredholm.log_gap_probability(p["s"], A)
    rows = _run_transition({**p, "variant": "finite-k"})
    row = {"log_p": logp, **rows[0]}
    return [_check(row, abs(logp - row["total"]), 0.1)]


def _verify_continuity(p):
    rows = []
    ks = [p["k"]] if p["k"] else range(1, 11)
    a, b, nu = p["alpha"], p["beta"], p["nu"]
    g = asym._gamma(a, b)
    for k in ks:
        # s placing omega exactly on k + 1/2 at this nu
        s = (k + 0.5) * -math.log(g * nu) / math.sqrt(abs(a * b))
        lo = asym.transition_asymptotic(s, a, b, nu, decomposition=(k, 0.5)).total
        hi = asym.transition_asymptotic(s, a, b, nu, decomposition=(k + 1, -0.5)).total
        row = {"k": k, "s": s, "side_low": lo, "side_high": hi}
        rows.append(_check(row, abs(lo - hi), 1e-9))
    return rows


def _verify_cdual(p):
    rows = []
    for k in [p["k"]] if p["k"] else range(0, 51):
        cb, ck = specfun.c_of_k_barnes(k), specfun.c_of_k_kappa(k)
        rows.append(_check({"k": k, "c_barnes": cb, "c_kappa": ck}, abs(cb - ck), 1e-10))
    return rows


def _verify_one_arc(p):
    th = p["theta1"]
    logd = toeplitz.log_toeplitz_det_szego(ArcSet.one_arc(th, -th), p["n"]).log_det
    b = asym.one_arc_toeplitz_asymptotic(p["n"], th, -th)
    row = {"theta1": th, "theta2": -th, "log_d": logd, **_terms(b)}
    # O(1/(n sin)) budget equal to 0.02 at n = 1024, theta1 = 1/2
    tol = 0.02 * 1024 * math.sin(0.25) / (p["n"] * math.sin(0.5 * th))
    return [_check(row, abs(logd - row["total"]), tol)]


def _verify_appendix(p):
    A = IntervalSet.two_gaps(-1.0, 1.0, p["nu"])
    gap = toeplitz.fredholm_limit_gap(p["s"], A, p["n"])
    row = {"alpha": -1.0, "beta": 1.0, "gap": gap}
    return [_check(row, gap, 1.0 / p["n"])]


def _verify_two_gap(p):
    g = asym.two_gap_geometry(p["alpha1"], p["beta1"], p["alpha2"], p["beta2"])
    row = _geometry_cols(g)
    return [_check(row, max(row["period_residual"], abs(row["residue"])), 1e-10)]


def _verify_scaling(p):
    ctx = scaling.ScalingContext.from_u(p["s"], p["n"], p["u0"], p["u1"], p["u2"])
    rep = scaling.identity_report(ctx)
    row = {k: rep[k] for k in ("jump_g1", "value_g1", "jump_h", "value_h", "omega_leading", "omega_solved", "omega_residual")}
    worst = max(rep["jump_g1"], rep["value_g1"], rep["jump_h"], rep["value_h"])
    rel = abs(rep["omega_solved"] / rep["omega_leading"] - 1.0)
    ok = worst <= 1e-10 and rep["omega_residual"] <= 1e-12 and rel <= 0.1
    row["residual"] = worst
    row["tolerance"] = 1e-10
    row["pass"] = int(ok)
    return [row]


def _verify_legendre(p):
    r = legendre_limit.kernel_limit(p["s"], -1.0, 1.0, p["k"], p["n"])
    row = {"nu": r.nu, "trace": r.trace, "kernel_residual": r.residual, "target_max": r.target_max}
    ok = abs(r.trace - p["k"]) <= 0.1 and r.residual < 0.2 * r.target_max
    row["residual"] = abs(r.trace - p["k"])
    row["tolerance"] = 0.1
    row["pass"] = int(ok)
    return [row]


_RUNNERS: dict[str, Callable] = {
    "fredholm": _run_fredholm,
    "toeplitz": _run_toeplitz,
    "asym-one-gap": _run_one_gap,
    "asym-one-arc": _run_one_arc,
    "asym-transition": _run_transition,
    "asym-two-arc": _run_two_arc,
    "asym-two-gap": _run_two_gap,
    "verify-diffid": _verify_diffid,
    "verify-one-gap": _verify_one_gap,
    "verify-transition": _verify_transition,
    "verify-continuity": _verify_continuity,
    "verify-cdual": _verify_cdual,
    "verify-one-arc": _verify_one_arc,
    "verify-appendix": _verify_appendix,
    "verify-two-gap": _verify_two_gap,
    "verify-scaling": _verify_scaling,
    "verify-legendre": _verify_legendre,
}


def run(sc: Scenario) -> list[dict]:
    """Evaluate a scenario; rows start with the inputs, then terms, then totals and residuals."""
    p = validate(sc)
    t = time.perf_counter()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        body = _RUNNERS[sc.kind](p)
    elapsed = time.perf_counter() - t
    msgs = "; ".join(sorted({str(w.message) for w in caught}))
    rows = []
    for b in body:
        row = {"kind": sc.kind}
        row.update({k: v for k, v in p.items() if k not in b})
        row.update(b)
        row["warnings"] = msgs
        if sc.timing:
            row["wall_time"] = elapsed
        rows.append(row)
    return rows


def _run_one(args):
    sc, axis, value = args
    params = dict(sc.parameters)
    params[axis] = value
    return run(Scenario(sc.kind, params, timing=sc.timing))


def thread_count() -> int:
    raw = os.environ.get("GAPSCALE_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        val = int(raw)
    except ValueError:
        raise ConfigError(f"GAPSCALE_THREADS must be an integer, got {raw!r}") from None
    if val < 1:
        raise ConfigError("GAPSCALE_THREADS must be at least 1")
    return val


def sweep(sc: Scenario, axis: str, values) -> list[dict]:
    """One evaluation per value, run in parallel processes, rows kept in input order."""
    validate(sc if axis in sc.parameters else Scenario(sc.kind, {**sc.parameters, axis: values[0] if values else 0}))
    schema = _SCHEMAS[sc.kind]
    if axis not in schema or axis in _STRINGS:
        raise ConfigError(f"{axis!r} is not a numeric parameter of {sc.kind}")
    jobs = [(sc, axis, v) for v in values]
    workers = min(thread_count(), len(jobs))
    if workers <= 1:
        chunks = [_run_one(j) for j in jobs]
    else:
        # separate processes keep warning capture and BLAS state per evaluation
        with cf.ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_one, jobs))
    return [row for chunk in chunks for row in chunk]


def columns(rows: list[dict]) -> list[str]:
    cols: list[str] = []
    for row in rows:
        for key in row:
            if key not in cols:
                cols.append(key)
    return cols


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def to_csv(rows: list[dict], header: list[str] | None = None) -> str:
    cols = header if header is not None else columns(rows)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for row in rows:
        w.writerow(["" if c not in row else _fmt(row[c]) for c in cols])
    return buf.getvalue()


def to_json(rows: list[dict]) -> str:
    def clean(v):
        if isinstance(v, (np.integer,)):
            return int(v)
        if isinstance(v, (np.floating,)):
            return float(v)
        return v

    cols = columns(rows)
    doc = {
        "columns": {c: DATA_DICTIONARY.get(c, "") for c in cols},
        "rows": [{k: clean(v) for k, v in row.items()} for row in rows],
    }
    return json.dumps(doc, indent=2) + "\n"


def _header_for(kind: str) -> list[str]:
    return ["kind", *_SCHEMAS[kind]]


def load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    allowed = {"kind", "parameters", "out", "format", "axis", "values"}
    extra = sorted(set(doc) - allowed)
    if extra:
        raise ConfigError(f"unknown config keys: {', '.join(extra)}")
    if not isinstance(doc.get("parameters", {}), dict):
        raise ConfigError("'parameters' must be an object")
    return doc


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser):
    for flag in ("s", "alpha", "beta", "nu", "theta0", "theta1", "theta2", "u0", "u1", "u2"):
        p.add_argument(f"--{flag}", type=float)
    for flag in ("alpha1", "beta1", "alpha2", "beta2"):
        p.add_argument(f"--{flag}", type=float)
    p.add_argument("--n", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--nodes", type=int)
    p.add_argument("--variant", choices=asym.VARIANTS)
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--config")
    p.add_argument("--timing", action="store_true", help="add a wall_time column (not reproducible)")


_PARAM_FLAGS = (
    "s", "alpha", "beta", "nu", "theta0", "theta1", "theta2", "u0", "u1", "u2",
    "alpha1", "beta1", "alpha2", "beta2", "n", "k", "nodes", "variant",
)
_VERIFY_SUITES = sorted(k[len("verify-"):] for k in _SCHEMAS if k.startswith("verify-"))
_ASYM_VARIANTS = sorted(k[len("asym-"):] for k in _SCHEMAS if k.startswith("asym-"))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gapscale", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("fredholm", "toeplitz"):
        _common(sub.add_parser(name))
    p = sub.add_parser("asym")
    p.add_argument("which", choices=_ASYM_VARIANTS)
    _common(p)
    p = sub.add_parser("verify")
    p.add_argument("suite", choices=_VERIFY_SUITES)
    _common(p)
    p = sub.add_parser("sweep")
    p.add_argument("--kind", choices=kinds())
    p.add_argument("--axis")
    p.add_argument("--values")
    _common(p)
    sub.add_parser("columns", help="print the data dictionary")
    return parser


def _scenario(ns) -> tuple[Scenario, str | None, list | None]:
    cfg = load_config(ns.config) if getattr(ns, "config", None) else {}
    if ns.command in ("fredholm", "toeplitz"):
        kind = ns.command
    elif ns.command == "asym":
        kind = f"asym-{ns.which}"
    elif ns.command == "verify":
        kind = f"verify-{ns.suite}"
    else:
        kind = ns.kind or cfg.get("kind")
        if kind is None:
            raise ConfigError("sweep needs --kind or a config 'kind'")
    if cfg.get("kind") not in (None, kind):
        raise ConfigError(f"config kind {cfg['kind']!r} does not match command {kind!r}")
    params = dict(cfg.get("parameters", {}))
    # flags win over the config file
    for key in _PARAM_FLAGS:
        val = getattr(ns, key, None)
        if val is not None:
            params[key] = val
    fmt = ns.format or cfg.get("format", "csv")
    sc = Scenario(kind, params, ns.out or cfg.get("out"), fmt, ns.timing)
    axis = values = None
    if ns.command == "sweep":
        axis = ns.axis or cfg.get("axis")
        if axis is None:
            raise ConfigError("sweep needs --axis")
        if ns.values is not None:
            raw = [v for v in ns.values.split(",") if v.strip()]
            try:
                values = [float(v) for v in raw]
            except ValueError:
                raise ConfigError(f"--values must be numbers, got {ns.values!r}") from None
        else:
            values = [float(v) for v in cfg.get("values", [])]
    return sc, axis, values


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.command == "columns":
        _emit(to_csv([{"column": k, "meaning": v} for k, v in DATA_DICTIONARY.items()]), None)
        return EXIT_OK
    try:
        sc, axis, values = _scenario(ns)
        if axis is not None:
            rows = sweep(sc, axis, values)
        else:
            rows = run(sc)
        if sc.fmt == "json":
            text = to_json(rows)
        else:
            text = to_csv(rows, None if rows else _header_for(sc.kind))
        _emit(text, sc.out)
    except (GapscaleError, OSError) as exc:
        print(f"gapscale: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if sc.kind.startswith("verify-") and any(r.get("pass") == 0 for r in rows):
        return EXIT_BREACH
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
