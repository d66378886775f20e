"""Command-line interface.

Subcommands::

    kgaim spectrum      table of (n, E, c, norm)
    kgaim wavefunction  sampled u(r) on a logarithmic grid
    kgaim verify        oracle cross-checks, JSON report
    kgaim sweep         spectrum over a grid of one parameter

Options may also come from a flat ``key = value`` file given with
``--config``; command-line flags override the file, which overrides the
built-in defaults.  Relative ``--output`` paths are resolved against the
directory named by ``KGAIM_OUTPUT_DIR`` (default: the working directory).

Exit codes: 0 success, 1 usage or configuration error, 2 partial results
(some ``n`` had no bound state), 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .laurent import aim_iterate
from .model import OvercriticalError, PotentialParams, ProblemSpec, build_aim_inputs
from .oracle import ShootingError, StiffStartError, norm_defect, residual, shoot_state
from .spectra import (
    BoundState,
    coulomb_energy,
    coulomb_wavefunction,
    equal_kratzer_wavefunction,
    g_excited_solve,
    monic_solve,
    unequal_ground_solve,
)
from .specfun import NotBoundStateError

OUTPUT_DIR_ENV = "KGAIM_OUTPUT_DIR"
SCHEMA = 1
CASES = (
    "coulomb",
    "equal-kratzer",
    "unequal-kratzer-ground",
    "unequal-kratzer-g1",
    "unequal-kratzer-g2",
    "monic",
)
REQUIRED = {
    "coulomb": ("s", "v"),
    "equal-kratzer": ("A", "B"),
    "unequal-kratzer-ground": ("s1", "v1", "s2", "v2"),
    "unequal-kratzer-g1": ("s1", "v1", "s2", "v2"),
    "unequal-kratzer-g2": ("s1", "v1", "s2", "v2"),
    "monic": ("a", "b", "c"),
}
FIXED_N = {"unequal-kratzer-ground": 0, "unequal-kratzer-g1": 1, "unequal-kratzer-g2": 2}
CHECKS = ("oracle", "residual", "norm", "termination", "degeneracy")
THRESHOLDS = {"oracle": 1e-6, "residual": 1e-8, "norm": 1e-8, "termination": 1e-9, "degeneracy": 1e-12}
SPECTRUM_COLUMNS = ("n", "E", "c", "norm")
MONIC_COLUMNS = ("n", "G", "nodes")

DEFAULTS = {
    "case": None,
    "M": 1.0,
    "d": 3,
    "l": 0,
    "n": "0",
    "branch": "plus",
    "format": "csv",
    "output": None,
    "r_min": None,
    "r_max": None,
    "points": 200,
    "checks": ",".join(CHECKS),
    "inject_energy_error": 0.0,
    "param": None,
    "values": None,
    "jobs": 1,
}
FLOAT_KEYS = ("M", "s", "v", "A", "B", "s1", "v1", "s2", "v2", "a", "b", "c", "r_min", "r_max", "inject_energy_error")
INT_KEYS = ("d", "l", "points", "jobs")
NO_BOUND_STATE = (
    NotBoundStateError,
    OvercriticalError,
    ArithmeticError,
    ValueError,
)


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """12 significant digits; ``""`` for missing values."""
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return f"{float(x):.12g}"


def _json_num(x):
    if x is None:
        return None
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return int(x)
    if isinstance(x, (bool, str)):
        return x
    return float(f"{float(x):.12g}")


def _jsonify(obj):
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    return _json_num(obj)


# ------------------------------------------------------------------ config


def parse_n_range(text: str) -> list[int]:
    text = str(text).strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"invalid n range {text!r}; use N or N..M") from None
    if lo < 0 or hi < lo:
        raise UsageError(f"empty or negative n range {text!r}")
    return list(range(lo, hi + 1))


def parse_values(text: str) -> list[float]:
    """``start:stop:count`` (inclusive linspace) or a comma-separated list."""
    text = str(text).strip()
    try:
        if ":" in text:
            start, stop, count = text.split(":")
            count = int(count)
            if count < 1:
                raise ValueError
            return [float(x) for x in np.linspace(float(start), float(stop), count)]
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"invalid value list {text!r}") from None
    if not vals:
        raise UsageError("empty value list")
    return vals


def read_config(path: str) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for num, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{num}: expected key = value")
        key, val = (t.strip() for t in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in DEFAULTS and key not in FLOAT_KEYS:
            raise UsageError(f"{path}:{num}: unknown key {key!r}")
        out[key] = val
    return out


def write_config(path: str, cfg: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for key in sorted(cfg):
            val = cfg[key]
            if val is None or key in ("output", "save_config"):
                continue
            fh.write(f"{key} = {val}\n")


def _coerce(cfg: dict) -> dict:
    out = dict(cfg)
    for key in FLOAT_KEYS:
        if out.get(key) is not None:
            try:
                out[key] = float(out[key])
            except ValueError:
                raise UsageError(f"{key} must be a number, got {out[key]!r}") from None
    for key in INT_KEYS:
        if out.get(key) is not None:
            try:
                out[key] = int(out[key])
            except ValueError:
                raise UsageError(f"{key} must be an integer, got {out[key]!r}") from None
    return out


def merge_config(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    if args.config:
        cfg.update(read_config(args.config))
    for key, val in vars(args).items():
        if key in ("command", "config", "save_config", "func"):
            continue
        if val is not None:
            cfg[key] = val
    cfg = _coerce(cfg)
    if cfg["case"] not in CASES:
        raise UsageError(f"--case is required and must be one of {', '.join(CASES)}")
    # a swept parameter is supplied per grid point
    missing = [k for k in REQUIRED[cfg["case"]] if cfg.get(k) is None and k != cfg.get("param")]
    if missing:
        raise UsageError(f"case {cfg['case']} requires " + ", ".join("--" + k for k in missing))
    if cfg["format"] not in ("csv", "json"):
        raise UsageError("--format must be csv or json")
    if cfg["branch"] not in ("plus", "minus"):
        raise UsageError("--branch must be plus or minus")
    try:
        ProblemSpec(cfg["M"], cfg["d"], cfg["l"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return cfg


def _spec(cfg, d=None, l=None) -> ProblemSpec:
    return ProblemSpec(cfg["M"], cfg["d"] if d is None else d, cfg["l"] if l is None else l)


def _params(cfg) -> PotentialParams:
    case = cfg["case"]
    if case == "coulomb":
        return PotentialParams.coulomb(cfg["s"], cfg["v"])
    if case == "equal-kratzer":
        return PotentialParams.equal_kratzer(cfg["A"], cfg["B"])
    return PotentialParams(cfg["s1"], cfg["v1"], cfg["s2"], cfg["v2"])


def _ns(cfg) -> list[int]:
    if cfg["case"] in FIXED_N:
        return [FIXED_N[cfg["case"]]]
    ns = parse_n_range(cfg["n"])
    if cfg["case"] == "monic" and ns[0] < 1:
        raise UsageError("monic case needs n >= 1")
    return ns


# ----------------------------------------------------------------- solving


def solve_state(cfg: dict, n: int, spec: ProblemSpec | None = None) -> BoundState:
    spec = spec or _spec(cfg)
    case = cfg["case"]
    if case == "coulomb":
        E = coulomb_energy(spec, cfg["s"], cfg["v"], n, cfg["branch"])
        return coulomb_wavefunction(spec, cfg["s"], cfg["v"], n, E)
    if case == "equal-kratzer":
        return equal_kratzer_wavefunction(spec, cfg["A"], cfg["B"], n)
    if case == "unequal-kratzer-ground":
        return unequal_ground_solve(spec, _params(cfg))
    if case in ("unequal-kratzer-g1", "unequal-kratzer-g2"):
        return g_excited_solve(spec, _params(cfg), n)
    raise UsageError(f"case {case} has no bound-state solver")


def _spectrum_rows(cfg: dict) -> tuple[list[dict], list[str]]:
    rows, problems = [], []
    if cfg["case"] == "monic":
        for n in _ns(cfg):
            try:
                _, systems = monic_solve(n, cfg["a"], cfg["b"], cfg["c"])
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            if not systems:
                rows.append({"n": n, "G": None, "nodes": None})
                problems.append(f"n={n}: no real root of the condition polynomial")
            for sysm in systems:
                r = sysm.roots
                nodes = int(sum(1 for z in r if abs(z.imag) <= 1e-9 * (1 + abs(z)) and z.real > 0))
                rows.append({"n": n, "G": sysm.G, "nodes": nodes})
        return rows, problems
    for n in _ns(cfg):
        try:
            st = solve_state(cfg, n)
            rows.append(st.as_row())
        except NO_BOUND_STATE as exc:
            rows.append({"n": n, "E": None, "c": None, "norm": None})
            problems.append(f"n={n}: {exc}")
    return rows, problems


def render(rows: list[dict], columns: tuple[str, ...], form: str, extra: dict | None = None) -> str:
    if form == "json":
        return json.dumps(_jsonify([{k: r.get(k) for k in extra or {}} | {k: r.get(k) for k in columns} for r in rows]), indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cols = tuple(extra or ()) + columns
    w.writerow(cols)
    for r in rows:
        w.writerow([fmt(r.get(k)) for k in cols])
    return buf.getvalue()


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    path = output
    if not os.path.isabs(path):
        path = os.path.join(os.environ.get(OUTPUT_DIR_ENV, "."), path)
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _warn(problems: list[str]) -> None:
    for p in problems:
        print(f"kgaim: {p}", file=sys.stderr)


def cmd_spectrum(cfg: dict) -> int:
    rows, problems = _spectrum_rows(cfg)
    cols = MONIC_COLUMNS if cfg["case"] == "monic" else SPECTRUM_COLUMNS
    _emit(render(rows, cols, cfg["format"]), cfg["output"])
    _warn(problems)
    return 2 if problems else 0


def cmd_wavefunction(cfg: dict) -> int:
    if cfg["case"] == "monic":
        raise UsageError("wavefunction is not available for the monic case")
    ns = _ns(cfg)
    if len(ns) != 1:
        raise UsageError("wavefunction needs a single n")
    if cfg["r_min"] is None or cfg["r_max"] is None:
        raise UsageError("wavefunction needs --r-min and --r-max")
    if not (0 < cfg["r_min"] < cfg["r_max"]) or cfg["points"] < 2:
        raise UsageError("grid needs 0 < r_min < r_max and points >= 2")
    try:
        st = solve_state(cfg, ns[0])
    except NO_BOUND_STATE as exc:
        _warn([f"n={ns[0]}: {exc}"])
        return 2
    r = np.geomspace(cfg["r_min"], cfg["r_max"], cfg["points"])
    u = np.atleast_1d(st.u(r))
    meta = {"n": st.n, "E": st.E, "c": st.c, "norm": st.norm, "family": st.family}
    if cfg["format"] == "json":
        doc = {"schema": SCHEMA, "meta": meta, "rows": [{"r": a, "u": b} for a, b in zip(r, u)]}
        text = json.dumps(_jsonify(doc), indent=2) + "\n"
    else:
        head = "".join(f"# {k}={v if isinstance(v, str) else fmt(v)}\n" for k, v in meta.items())
        text = head + render([{"r": a, "u": b} for a, b in zip(r, u)], ("r", "u"), "csv")
    _emit(text, cfg["output"])
    return 0


# ------------------------------------------------------------------ verify


def _oracle_check(spec, params, st: BoundState, E_test: float) -> float:
    M = spec.M
    w = 0.05 * M
    lo, hi = max(st.E - w, -M * (1 - 1e-9)), min(st.E + w, M * (1 - 1e-9))
    res = shoot_state(spec, params, st.nodes, (lo, hi))
    return abs(res.E - E_test) / M


def _termination_check(cfg, spec, params, st: BoundState, E_test: float) -> float:
    case = cfg["case"]
    if case == "coulomb":
        lam0, s0 = build_aim_inputs("coulomb", spec, params, E_test)
    elif case == "equal-kratzer":
        lam0, s0 = build_aim_inputs("equal_kratzer", spec, params, E_test)
    else:
        lam0, s0 = build_aim_inputs("unequal_kratzer", spec, params, E_test, c=st.c)
    sess = aim_iterate(lam0, s0, max(st.n, 1))
    return sess.relative_defect(st.n)


def _degeneracy_check(cfg, n: int) -> float:
    d, l = cfg["d"], cfg["l"]
    E1 = solve_state(cfg, n, _spec(cfg, d, l + 1)).E
    E2 = solve_state(cfg, n, _spec(cfg, d + 2, l)).E
    return abs(E1 - E2) / cfg["M"]


def _run_checks(cfg: dict, n: int, checks: list[str]) -> dict:
    spec, params = _spec(cfg), _params(cfg)
    st = solve_state(cfg, n)
    E_test = st.E + cfg["inject_energy_error"]
    out = {}
    for name in checks:
        try:
            if name == "oracle":
                val = _oracle_check(spec, params, st, E_test)
            elif name == "residual":
                val = residual(spec, params, E_test, st.u)
            elif name == "norm":
                val = abs(norm_defect(st.u, st.kappa))
            elif name == "termination":
                val = _termination_check(cfg, spec, params, st, E_test)
            else:
                val = _degeneracy_check(cfg, n)
            out[name] = {"value": val, "threshold": THRESHOLDS[name], "pass": bool(val <= THRESHOLDS[name])}
        except (ShootingError, StiffStartError, RuntimeError, ArithmeticError, ValueError) as exc:
            out[name] = {"value": None, "threshold": THRESHOLDS[name], "pass": False, "error": str(exc)}
    return {"n": n, "E": st.E, "c": st.c, "checks": out}


def cmd_verify(cfg: dict) -> int:
    if cfg["case"] == "monic":
        raise UsageError("verify is not available for the monic case")
    checks = [c.strip() for c in str(cfg["checks"]).split(",") if c.strip()]
    if not checks:
        raise UsageError("empty check set")
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise UsageError(f"unknown checks: {', '.join(unknown)}; choose from {', '.join(CHECKS)}")
    results, problems = [], []
    for n in _ns(cfg):
        try:
            results.append(_run_checks(cfg, n, checks))
        except NO_BOUND_STATE as exc:
            problems.append(f"n={n}: {exc}")
            results.append({"n": n, "E": None, "c": None, "checks": {}, "error": str(exc)})
    failed = sorted({f"n={r['n']}:{k}" for r in results for k, v in r["checks"].items() if not v["pass"]})
    report = {
        "schema": SCHEMA,
        "case": cfg["case"],
        "inject_energy_error": cfg["inject_energy_error"],
        "results": results,
        "failed": failed,
        "passed": not failed and not problems,
    }
    _emit(json.dumps(_jsonify(report), indent=2) + "\n", cfg["output"])
    _warn(problems)
    if failed:
        print("kgaim: verification failed: " + ", ".join(failed), file=sys.stderr)
        return 3
    return 2 if problems else 0


# ------------------------------------------------------------------- sweep


def _sweep_one(args):
    cfg, value = args
    cfg = dict(cfg)
    cfg[cfg["param"]] = value
    rows, problems = _spectrum_rows(cfg)
    for r in rows:
        r[cfg["param"]] = value
    return rows, problems


def cmd_sweep(cfg: dict) -> int:
    param = cfg["param"]
    if param is None or cfg["values"] is None:
        raise UsageError("sweep needs --param and --values")
    if param not in FLOAT_KEYS or param in ("r_min", "r_max", "inject_energy_error"):
        raise UsageError(f"cannot sweep {param!r}")
    values = parse_values(cfg["values"])
    jobs = [(cfg, v) for v in values]
    if cfg["jobs"] > 1:
        with ProcessPoolExecutor(max_workers=cfg["jobs"]) as pool:
            parts = list(pool.map(_sweep_one, jobs))  # map keeps input order
    else:
        parts = [_sweep_one(j) for j in jobs]
    rows = [r for part, _ in parts for r in part]
    problems = [f"{param}={fmt(v)} {p}" for (_, probs), v in zip(parts, values) for p in probs]
    cols = MONIC_COLUMNS if cfg["case"] == "monic" else SPECTRUM_COLUMNS
    _emit(render(rows, cols, cfg["format"], extra={param: None}), cfg["output"])
    _warn(problems)
    return 2 if problems else 0


# ------------------------------------------------------------------ parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value file; flags override it")
    p.add_argument("--save-config", help="write the effective configuration to this file")
    p.add_argument("--case", choices=CASES, default=None)
    p.add_argument("-M", type=float, default=None, help="mass (default 1)")
    p.add_argument("-d", type=int, default=None, help="spatial dimension (default 3)")
    p.add_argument("-l", type=int, default=None, help="angular momentum (default 0)")
    for name in ("s", "v", "A", "B", "s1", "v1", "s2", "v2", "a", "b", "c"):
        p.add_argument(f"--{name}", type=float, default=None)
    p.add_argument("--n", default=None, help="N or N..M (default 0)")
    p.add_argument("--branch", choices=("plus", "minus"), default=None, help="Coulomb energy branch")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--output", "-o", default=None, help=f"output file, relative to ${OUTPUT_DIR_ENV}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kgaim", description="Klein-Gordon bound states for Coulomb and Kratzer potentials.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="energies for a range of n")
    _common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("wavefunction", help="sample u(r) on a log grid")
    _common(p)
    p.add_argument("--r-min", dest="r_min", type=float, default=None)
    p.add_argument("--r-max", dest="r_max", type=float, default=None)
    p.add_argument("--points", type=int, default=None)
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("verify", help="cross-check against the numerical oracle")
    _common(p)
    p.add_argument("--checks", default=None, help="comma list from " + ",".join(CHECKS))
    p.add_argument("--inject-energy-error", dest="inject_energy_error", type=float, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="spectrum over a grid of one parameter")
    _common(p)
    p.add_argument("--param", default=None, help="parameter name, e.g. B or s1")
    p.add_argument("--values", default=None, help="start:stop:count or a,b,c")
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = merge_config(args)
        if args.save_config:
            write_config(args.save_config, cfg)
        return args.func(cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"kgaim: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
