"""
Command-line interface.

Subcommands
-----------
simulate   evolve a walk and write ``x,x_over_t,p``
density    sample a limit density on a grid and write ``x,density``
compare    simulate, compare with the limit density and write a JSON report
sweep      run ``compare`` over lists of cases, xi, theta and t (JSON lines)

Exit codes: 0 success, 2 invalid configuration, 3 comparison above the
threshold, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import ast
import itertools
import json
import math
import operator
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from . import analysis, serialize
from .density import limit_density
from .errors import GridTooSmall, NoConvergence, ResourceLimit, WalkError
from .initial import (
    Case1,
    Case2,
    Case3,
    Case4,
    Case5,
    InitialSpec,
    Localized,
    SpinVector,
    TruncationPolicy,
    build,
)
from .walk import distribution, evolve, make_coin

EXIT_OK, EXIT_CONFIG, EXIT_THRESHOLD, EXIT_NUMERIC = 0, 2, 3, 4
CASES = ("localized", "1", "2", "3", "4", "5")


class ConfigError(Exception):
    """Invalid configuration; the message names the offending field."""


# --- numeric expressions ----------------------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv, ast.Pow: operator.pow}
_UNARY = {ast.UAdd: operator.pos, ast.USub: operator.neg}
_NAMES = {"pi": math.pi, "e": math.e, "tau": math.tau}
_FUNCS = {"sqrt": math.sqrt, "sin": math.sin, "cos": math.cos, "tan": math.tan, "exp": math.exp, "log": math.log}


def parse_number(text, name: str = "value") -> float:
    """
    Evaluate a numeric literal such as ``0.25``, ``pi/4``, ``3*pi/2`` or
    ``1/sqrt(2)`` without calling eval.
    """
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return float(text)

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
            return float(node.value)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
            return _UNARY[type(node.op)](ev(node.operand))
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]
        if (
            isinstance(node, ast.Call)
            and isinstance(node.func, ast.Name)
            and node.func.id in _FUNCS
            and len(node.args) == 1
            and not node.keywords
        ):
            return _FUNCS[node.func.id](ev(node.args[0]))
        raise ValueError("unsupported expression")

    try:
        value = ev(ast.parse(str(text).strip(), mode="eval"))
    except (SyntaxError, ValueError, ZeroDivisionError, OverflowError, TypeError) as exc:
        raise ConfigError(f"{name}: cannot parse {text!r} as a number ({exc})") from None
    if not math.isfinite(value):
        raise ConfigError(f"{name}: {text!r} is not finite")
    return value


def parse_int(text, name: str) -> int:
    value = parse_number(text, name)
    if value != int(value):
        raise ConfigError(f"{name}: expected an integer, got {text!r}")
    return int(value)


def parse_list(text: str, name: str, item=parse_number) -> list:
    parts = [p for p in str(text).split(",") if p.strip()]
    if not parts:
        raise ConfigError(f"{name}: empty range")
    return [item(p, name) for p in parts]


# --- configuration ----------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    command: str
    case: str = "localized"
    a: float = 0.5
    n: int = 0
    xi: int = 0
    theta: float = math.pi / 4
    alpha_re: float = 1 / math.sqrt(2)
    alpha_im: float = 0.0
    beta_re: float = 0.0
    beta_im: float = 1 / math.sqrt(2)
    steps: int = 0
    grid: int = 401
    tail_eps: float | None = None
    radius: int | None = None
    threshold: float = 0.05
    out: str | None = None
    format: str = "csv"
    plot: str | None = None
    timing: bool = True
    jobs: int = 1

    def kind(self):
        if self.case == "localized":
            return Localized()
        if self.case == "1":
            return Case1(self.a)
        if self.case == "5":
            return Case5(self.n)
        return {"2": Case2, "3": Case3, "4": Case4}[self.case]()

    def phi(self) -> SpinVector:
        return SpinVector(complex(self.alpha_re, self.alpha_im), complex(self.beta_re, self.beta_im))

    def truncation(self) -> TruncationPolicy:
        if self.radius is not None:
            return TruncationPolicy.fixed_radius(self.radius)
        return TruncationPolicy.tail_mass(1e-4 if self.tail_eps is None else self.tail_eps)

    def spec(self) -> InitialSpec:
        return InitialSpec(self.kind(), self.phi(), self.truncation())

    def coin(self):
        return make_coin(self.xi, self.theta)


_FIELD_PARSERS = {
    "a": parse_number,
    "theta": parse_number,
    "alpha_re": parse_number,
    "alpha_im": parse_number,
    "beta_re": parse_number,
    "beta_im": parse_number,
    "tail_eps": parse_number,
    "threshold": parse_number,
    "n": parse_int,
    "xi": parse_int,
    "steps": parse_int,
    "grid": parse_int,
    "radius": parse_int,
    "jobs": parse_int,
}


def _coerce(name: str, value):
    if value is None:
        return None
    if name in _FIELD_PARSERS:
        return _FIELD_PARSERS[name](value, name)
    if name == "case":
        value = str(value)
        if value not in CASES:
            raise ConfigError(f"case: expected one of {', '.join(CASES)}, got {value!r}")
        return value
    if name == "format":
        if value not in ("csv", "json"):
            raise ConfigError(f"format: expected csv or json, got {value!r}")
        return value
    if name == "timing":
        return bool(value)
    return str(value)


def _validate(cfg: RunConfig) -> RunConfig:
    if cfg.xi not in (0, 1):
        raise ConfigError(f"xi: expected 0 or 1, got {cfg.xi}")
    if cfg.steps < 0:
        raise ConfigError(f"steps: must be nonnegative, got {cfg.steps}")
    if cfg.grid < 1:
        raise ConfigError(f"grid: must be positive, got {cfg.grid}")
    if cfg.jobs < 1:
        raise ConfigError(f"jobs: must be positive, got {cfg.jobs}")
    if cfg.tail_eps is not None and cfg.radius is not None:
        raise ConfigError("tail_eps/radius: give at most one truncation")
    if cfg.command in ("compare", "sweep") and cfg.format != "json":
        raise ConfigError(f"format: {cfg.command} writes json only")
    # range checks of the underlying types, reported with the field name
    checks = [
        ("theta", lambda: cfg.coin()),
        ("alpha/beta", lambda: cfg.phi()),
        ("a" if cfg.case == "1" else "n" if cfg.case == "5" else "case", lambda: cfg.kind()),
        ("tail_eps" if cfg.radius is None else "radius", lambda: cfg.truncation()),
    ]
    for field_name, check in checks:
        try:
            check()
        except WalkError as exc:
            raise ConfigError(f"{field_name}: {type(exc).__name__}: {exc}") from None
    return cfg


def build_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then the JSON config file, then explicit command-line flags."""
    values: dict = {}
    if getattr(args, "config", None):
        try:
            loaded = json.loads(Path(args.config).read_text())
        except (OSError, ValueError) as exc:
            raise ConfigError(f"config: cannot read {args.config!r} ({exc})") from None
        if not isinstance(loaded, dict):
            raise ConfigError("config: expected a JSON object")
        known = {f.name for f in fields(RunConfig)} - {"command"}
        for key, value in loaded.items():
            name = key.replace("-", "_")
            if name not in known:
                raise ConfigError(f"config: unknown field {key!r}")
            values[name] = value
    for f in fields(RunConfig):
        if f.name == "command":
            continue
        flag = getattr(args, f.name, None)
        if flag is not None:
            values[f.name] = flag
    if getattr(args, "no_timing", False):
        values["timing"] = False
    if args.command in ("compare", "sweep") and "format" not in values:
        values["format"] = "json"
    if args.command in ("compare", "sweep") and "steps" not in values:
        values["steps"] = 5000
    coerced = {k: _coerce(k, v) for k, v in values.items()}
    return _validate(RunConfig(command=args.command, **coerced))


# --- commands ---------------------------------------------------------------


def density_grid(cfg: RunConfig) -> tuple[np.ndarray, np.ndarray]:
    """Uniform grid of cfg.grid points on (-|c| + delta, |c| - delta), delta = 2|c| / (10 grid)."""
    coin = cfg.coin()
    c = abs(coin.c)
    delta = 2.0 * c / (10.0 * cfg.grid)
    x = np.linspace(-c + delta, c - delta, cfg.grid) if cfg.grid > 1 else np.zeros(1)
    d = limit_density(cfg.kind(), coin, cfg.phi())
    with np.errstate(divide="ignore", invalid="ignore"):
        return x, d(x)


def _simulate(cfg: RunConfig):
    state = evolve(build(cfg.spec()), cfg.coin(), cfg.steps)
    dist = distribution(state).nonzero()
    order = np.argsort(dist.positions, kind="stable")
    x, p = dist.positions[order], dist.probs[order]
    xt = x / cfg.steps if cfg.steps > 0 else np.full(x.shape, np.nan)
    return x, xt, p


def cmd_simulate(cfg: RunConfig) -> int:
    x, xt, p = _simulate(cfg)
    if cfg.format == "csv":
        text = serialize.csv_text(["x", "x_over_t", "p"], [x, xt, p])
    else:
        rows = [[int(a), float(b), float(c)] for a, b, c in zip(x, xt, p)]
        text = serialize.to_json({"t": cfg.steps, "columns": ["x", "x_over_t", "p"], "rows": rows}, indent=None) + "\n"
    serialize.write_text(text, cfg.out)
    if cfg.plot:
        from .plotting import render_distribution

        render_distribution(xt, p, cfg.steps, cfg.plot)
    return EXIT_OK


def cmd_density(cfg: RunConfig) -> int:
    x, d = density_grid(cfg)
    if cfg.format == "csv":
        text = serialize.csv_text(["x", "density"], [x, d])
    else:
        rows = [[float(a), float(b)] for a, b in zip(x, d)]
        text = serialize.to_json({"columns": ["x", "density"], "rows": rows}, indent=None) + "\n"
    serialize.write_text(text, cfg.out)
    if cfg.plot:
        from .plotting import render_density

        render_density(x, d, cfg.plot)
    return EXIT_OK


def _report(cfg: RunConfig) -> analysis.ConvergenceReport:
    return analysis.run_convergence(cfg.spec(), cfg.coin(), cfg.steps)


def cmd_compare(cfg: RunConfig) -> int:
    if cfg.steps < 1:
        raise ConfigError("steps: compare needs steps >= 1")
    report = _report(cfg)
    serialize.write_text(serialize.to_json(report.to_dict(cfg.timing)) + "\n", cfg.out)
    if cfg.plot:
        from .plotting import render_comparison

        x, xt, p = _simulate(cfg)
        gx, gd = density_grid(cfg)
        render_comparison(xt, p, cfg.steps, gx, gd, cfg.plot, title=f"case {report.case}, xi = {cfg.xi}")
    return EXIT_OK if report.kolmogorov < cfg.threshold else EXIT_THRESHOLD


def cmd_sweep(cfg: RunConfig, cases: Sequence[str], xis: Sequence[int], thetas: Sequence[float], ts: Sequence[int]) -> int:
    if not (cases and xis and thetas and ts):
        raise ConfigError("sweep: empty range")
    tuples = sorted(set(itertools.product(cases, xis, thetas, ts)), key=lambda k: (CASES.index(k[0]), k[1], k[2], k[3]))
    configs = []
    for case, xi, theta, t in tuples:
        if t < 1:
            raise ConfigError(f"steps: sweep needs t >= 1, got {t}")
        configs.append(replace(cfg, case=case, xi=xi, theta=theta, steps=t))

    def run(c: RunConfig) -> dict:
        head = {"case": c.case, "xi": c.xi, "theta": c.theta, "t": c.steps}
        try:
            _validate(c)
            return _report(c).to_dict(c.timing)
        except (ConfigError, WalkError, ArithmeticError, MemoryError) as exc:
            return {**head, "error": f"{type(exc).__name__}: {exc}"}

    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(run, configs))
    else:
        results = [run(c) for c in configs]
    lines = [serialize.to_json(r, indent=None) for r in results]
    serialize.write_text("\n".join(lines) + "\n", cfg.out)
    failed = any("error" in r for r in results)
    return EXIT_NUMERIC if failed else EXIT_OK


# --- argument parsing ------------------------------------------------------


def _common(p: argparse.ArgumentParser, sweep: bool = False) -> None:
    g = p.add_argument_group("walk")
    if not sweep:
        g.add_argument("--case", help="localized, 1, 2, 3, 4 or 5 (default localized)")
        g.add_argument("--xi", help="coin family, 0 or 1 (default 0)")
        g.add_argument("--theta", help="coin angle in radians, e.g. pi/4 (default pi/4)")
        g.add_argument("--steps", help="number of time steps")
    g.add_argument("--a", help="Case 1 shift, non-integer (default 0.5)")
    g.add_argument("--n", help="Case 5 index, nonnegative integer (default 0)")
    g.add_argument("--alpha-re", dest="alpha_re", help="Re(alpha) (default 1/sqrt(2))")
    g.add_argument("--alpha-im", dest="alpha_im", help="Im(alpha) (default 0)")
    g.add_argument("--beta-re", dest="beta_re", help="Re(beta) (default 0)")
    g.add_argument("--beta-im", dest="beta_im", help="Im(beta) (default 1/sqrt(2))")
    g.add_argument("--tail-eps", dest="tail_eps", help="discarded initial mass (default 1e-4)")
    g.add_argument("--radius", help="fixed truncation radius instead of --tail-eps")
    o = p.add_argument_group("output")
    o.add_argument("--out", help="output file (default stdout)")
    o.add_argument("--format", help="csv or json")
    o.add_argument("--config", help="JSON file with any of the above fields")
    o.add_argument("--no-timing", dest="no_timing", action="store_true", help="write runtime_ms as 0 for reproducible reports")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="delocwalk", description="Quantum walks with delocalized initial states.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="write the distribution of X_t")
    _common(p)
    p.add_argument("--plot", help="also render the distribution to this image file")

    p = sub.add_parser("density", help="write the limit density on a grid")
    _common(p)
    p.add_argument("--grid", help="number of grid points (default 401)")
    p.add_argument("--plot", help="also render the density to this image file")

    p = sub.add_parser("compare", help="compare a simulation with its limit density")
    _common(p)
    p.add_argument("--grid", help="density points for --plot (default 401)")
    p.add_argument("--threshold", help="exit 3 unless the Kolmogorov distance is below this (default 0.05)")
    p.add_argument("--plot", help="also render the comparison to this image file")

    p = sub.add_parser("sweep", help="run compare over parameter lists (JSON lines)")
    _common(p, sweep=True)
    p.add_argument("--cases", default="1,2,3,4", help="comma list of cases (default 1,2,3,4)")
    p.add_argument("--xis", default="0,1", help="comma list of xi (default 0,1)")
    p.add_argument("--thetas", default="pi/4", help="comma list of angles (default pi/4)")
    p.add_argument("--steps", dest="steps_list", default="5000", help="comma list of t (default 5000)")
    p.add_argument("--jobs", help="worker threads (default 1)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
        if cfg.command == "simulate":
            return cmd_simulate(cfg)
        if cfg.command == "density":
            return cmd_density(cfg)
        if cfg.command == "compare":
            return cmd_compare(cfg)
        cases = [str(c).strip() for c in args.cases.split(",") if c.strip()]
        for c in cases:
            _coerce("case", c)
        return cmd_sweep(
            cfg,
            cases,
            parse_list(args.xis, "xis", parse_int),
            parse_list(args.thetas, "thetas"),
            parse_list(args.steps_list, "steps", parse_int),
        )
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NoConvergence, GridTooSmall, ResourceLimit, ArithmeticError, MemoryError) as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except WalkError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
