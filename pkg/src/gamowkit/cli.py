"""Command-line interface: ``gamowkit <command> ...`` or ``python -m gamowkit``.

Exit codes: 0 success, 1 domain error (the error class name is printed on
stderr), 2 usage error.  Floats are written with 17 significant digits.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from .config import ENV_PREFIX, Tolerances
from .errors import ConfigError, GamowkitError, NotAPole, ProfileMismatch
from .poles import (
    RESONANCE, Pole, find_bound_states, find_resonances, mirror_pole, verify_pole,
)
from .products import (
    DEFAULT_SCHEDULE, ROMO, STANDARD, SYMMETRIC, ZELDOVICH, Verdict,
    lambda_sweep, product_limit,
)
from .profile import PotentialProfile, load_profile, profile_from_dict
from .states import PlanewaveState, bound_state, eval_state, gamow_state, scattering_state


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    """17 significant digits, locale independent."""
    return format(float(x), ".17g") if math.isfinite(x) else ("nan" if math.isnan(x) else ("inf" if x > 0 else "-inf"))


# ---------------------------------------------------------------------------
# configuration


@dataclass
class RunConfig:
    command: str
    profile_path: str | None = None
    pole_cache: str | None = None
    count: int = 5
    output: str | None = None
    format: str = "json"
    state: str | None = None
    a: str | None = None
    b: str | None = None
    kind: str = STANDARD
    prescription: str = ZELDOVICH
    schedule: tuple[float, ...] = DEFAULT_SCHEDULE
    x_grid: tuple[float, float, int] = (-1.0, 2.0, 31)
    rows: tuple[int, ...] = ()
    cols: tuple[int, ...] = ()
    p_grid: tuple[float, float, int] | None = None
    tolerances: dict = field(default_factory=dict)

    def validate(self) -> "RunConfig":
        sched = self.schedule
        if not sched or any(not (x > 0 and math.isfinite(x)) for x in sched):
            raise UsageError("lambda schedule must be non-empty and strictly positive")
        if any(b >= a for a, b in zip(sched, sched[1:])):
            raise UsageError("lambda schedule must be strictly descending")
        if self.x_grid[2] < 1:
            raise UsageError("x grid must be non-empty")
        if self.p_grid is not None and self.p_grid[2] < 1:
            raise UsageError("p grid must be non-empty")
        if self.count < 1:
            raise UsageError("count must be >= 1")
        if self.format not in ("json", "csv"):
            raise UsageError("format must be json or csv")
        names = {f.name for f in fields(Tolerances)}
        for k, v in self.tolerances.items():
            if k not in names:
                raise UsageError(f"unknown tolerance {k!r}; known: {sorted(names)}")
            if not (isinstance(v, (int, float)) and v > 0):
                raise UsageError(f"tolerance {k} must be a positive number")
        return self


def _merge_config_file(cfg: RunConfig, path: str) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    known = {f.name for f in fields(RunConfig)} - {"command"}
    unknown = set(data) - known
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    for k, v in data.items():
        if isinstance(v, list):
            v = tuple(v)
        setattr(cfg, k, v)
    return cfg


# ---------------------------------------------------------------------------
# state selectors


class Resolver:
    """Turns ``gamow:n``, ``gamow-in:n``, ``bound:i``, ``scatter:p`` into states."""

    def __init__(self, profile: PotentialProfile, cache: list[Pole] | None = None):
        self.profile = profile
        self._res = {p.label: p for p in (cache or []) if p.kind == RESONANCE}
        self._bound = None

    def resonance(self, n: int) -> Pole:
        if n == 0:
            raise UsageError("pole labels start at 1 (or -1 for anti-resonances)")
        if abs(n) not in self._res:
            for p in find_resonances(self.profile, abs(n)):
                self._res.setdefault(p.label, p)
        pole = self._res[abs(n)]
        return pole if n > 0 else mirror_pole(pole, self.profile)

    def bound(self, i: int) -> Pole:
        if self._bound is None:
            depth = -float(np.min(self.profile.heights))
            self._bound = find_bound_states(self.profile, math.sqrt(depth)) if depth > 0 else []
        if not 1 <= i <= len(self._bound):
            raise NotAPole(f"bound:{i} requested but the profile has {len(self._bound)} bound states")
        return self._bound[i - 1]

    def state(self, sel: str) -> PlanewaveState:
        family, _, arg = sel.partition(":")
        try:
            if family == "gamow":
                return gamow_state(self.profile, self.resonance(int(arg)), "out")
            if family == "gamow-in":
                return gamow_state(self.profile, self.resonance(int(arg)), "in")
            if family == "bound":
                return bound_state(self.profile, self.bound(int(arg)))
            if family == "scatter":
                p = float(arg)
                if not p > 0:
                    raise UsageError("scatter:p needs p > 0")
                return scattering_state(self.profile, p)
        except ValueError as exc:
            raise UsageError(f"bad state selector {sel!r}: {exc}") from exc
        raise UsageError(f"unknown state family in {sel!r}; use gamow:n, gamow-in:n, bound:i, scatter:p")


def load_pole_cache(path: str, profile: PotentialProfile) -> list[Pole]:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if set(data) != {"profile", "poles"}:
        raise UsageError("pole cache must have exactly keys 'poles' and 'profile'")
    if profile_from_dict(data["profile"]) != profile:
        raise ProfileMismatch("pole cache was computed for a different profile")
    return [verify_pole(profile, Pole.from_dict(d)) for d in data["poles"]]


# ---------------------------------------------------------------------------
# commands


def _write(cfg: RunConfig, text: str, out) -> None:
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    else:
        out.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) if isinstance(v, float) else v for v in r])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _profile(cfg: RunConfig) -> PotentialProfile:
    if not cfg.profile_path:
        raise UsageError("--profile is required")
    return load_profile(cfg.profile_path)


def _resolver(cfg: RunConfig, profile) -> Resolver:
    cache = load_pole_cache(cfg.pole_cache, profile) if cfg.pole_cache else None
    return Resolver(profile, cache)


def cmd_poles(cfg: RunConfig, out) -> None:
    profile = _profile(cfg)
    poles = find_resonances(profile, cfg.count)
    if cfg.format == "csv":
        rows = [(p.label, p.momentum.real, p.momentum.imag, p.energy.real, p.energy.imag, p.residual)
                for p in poles]
        _write(cfg, _csv(["n", "re_p", "im_p", "re_z", "im_z", "residual"], rows), out)
    else:
        _write(cfg, _json({"profile": profile.to_dict(), "poles": [p.to_dict() for p in poles]}), out)


def cmd_state_eval(cfg: RunConfig, out) -> None:
    profile = _profile(cfg)
    if not cfg.state:
        raise UsageError("--state is required")
    st = _resolver(cfg, profile).state(cfg.state)
    lo, hi, n = cfg.x_grid
    x = np.linspace(lo, hi, int(n))
    u = eval_state(st, x)
    rows = [(float(xi), float(v.real), float(v.imag), float(abs(v))) for xi, v in zip(x, np.atleast_1d(u))]
    _write(cfg, _csv(["x", "re_u", "im_u", "abs_u"], rows), out)


def _pair(cfg: RunConfig):
    profile = _profile(cfg)
    if not (cfg.a and cfg.b):
        raise UsageError("--a and --b are required")
    r = _resolver(cfg, profile)
    return r.state(cfg.a), r.state(cfg.b)


def cmd_product(cfg: RunConfig, out) -> None:
    a, b = _pair(cfg)
    v = product_limit(a, b, cfg.kind, cfg.prescription)
    d = v.to_dict()
    d.update({"a": cfg.a, "b": cfg.b, "product_kind": cfg.kind})
    _write(cfg, _json(d), out)


def cmd_sweep(cfg: RunConfig, out) -> None:
    a, b = _pair(cfg)
    rec = lambda_sweep(a, b, cfg.kind, cfg.schedule)
    lines = [f"# verdict={rec.verdict.kind.value}"]
    if rec.fitted_decay_slope is not None:
        lines.append(f"# fitted_decay_slope={fmt(rec.fitted_decay_slope)}")
    if rec.fitted_growth_coefficient is not None:
        lines.append(f"# fitted_growth_coefficient={fmt(rec.fitted_growth_coefficient)}")
        lines.append(f"# expected_growth_coefficient={fmt(rec.verdict.rate_coefficient)}")
    rows = [(lam, v.log10_mag, v.phase) for lam, v in zip(rec.schedule, rec.values)]
    _write(cfg, "\n".join(lines) + "\n" + _csv(["lam", "log10_abs", "phase"], rows), out)


VERDICT_CODES = {
    Verdict.ZERO: "0", Verdict.FINITE: "F", Verdict.DIVERGENT: "D",
    Verdict.DISTRIBUTIONAL: "S", Verdict.MARGINAL: "M",
}


def cmd_cone_map(cfg: RunConfig, out) -> None:
    profile = _profile(cfg)
    r = _resolver(cfg, profile)
    rows = cfg.rows or tuple(n for n in range(-5, 6) if n != 0)
    row_states = [(f"gamow:{n}", r.state(f"gamow:{n}")) for n in rows]
    if cfg.p_grid is not None:
        lo, hi, n = cfg.p_grid
        col_sel = [f"scatter:{float(p)!r}" for p in np.linspace(lo, hi, int(n))]
    else:
        cols = cfg.cols or rows
        col_sel = [f"gamow:{m}" for m in cols]
    col_states = [r.state(s) for s in col_sel]
    matrix = []
    for name, a in row_states:
        # rows are the bra (conjugated in the standard kind)
        matrix.append([VERDICT_CODES[product_limit(a, b, cfg.kind, cfg.prescription).kind] for b in col_states])
    if cfg.format == "csv":
        body = _csv(["row"] + col_sel, [[name] + codes for (name, _), codes in zip(row_states, matrix)])
        _write(cfg, body, out)
    else:
        _write(cfg, _json({"rows": [n for n, _ in row_states], "cols": col_sel, "kind": cfg.kind,
                           "prescription": cfg.prescription, "codes": matrix,
                           "legend": {v: k.value for k, v in VERDICT_CODES.items()}}), out)


def cmd_selftest(cfg: RunConfig, out) -> int:
    from .acceptance import run_all
    results = run_all(echo=lambda line: out.write(line + "\n"))
    n_pass = sum(r.passed for r in results)
    out.write(f"{n_pass}/{len(results)} criteria passed\n")
    return 0 if n_pass == len(results) else 1


COMMANDS = {
    "poles": cmd_poles, "state-eval": cmd_state_eval, "product": cmd_product,
    "sweep": cmd_sweep, "cone-map": cmd_cone_map, "selftest": cmd_selftest,
}


# ---------------------------------------------------------------------------
# argument parsing


def _floats(s: str) -> tuple[float, ...]:
    return tuple(float(x) for x in s.split(",") if x.strip())


def _ints(s: str) -> tuple[int, ...]:
    return tuple(int(x) for x in s.split(",") if x.strip())


def _grid(s: str):
    parts = s.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be lo:hi:n")
    return float(parts[0]), float(parts[1]), int(parts[2])


def _tol(s: str):
    k, sep, v = s.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError("tolerance override must be name=value")
    return k.strip(), float(v)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gamowkit", description="Resonance poles, states and regularized products.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--profile", dest="profile_path", help="profile JSON file")
    common.add_argument("--poles", dest="pole_cache", help="pole cache JSON written by 'poles --format json'")
    common.add_argument("--config", help="JSON file with RunConfig fields")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--tol", action="append", type=_tol, default=[], metavar="NAME=VALUE",
                        help="tolerance override, e.g. zero_threshold=1e-8")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poles", parents=[common], help="resonance pole table")
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("state-eval", parents=[common], help="evaluate a state on an x grid")
    p.add_argument("--state", required=True, help="gamow:n | gamow-in:n | bound:i | scatter:p")
    p.add_argument("--x-grid", type=_grid, default=(-1.0, 2.0, 31), help="lo:hi:n")

    for name, helptext in (("product", "lam -> 0 verdict of a product"), ("sweep", "regularized values over lam")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--a", required=True)
        p.add_argument("--b", required=True)
        p.add_argument("--kind", choices=(STANDARD, SYMMETRIC), default=STANDARD)
        if name == "product":
            p.add_argument("--prescription", choices=(ZELDOVICH, ROMO), default=ZELDOVICH)
        else:
            p.add_argument("--schedule", type=_floats, default=DEFAULT_SCHEDULE,
                           help="comma-separated descending lam values")

    p = sub.add_parser("cone-map", parents=[common], help="verdict matrix over pole pairs or a p grid")
    p.add_argument("--rows", type=_ints, default=(), help="comma-separated pole labels (use --rows=-1,... for negatives)")
    p.add_argument("--cols", type=_ints, default=(), help="comma-separated pole labels")
    p.add_argument("--p-grid", type=_grid, default=None, help="lo:hi:n real momenta for scattering columns")
    p.add_argument("--kind", choices=(STANDARD, SYMMETRIC), default=STANDARD)
    p.add_argument("--prescription", choices=(ZELDOVICH, ROMO), default=ZELDOVICH)
    p.add_argument("--format", choices=("json", "csv"), default="csv")

    sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    return ap


def _config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command)
    if getattr(ns, "config", None):
        cfg = _merge_config_file(cfg, ns.config)
    for f in fields(RunConfig):
        if f.name in ("command", "tolerances"):
            continue
        v = getattr(ns, f.name, None)
        if v is not None and v != f.default:
            setattr(cfg, f.name, v)
    cfg.tolerances = {**cfg.tolerances, **dict(getattr(ns, "tol", []))}
    return cfg.validate()


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    saved = dict(os.environ)
    try:
        cfg = _config_from_args(ns)
        for k, v in cfg.tolerances.items():
            os.environ[ENV_PREFIX + k.upper()] = repr(float(v))
        code = COMMANDS[cfg.command](cfg, out)
        return 0 if code is None else code
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except ConfigError as exc:
        err.write(f"ConfigError: {exc}\n")
        return 2
    except GamowkitError as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return 1
    except (OSError, json.JSONDecodeError) as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    finally:
        os.environ.clear()
        os.environ.update(saved)


def main() -> None:
    sys.exit(run())
