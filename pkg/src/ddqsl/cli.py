"""
Command-line front end: figure-reproduction sweeps, population traces and the
oracle verification report.  All output is CSV (header row, LF endings, 17
significant digits).

    ddqsl qslt-sweep --preset fig2 --out fig2.csv
    ddqsl population-trace --gamma0 5 --n 10 --tau 10
    ddqsl verify

Exit codes: 0 success, 1 validation error, 2 verification breach, 3 I/O error.
"""
from __future__ import annotations

import argparse
import io
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .exceptions import DegenerateTargetError, ValidationError
from .kappa import PulseSchedule, SpectralParams, population
from .multiqubit import evolve_dense, evolve_w, make_w_state
from .nonmarkov import non_markovianity
from .oracle import verify_kappa
from .speedlimit import qslt
from .trajectory import DEFAULT_SAMPLES, decompose

EXIT_OK, EXIT_VALIDATION, EXIT_BREACH, EXIT_IO = 0, 1, 2, 3

TRACE_SAMPLES = 2048
FIGURE_NS = (0, 5, 10, 20)
WEAK, STRONG = 0.2, 5.0

# preset gamma0 values are multiples of lambda; every caption uses lambda = 1, lambda tau = 10
PRESETS = {
    "fig2": dict(commands={"qslt-sweep"}, gamma0=(WEAK, STRONG), n=tuple(range(26))),
    "fig3": dict(commands={"population-sweep"}, gamma0=(WEAK, STRONG), n=tuple(range(26))),
    "fig4": dict(commands={"nonmarkov-sweep"}, gamma0=(WEAK, STRONG), n=tuple(range(26))),
    "fig5a": dict(commands={"population-trace"}, gamma0=(WEAK,), n=FIGURE_NS),
    "fig5b": dict(commands={"population-trace"}, gamma0=(STRONG,), n=FIGURE_NS),
}
PRESET_LAMBDA, PRESET_LAMBDA_TAU = 1.0, 10.0

VERIFY_TOL = 1e-6
VERIFY_NEAR_DEGENERATE_TOL = 1e-5
VERIFY_DENSE_TOL = 1e-12


@dataclass(frozen=True)
class RunConfig:
    command: str
    gamma0: tuple
    lam: float
    tau: float
    ns: tuple
    grid: Optional[int] = None
    out: Optional[str] = None
    jobs: int = 1
    inject_fault: bool = False

    @property
    def lambda_tau(self) -> float:
        return self.lam * self.tau


def fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def write_csv(stream, header, rows):
    stream.write(",".join(header) + "\n")
    for row in rows:
        stream.write(",".join(fmt(v) for v in row) + "\n")


def _map(cfg: RunConfig, fn, items):
    # ordered map keeps output deterministic whatever the worker count
    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _sweep_points(cfg: RunConfig):
    return [(g, n) for g in cfg.gamma0 for n in cfg.ns]


def _decomp(cfg, p, s):
    return decompose(p, s, samples=cfg.grid or DEFAULT_SAMPLES)


def cmd_qslt_sweep(cfg: RunConfig):
    header = ["gamma0", "lambda", "tau", "n", "tau_qsl", "ratio", "p_tau", "gamma_theta0", "status"]

    def row(point):
        g, n = point
        p, s = SpectralParams(g, cfg.lam), PulseSchedule(cfg.tau, n)
        try:
            r = qslt(p, s, decomp=_decomp(cfg, p, s))
        except DegenerateTargetError:
            return [p.gamma0, p.lam, s.tau, n, "", "", population(s.tau, p, s), "", "degenerate-target"]
        return [p.gamma0, p.lam, s.tau, n, r.tau_qsl, r.ratio, r.p_tau, r.gamma_theta0, "ok"]

    return header, _map(cfg, row, _sweep_points(cfg))


def cmd_population_sweep(cfg: RunConfig):
    header = ["gamma0", "lambda", "tau", "n", "p_tau"]

    def row(point):
        g, n = point
        p, s = SpectralParams(g, cfg.lam), PulseSchedule(cfg.tau, n)
        return [p.gamma0, p.lam, s.tau, n, population(s.tau, p, s)]

    return header, _map(cfg, row, _sweep_points(cfg))


def cmd_nonmarkov_sweep(cfg: RunConfig):
    header = ["gamma0", "lambda", "tau", "n", "gamma", "gamma_theta0", "gamma_theta_pi4", "optimal"]

    def row(point):
        g, n = point
        p, s = SpectralParams(g, cfg.lam), PulseSchedule(cfg.tau, n)
        r = non_markovianity(p, s, decomp=_decomp(cfg, p, s))
        return [p.gamma0, p.lam, s.tau, n, r.gamma, r.gamma_theta0, r.gamma_theta_pi4, r.optimal]

    return header, _map(cfg, row, _sweep_points(cfg))


def trace_times(s: PulseSchedule, per_interval: int = TRACE_SAMPLES) -> np.ndarray:
    """``per_interval`` points in each ``[kT, (k+1)T)`` plus ``tau``."""
    frac = np.arange(per_interval) / per_interval
    t = (s.interval_starts[:, None] + s.interval * frac[None, :]).ravel()
    return np.append(t, s.tau)


def cmd_population_trace(cfg: RunConfig):
    """One ``(header, rows)`` table per (gamma0, n) pair."""
    traces = []
    for g, n in _sweep_points(cfg):
        p, s = SpectralParams(g, cfg.lam), PulseSchedule(cfg.tau, n)
        t = trace_times(s, cfg.grid or TRACE_SAMPLES)
        traces.append(((g, n), ["t", "P"], list(zip(t, population(t, p, s)))))
    return traces


def verification_matrix(cfg: RunConfig):
    """``(label, params, schedule, tolerance)`` for every oracle comparison."""
    cases = []
    for g in cfg.gamma0:
        for n in cfg.ns:
            cases.append(("kappa-oracle", SpectralParams(g, cfg.lam),
                          PulseSchedule(cfg.tau, n), VERIFY_TOL))
    near = SpectralParams(cfg.lam / (2.0 * (1.0 + 1e-6)), cfg.lam)
    for n in cfg.ns:
        cases.append(("kappa-oracle-near-degenerate", near, PulseSchedule(cfg.tau, n),
                      VERIFY_NEAR_DEGENERATE_TOL))
    return cases


def dense_deviation(n_qubits: int, p: SpectralParams, s: PulseSchedule, seed: int = 0) -> float:
    rng = np.random.default_rng(seed)
    w = make_w_state(rng.normal(size=n_qubits) + 1j * rng.normal(size=n_qubits))
    closed = evolve_w(w, s.tau, p, s).density_matrix()
    return float(np.abs(evolve_dense(w, s.tau, p, s) - closed).max())


def cmd_verify(cfg: RunConfig):
    header = ["check", "gamma0", "n", "deviation", "tolerance", "status"]
    rows = []

    def kappa_row(case):
        label, p, s, tol = case
        dev = verify_kappa(p, s, flip_coupling=not cfg.inject_fault)
        return [label, p.gamma0, s.n_pulses, dev, format(tol, "g"), "pass" if dev < tol else "BREACH"]

    rows.extend(_map(cfg, kappa_row, verification_matrix(cfg)))
    for g in cfg.gamma0:
        p = SpectralParams(g, cfg.lam)
        s = PulseSchedule(cfg.tau, max(cfg.ns))
        dev = dense_deviation(3, p, s)
        rows.append(["multiqubit-dense-N3", p.gamma0, s.n_pulses, dev, format(VERIFY_DENSE_TOL, "g"),
                     "pass" if dev < VERIFY_DENSE_TOL else "BREACH"])
    return header, rows


COMMANDS = {
    "population-trace": cmd_population_trace,
    "qslt-sweep": cmd_qslt_sweep,
    "population-sweep": cmd_population_sweep,
    "nonmarkov-sweep": cmd_nonmarkov_sweep,
    "verify": cmd_verify,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--gamma0", type=float, help="Markovian decay rate")
    common.add_argument("--lambda", dest="lam", type=float, help="spectral width (default 1)")
    common.add_argument("--tau", type=float, help="driving time (default 10/lambda)")
    common.add_argument("--n", type=int, help="number of pulses (single value)")
    common.add_argument("--n-max", dest="n_max", type=int, help="sweep n over 0..N_MAX")
    common.add_argument("--preset", choices=sorted(PRESETS), help="figure parameter preset")
    common.add_argument("--out", help="output CSV path (default: stdout)")
    common.add_argument("--grid", type=int, help="samples per pulse interval")
    common.add_argument("--config", help="key = value file; command-line flags take precedence")
    common.add_argument("--jobs", type=int, help="worker threads for sweep rows")
    common.add_argument("--inject-fault", dest="inject_fault", action="store_true",
                        default=None, help=argparse.SUPPRESS)

    parser = _Parser(prog="ddqsl", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


_CONFIG_KEYS = {"gamma0": float, "lambda": float, "lam": float, "tau": float, "n": int,
                "n_max": int, "n-max": int, "preset": str, "out": str, "grid": int, "jobs": int}


def read_config(path) -> dict:
    """Parse a flat ``key = value`` file (``#`` starts a comment)."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (x.strip() for x in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ValidationError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[{"lambda": "lam", "n-max": "n_max"}.get(key, key)] = _CONFIG_KEYS[key](value)
        except ValueError:
            raise ValidationError(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
    return values


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge preset < config file < flags into a validated :class:`RunConfig`."""
    settings = {}
    if args.config:
        settings.update(read_config(args.config))
    flags = {k: v for k, v in vars(args).items() if v is not None and k not in ("command", "config")}
    settings.update(flags)

    command = args.command
    preset = settings.get("preset")
    lam = settings.get("lam", PRESET_LAMBDA)
    if preset is not None:
        spec = PRESETS[preset]
        if command not in spec["commands"] and command != "verify":
            raise ValidationError(f"preset {preset} does not apply to {command}")
        gamma0, ns = tuple(r * lam for r in spec["gamma0"]), spec["n"]
    elif command == "verify":
        gamma0, ns = (WEAK * lam, STRONG * lam), FIGURE_NS
    else:
        gamma0, ns = None, (0,)
    if "gamma0" in settings:
        gamma0 = (settings["gamma0"],)
    if gamma0 is None:
        raise ValidationError("--gamma0 is required without a preset")
    if "n_max" in settings:
        if settings["n_max"] < 0:
            raise ValidationError("--n-max must be >= 0")
        ns = tuple(range(settings["n_max"] + 1))
    if "n" in settings:
        ns = (settings["n"],)
    tau = settings.get("tau", PRESET_LAMBDA_TAU / lam if lam > 0 else float("nan"))
    grid = settings.get("grid")
    jobs = settings.get("jobs", 1)

    if not (math.isfinite(lam) and lam > 0):
        raise ValidationError("--lambda must be finite and > 0")
    if not (math.isfinite(tau) and tau > 0):
        raise ValidationError("--tau must be finite and > 0")
    if any(not (math.isfinite(g) and g > 0) for g in gamma0):
        raise ValidationError("--gamma0 must be finite and > 0")
    if not ns or any(n < 0 for n in ns):
        raise ValidationError("pulse counts must be a non-empty set of non-negative integers")
    if grid is not None and grid < 2:
        raise ValidationError("--grid must be >= 2")
    if jobs < 1:
        raise ValidationError("--jobs must be >= 1")
    return RunConfig(command=command, gamma0=tuple(gamma0), lam=lam, tau=tau, ns=tuple(ns),
                     grid=grid, out=settings.get("out"), jobs=jobs,
                     inject_fault=bool(settings.get("inject_fault", False)))


def _trace_path(out: str, g: float, n: int, multi_gamma: bool) -> Path:
    path = Path(out)
    tag = f"_g{fmt(g)}" if multi_gamma else ""
    return path.with_name(f"{path.stem}{tag}_n{n}{path.suffix}")


def _emit(cfg: RunConfig, result, stdout):
    if cfg.command == "population-trace":
        multi = len(result) > 1
        multi_gamma = len(cfg.gamma0) > 1
        for (g, n), header, rows in result:
            if cfg.out is None:
                if multi:
                    stdout.write(f"# gamma0={fmt(g)} n={n}\n")
                write_csv(stdout, header, rows)
            else:
                path = _trace_path(cfg.out, g, n, multi_gamma) if multi else Path(cfg.out)
                with open(path, "w", newline="\n") as fh:
                    write_csv(fh, header, rows)
        return
    header, rows = result
    if cfg.out is None:
        write_csv(stdout, header, rows)
    else:
        buf = io.StringIO()
        write_csv(buf, header, rows)
        with open(cfg.out, "w", newline="\n") as fh:
            fh.write(buf.getvalue())


def main(argv=None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        result = COMMANDS[cfg.command](cfg)
    except ValidationError as exc:
        print(f"ddqsl: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"ddqsl: cannot read {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EXIT_IO
    try:
        _emit(cfg, result, stdout)
    except OSError as exc:
        print(f"ddqsl: cannot write {exc.filename or cfg.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_IO
    if cfg.command == "verify":
        breaches = [r for r in result[1] if r[-1] != "pass"]
        for r in breaches:
            print(f"ddqsl: tolerance breach in {r[0]} (gamma0={fmt(r[1])}, n={r[2]}): "
                  f"deviation {r[3]:.3e} >= {r[4]}", file=sys.stderr)
        if breaches:
            return EXIT_BREACH
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
