"""Command-line experiment harness.

Every experiment writes a table (CSV or newline-delimited JSON) preceded by
a header with the format version, the fully resolved config and the seed.
EE values are in Mbit/J.

Exit codes: 0 success, 2 infeasible target or design, 3 configuration
error, 4 I/O error. Errors are also written to stderr as one JSON record.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import hashlib
import io
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .channel import example_geometry, validate_effective_sinr_terms
from .config import ENV_VAR, ConfigError, RunConfig, load_config
from .montecarlo import mc_average_se, mc_moments
from .optimize import (optimize_asymptotic, optimize_at_density, optimize_fixed_configuration,
                       optimize_fixed_ue_density)
from .params import (ASYMPTOTIC, DesignPoint, InfeasibleError, InfeasibleTarget,
                     SinrTarget, db_to_linear, validate_design)
from .power import COMPONENTS, apc, apc_shares, ee, ee_asymptotic, ee_from_se
from .se import feasibility_limit, se_lower_bound
from .theorems import optimal_beta

FORMAT_VERSION = 1
EXIT_OK, EXIT_INFEASIBLE, EXIT_CONFIG, EXIT_IO = 0, 2, 3, 4
MBIT = 1e6

COLUMNS = {
    "evaluate": ["lambda", "gamma", "M", "K", "beta", "rho", "sinr", "se", "ee_mbit_per_joule"],
    "optimize": ["lambda", "mu", "gamma", "M", "K", "beta", "rho", "ee_mbit_per_joule",
                 "M_relaxed", "K_relaxed", "ee_relaxed_mbit_per_joule", "iterations"],
    "sweep-density": ["lambda", "gamma", "ee_bound", "ee_mc_mean", "ee_mc_sem",
                      "M", "K", "beta", "rho"],
    "surface-mk": ["M", "K", "beta_star", "ee"],
    "breakdown": ["component", "joules_per_symbol_km2", "share"],
    "sweep-impairments": ["epsilon", "gamma", "ee"],
    "sweep-ue-density": ["mu", "mode", "ee", "lambda_opt", "M", "K"],
    "mc-validate": ["name", "closed_form", "mc_estimate", "sem", "pass"],
    "validate-appendix": ["name", "closed_form", "mc_estimate", "sem", "pass"],
}

# config fields exposed as flags: name -> (section, type)
_FIELDS = {
    "alpha": ("propagation", float), "omega": ("propagation", float),
    "noise_var": ("propagation", float), "coherence_symbols": ("propagation", int),
    "symbol_time": ("propagation", float),
    "pa_efficiency": ("hardware", float), "impairment_level": ("hardware", float),
    "coding_cost": ("hardware", float), "static_power": ("hardware", float),
    "per_ue_power": ("hardware", float), "per_antenna_power": ("hardware", float),
    "per_antenna_ue_power": ("hardware", float),
    "tol": ("solver", float), "max_iter": ("solver", int), "radius": ("solver", int),
    "power_tol": ("solver", float), "max_antennas": ("solver", int),
    "max_users": ("solver", int),
    "trials": ("montecarlo", int), "max_interferers": ("montecarlo", int),
    "disk_radius_factor": ("montecarlo", float), "seed": ("montecarlo", int),
    "ue_rejection_cap": ("montecarlo", int), "sampler": ("montecarlo", str),
    "workers": ("montecarlo", int), "max_resamples": ("montecarlo", int),
}
_ALIASES = {"S": "coherence_symbols", "epsilon": "impairment_level", "eta": "pa_efficiency",
            "A": "coding_cost", "C0": "static_power", "C1": "per_ue_power",
            "D0": "per_antenna_power", "D1": "per_antenna_ue_power"}
_WATTS = ("static_power", "per_ue_power", "per_antenna_power", "per_antenna_ue_power")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers: {text!r}") from exc


def _num(v):
    """Plain value for output; non-finite floats become strings."""
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return None
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
    return v


def _lam_out(lam):
    return "inf" if lam is ASYMPTOTIC else _num(lam)


# --- output -------------------------------------------------------------------

class Table:
    """Rows with a fixed column set, rendered with a reproducibility header."""

    def __init__(self, experiment, cfg: RunConfig, seed):
        self.experiment = experiment
        self.columns = COLUMNS[experiment]
        self.cfg = cfg
        self.seed = seed
        self.rows = []
        self.notes = []

    def header(self):
        return {"format_version": FORMAT_VERSION, "experiment": self.experiment,
                "seed": self.seed, "config": self.cfg.to_dict(), "package_version": __version__}

    def add(self, **row):
        missing = set(self.columns) - set(row)
        if missing:
            raise KeyError(f"row lacks columns {sorted(missing)}")
        self.rows.append({c: _num(row[c]) for c in self.columns})

    def render(self, fmt):
        buf = io.StringIO()
        head = self.header()
        if fmt == "ndjson":
            buf.write(json.dumps({"header": head}, sort_keys=True) + "\n")
            for r in self.rows:
                buf.write(json.dumps(r) + "\n")
            for note in self.notes:
                buf.write(json.dumps({"summary": note}, sort_keys=True) + "\n")
            return buf.getvalue()
        buf.write(f"# format-version: {FORMAT_VERSION}\n")
        buf.write(f"# experiment: {self.experiment}\n")
        buf.write(f"# seed: {self.seed}\n")
        buf.write(f"# config: {json.dumps(head['config'], sort_keys=True)}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow(["" if r[c] is None else r[c] for c in self.columns])
        for note in self.notes:
            buf.write("# summary: " + " ".join(f"{k}={_num(v)}" for k, v in note.items()) + "\n")
        return buf.getvalue()


class Checkpoint:
    """Completed sweep points, appended as JSON lines next to the output."""

    def __init__(self, path, key, resume):
        self.path = path
        self.key = key
        self.done = {}
        if path is None:
            return
        if resume and os.path.exists(path):
            with open(path, encoding="utf-8") as fh:
                lines = fh.read().splitlines()
            if lines and json.loads(lines[0]).get("key") == key:
                for line in lines[1:]:
                    if line.strip():
                        rec = json.loads(line)
                        self.done[rec["index"]] = rec["rows"]
        if not self.done:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(json.dumps({"key": key}) + "\n")

    def get(self, index):
        return self.done.get(index)

    def put(self, index, rows):
        self.done[index] = rows
        if self.path is not None:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps({"index": index, "rows": rows}) + "\n")

    def finish(self):
        if self.path is not None and os.path.exists(self.path):
            os.remove(self.path)


def _sweep(table, points, compute, ckpt):
    """Evaluate ``compute(point)`` (a list of row dicts) for each grid point in order."""
    for i, p in enumerate(points):
        rows = ckpt.get(i)
        if rows is None:
            rows = [{c: _num(v) for c, v in r.items()} for r in compute(p)]
            ckpt.put(i, rows)
        for r in rows:
            table.add(**r)


# --- experiments ----------------------------------------------------------------

def _gamma(args):
    return 3.0 if args.gamma is None else args.gamma


def _opt_design(lam, gamma, cfg):
    hw, prop, solver = cfg.hardware, cfg.propagation, cfg.solver
    if lam is None:
        relaxed, best = optimize_asymptotic(gamma, hw, prop, solver)
        return best, relaxed
    return optimize_at_density(lam, gamma, hw, prop, solver), None


def run_evaluate(args, cfg, table):
    hw, prop = cfg.hardware, cfg.propagation
    lam = math.inf if args.lam is None else args.lam
    gamma = args.gamma
    if gamma is not None:
        SinrTarget(gamma).check(prop, hw.epsilon)
    if gamma is None and args.beta is None:
        raise ConfigError("evaluate needs --gamma or --beta")
    if math.isinf(lam):
        point = DesignPoint(args.beta, math.inf, ASYMPTOTIC, args.M, args.K)
    elif args.rho is not None:
        point = DesignPoint(args.beta, args.rho, lam, args.M, args.K)
    elif gamma is not None and args.beta is None:
        point = optimize_fixed_configuration(args.M, args.K, lam, gamma, hw, prop,
                                             cfg.solver).design
    else:
        raise ConfigError("evaluate at a finite density needs --rho")
    value = ee(point, hw, prop, gamma)
    if point.beta is None:
        beta = optimal_beta(point.M, point.K, point.inv_snr(prop.noise_var), gamma, prop,
                            hw.epsilon)
        point = DesignPoint(beta, point.rho, point.lam, point.M, point.K)
    check = validate_design(point, prop)
    if not check:
        raise InfeasibleError("; ".join(check.violations))
    bound = se_lower_bound(point, prop, hw.epsilon)
    table.add(**{"lambda": _lam_out(point.lam), "gamma": gamma, "M": point.M, "K": point.K,
                 "beta": point.beta, "rho": point.rho, "sinr": bound.sinr, "se": bound.se,
                 "ee_mbit_per_joule": value / MBIT})


def run_optimize(args, cfg, table):
    gamma = _gamma(args)
    hw, prop, solver = cfg.hardware, cfg.propagation, cfg.solver
    relaxed = None
    if args.mu is not None:
        best = optimize_fixed_ue_density(args.mu, gamma, hw, prop, solver)
    else:
        best, relaxed = _opt_design(args.lam, gamma, cfg)
    d = best.design
    table.add(**{"lambda": _lam_out(d.lam), "mu": args.mu, "gamma": gamma, "M": d.M, "K": d.K,
                 "beta": d.beta, "rho": d.rho, "ee_mbit_per_joule": best.ee / MBIT,
                 "M_relaxed": relaxed.M if relaxed else None,
                 "K_relaxed": relaxed.K if relaxed else None,
                 "ee_relaxed_mbit_per_joule": relaxed.ee / MBIT if relaxed else None,
                 "iterations": relaxed.iterations if relaxed else None})


def _grid(values, lo, hi, points, log=True):
    if values:
        return [float(v) for v in values]
    if points < 1:
        raise ConfigError("grid needs at least one point")
    g = np.logspace(math.log10(lo), math.log10(hi), points) if log else np.linspace(lo, hi, points)
    # 12 significant digits hide linspace/logspace rounding noise in the output
    return [float(f"{v:.12g}") for v in g]


def run_sweep_density(args, cfg, table, ckpt):
    gamma = _gamma(args)
    hw, prop = cfg.hardware, cfg.propagation
    SinrTarget(gamma).check(prop, hw.epsilon)
    mc = cfg.montecarlo

    def compute(lam):
        best = optimize_at_density(lam, gamma, hw, prop, cfg.solver)
        d = best.design
        mean = sem = None
        if mc.trials > 0:
            est = mc_average_se(d, prop, hw.epsilon, mc)
            mean = ee_from_se(d, est.mean, hw, prop) / MBIT
            if mc.trials > 1:
                hi = ee_from_se(d, est.mean + est.sem, hw, prop)
                lo = ee_from_se(d, max(est.mean - est.sem, 0.0), hw, prop)
                sem = 0.5 * (hi - lo) / MBIT
        return [{"lambda": lam, "gamma": gamma, "ee_bound": best.ee / MBIT, "ee_mc_mean": mean,
                 "ee_mc_sem": sem, "M": d.M, "K": d.K, "beta": d.beta, "rho": d.rho}]

    _sweep(table, _grid(args.lambdas, args.lambda_min, args.lambda_max, args.points),
           compute, ckpt)


def run_surface(args, cfg, table, ckpt):
    gamma = _gamma(args)
    hw, prop = cfg.hardware, cfg.propagation
    SinrTarget(gamma).check(prop, hw.epsilon)
    star = None

    def compute(K):
        rows = []
        for M in range(args.M_min, args.M_max + 1):
            try:
                b = ee_asymptotic(M, K, gamma, hw, prop)
                beta = optimal_beta(M, K, 0.0, gamma, prop, hw.epsilon)
                rows.append({"M": M, "K": K, "beta_star": beta, "ee": b.ee / MBIT})
            except InfeasibleError:
                rows.append({"M": M, "K": K, "beta_star": None, "ee": 0.0})
        return rows

    _sweep(table, list(range(args.K_min, args.K_max + 1)), compute, ckpt)
    for r in table.rows:
        # ties toward fewer UEs, then fewer antennas (rows are in that order)
        if r["ee"] > 0 and (star is None or r["ee"] > star["ee"]):
            star = r
    if star is not None:
        table.notes.append({"star_M": star["M"], "star_K": star["K"],
                            "beta_star": star["beta_star"], "ee": star["ee"]})


def run_breakdown(args, cfg, table):
    gamma = _gamma(args)
    hw, prop = cfg.hardware, cfg.propagation
    SinrTarget(gamma).check(prop, hw.epsilon)
    if args.M is not None and args.K is not None:
        if args.lam is None:
            b = ee_asymptotic(args.M, args.K, gamma, hw, prop)
        else:
            d = optimize_fixed_configuration(args.M, args.K, args.lam, gamma, hw, prop,
                                             cfg.solver).design
            b = apc(d, hw, prop)
    else:
        best, _ = _opt_design(args.lam, gamma, cfg)
        d = best.design
        b = ee_asymptotic(d.M, d.K, gamma, hw, prop) if d.is_asymptotic else apc(d, hw, prop)
    shares = apc_shares(b)
    for c in COMPONENTS:
        table.add(component=c, joules_per_symbol_km2=getattr(b, c), share=shares[c])
    table.notes.append({"per_bs": b.per_bs, "ee_mbit_per_joule": b.ee / MBIT})


def run_sweep_impairments(args, cfg, table, ckpt):
    prop = cfg.propagation
    gammas = args.gammas or [1.0, 3.0]
    eps = _grid(args.epsilons, 0.0, args.epsilon_max, args.points, log=False)

    def compute(e):
        hw = dataclasses.replace(cfg.hardware, impairment_level=e)
        rows = []
        for g in gammas:
            try:
                if g >= feasibility_limit(prop.S, prop.alpha, e):
                    raise InfeasibleTarget(g, feasibility_limit(prop.S, prop.alpha, e))
                if args.lam is None:
                    val = optimize_asymptotic(g, hw, prop, cfg.solver)[1].ee
                else:
                    val = optimize_at_density(args.lam, g, hw, prop, cfg.solver).ee
            except InfeasibleError:
                val = 0.0
            rows.append({"epsilon": e, "gamma": g, "ee": val / MBIT})
        return rows

    _sweep(table, eps, compute, ckpt)


def run_sweep_ue_density(args, cfg, table, ckpt):
    gamma = _gamma(args)
    hw, prop, solver = cfg.hardware, cfg.propagation, cfg.solver
    SinrTarget(gamma).check(prop, hw.epsilon)

    def compute(mu):
        rows = []
        best = optimize_fixed_ue_density(mu, gamma, hw, prop, solver)
        rows.append({"mu": mu, "mode": "optimal", "ee": best.ee / MBIT,
                     "lambda_opt": best.design.lam, "M": best.design.M, "K": best.design.K})
        for mode, (M, K) in (("simo_10_1", (10, 1)), ("mimo_91_10", (91, 10))):
            try:
                val = optimize_fixed_configuration(M, K, mu / K, gamma, hw, prop, solver).ee
            except InfeasibleError:
                val = 0.0
            rows.append({"mu": mu, "mode": mode, "ee": val / MBIT, "lambda_opt": mu / K,
                         "M": M, "K": K})
        return rows

    _sweep(table, _grid(args.mus, args.mu_min, args.mu_max, args.points), compute, ckpt)


def run_mc_validate(args, cfg, table):
    mc = cfg.montecarlo
    if mc.trials < 2:
        raise ConfigError("mc-validate needs at least two trials")
    alphas = args.alphas or [3.0, cfg.propagation.alpha]
    for a in alphas:
        res = mc_moments(args.lam, a, args.K, mc, model=args.model)
        for name, m in res.items():
            if m.upper_bound_only:
                ok = m.estimate <= m.closed_form + 3.0 * m.sem
            else:
                ok = abs(m.estimate - m.closed_form) <= 3.0 * m.sem
            table.add(name=f"{name}[alpha={a:g},K={args.K}]", closed_form=m.closed_form,
                      mc_estimate=m.estimate, sem=m.sem, **{"pass": ok})


def run_validate_appendix(args, cfg, table):
    hw, prop = cfg.hardware, cfg.propagation
    geom = example_geometry(args.K, prop.alpha, args.ratios or (0.5, 0.3, 0.15))
    report = validate_effective_sinr_terms(geom, args.M, args.K, args.beta, args.inv_snr,
                                           hw.epsilon, args.samples,
                                           seed=cfg.montecarlo.seed, alpha=prop.alpha)
    for t in report:
        table.add(name=t.name, closed_form=t.closed_form, mc_estimate=t.estimate, sem=t.sem,
                  **{"pass": t.passed(args.rtol)})


RUNNERS = {
    "evaluate": (run_evaluate, False),
    "optimize": (run_optimize, False),
    "sweep-density": (run_sweep_density, True),
    "surface-mk": (run_surface, True),
    "breakdown": (run_breakdown, False),
    "sweep-impairments": (run_sweep_impairments, True),
    "sweep-ue-density": (run_sweep_ue_density, True),
    "mc-validate": (run_mc_validate, False),
    "validate-appendix": (run_validate_appendix, False),
}


# --- argument handling -----------------------------------------------------------

def _common(p):
    g = p.add_argument_group("run")
    g.add_argument("--config", help=f"JSON config file (default: ${ENV_VAR})")
    g.add_argument("--gamma", type=float, help="average SINR target (default 3)")
    g.add_argument("--out", help="output file (default: stdout)")
    g.add_argument("--format", choices=("csv", "ndjson"), default="csv")
    g.add_argument("--resume", action="store_true",
                   help="continue an interrupted sweep from its checkpoint")
    o = p.add_argument_group("config overrides")
    for name, (section, typ) in _FIELDS.items():
        o.add_argument("--" + name.replace("_", "-"), dest="set_" + name, type=typ,
                       metavar=typ.__name__.upper(), help=f"{section}.{name}")
    for alias, name in _ALIASES.items():
        o.add_argument("--" + alias, dest="set_" + name, type=_FIELDS[name][1],
                       help=argparse.SUPPRESS)
    o.add_argument("--omega-db", type=float, dest="omega_db", help="propagation.omega in dB")
    o.add_argument("--snr-bracket", type=float, nargs=2, dest="set_snr_bracket",
                   metavar=("LO", "HI"), help="solver.snr_bracket")
    for name in _WATTS:
        o.add_argument("--" + name.replace("_", "-") + "-watts", type=float,
                       dest="watts_" + name, help=f"hardware.{name} in W")


def build_parser():
    parser = _Parser(prog="dense-ee", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="experiment", required=True, parser_class=_Parser)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        _common(p)
        return p

    p = add("evaluate", "SINR, SE and EE of one design")
    p.add_argument("--M", type=int, default=91)
    p.add_argument("--K", type=int, default=10)
    p.add_argument("--lam", type=float, help="BS density per km^2 (default: dense limit)")
    p.add_argument("--beta", type=float, help="pilot reuse factor (default: meet --gamma)")
    p.add_argument("--rho", type=float, help="power-control coefficient in J/symbol")

    p = add("optimize", "EE-optimal design")
    p.add_argument("--lam", type=float, help="BS density (default: dense limit)")
    p.add_argument("--mu", type=float, help="fixed UE density; BS density becomes mu/K")

    p = add("sweep-density", "optimized EE versus BS density, bound and Monte Carlo")
    p.add_argument("--lambdas", type=_floats)
    p.add_argument("--lambda-min", type=float, default=0.1)
    p.add_argument("--lambda-max", type=float, default=1e3)
    p.add_argument("--points", type=int, default=20)

    p = add("surface-mk", "dense-limit EE over a grid of (M, K)")
    p.add_argument("--M-min", type=int, default=10)
    p.add_argument("--M-max", type=int, default=200)
    p.add_argument("--K-min", type=int, default=1)
    p.add_argument("--K-max", type=int, default=30)

    p = add("breakdown", "power-consumption components at the optimum")
    p.add_argument("--lam", type=float, help="BS density (default: dense limit, per BS)")
    p.add_argument("--M", type=int)
    p.add_argument("--K", type=int)

    p = add("sweep-impairments", "optimized EE versus impairment level")
    p.add_argument("--gammas", type=_floats, help="targets (default 1,3)")
    p.add_argument("--epsilons", type=_floats)
    p.add_argument("--epsilon-max", type=float, default=0.2)
    p.add_argument("--points", type=int, default=21)
    p.add_argument("--lam", type=float, help="BS density (default: dense limit)")

    p = add("sweep-ue-density", "optimized and reference EE versus UE density")
    p.add_argument("--mus", type=_floats)
    p.add_argument("--mu-min", type=float, default=1.0)
    p.add_argument("--mu-max", type=float, default=1e5)
    p.add_argument("--points", type=int, default=11)

    p = add("mc-validate", "Monte Carlo check of the distance moments")
    p.add_argument("--lam", type=float, default=10.0)
    p.add_argument("--K", type=int, default=10)
    p.add_argument("--alphas", type=_floats, help="pathloss exponents (default 3 and config)")
    p.add_argument("--model", choices=("ppp", "voronoi"), default="ppp")

    p = add("validate-appendix", "channel-level check of the effective SINR terms")
    p.add_argument("--M", type=int, default=4)
    p.add_argument("--K", type=int, default=2)
    p.add_argument("--beta", type=float, default=2.0)
    p.add_argument("--inv-snr", type=float, default=0.1, help="sigma^2/rho")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--ratios", type=_floats, help="pilot-UE distance ratios, one per cell")
    p.add_argument("--rtol", type=float, default=0.02)
    return parser


def resolve_config(args) -> RunConfig:
    cfg = load_config(args.config)
    changes = {}
    for name, (section, _) in _FIELDS.items():
        v = getattr(args, "set_" + name, None)
        if v is not None:
            changes.setdefault(section, {})[name] = v
    if args.set_snr_bracket is not None:
        changes.setdefault("solver", {})["snr_bracket"] = tuple(args.set_snr_bracket)
    if args.omega_db is not None:
        changes.setdefault("propagation", {})["omega"] = db_to_linear(args.omega_db)
    for section in ("propagation", "montecarlo", "solver"):
        if section in changes:
            cfg = cfg.replace(section, **changes[section])
    hw = changes.get("hardware", {})
    for name in _WATTS:
        w = getattr(args, "watts_" + name)
        if w is not None:
            hw[name] = w * cfg.propagation.symbol_time
    if hw:
        cfg = cfg.replace("hardware", **hw)
    return cfg


def _error(kind, message, code, **extra):
    rec = {"error": kind, "message": message, "exit_code": code}
    rec.update({k: _num(v) for k, v in extra.items()})
    sys.stderr.write(json.dumps(rec) + "\n")
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = resolve_config(args)
        run, sweeps = RUNNERS[args.experiment]
        table = Table(args.experiment, cfg, cfg.montecarlo.seed)
        if sweeps:
            if args.resume and not args.out:
                raise ConfigError("--resume needs --out")
            opts = {k: v for k, v in vars(args).items() if k not in ("resume", "format")}
            key = hashlib.sha256(json.dumps([table.header(), opts], sort_keys=True,
                                            default=str).encode()).hexdigest()
            ckpt = Checkpoint(args.out + ".ckpt" if args.out else None, key, args.resume)
            run(args, cfg, table, ckpt)
        else:
            run(args, cfg, table)
        text = table.render(args.format)
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
            if sweeps:
                ckpt.finish()
        else:
            sys.stdout.write(text)
        return EXIT_OK
    except InfeasibleTarget as exc:
        return _error("infeasible", str(exc), EXIT_INFEASIBLE, gamma=exc.gamma, limit=exc.limit)
    except InfeasibleError as exc:
        return _error("infeasible", str(exc), EXIT_INFEASIBLE)
    except ConfigError as exc:
        return _error("config", str(exc), EXIT_CONFIG)
    except OSError as exc:
        return _error("io", str(exc), EXIT_IO)
    except ValueError as exc:
        return _error("config", str(exc), EXIT_CONFIG)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
