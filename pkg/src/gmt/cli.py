"""Command-line experiment runner: ``gmt <command> --matrix "2,1;1,1" ...``.

Every run resolves a single configuration (JSON file from ``--config``,
overridden by flags), executes one command and writes a JSON report that
embeds the resolved configuration. Failures print an error object and exit
with the code attached to the exception class.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import warnings
from fractions import Fraction
from pathlib import Path

from . import cache as ball_cache
from .cayley import (
    GenSet,
    default_beta,
    density_report,
    enumerate_ball,
    growth_estimate,
    height_report,
    zset_report,
)
from .errors import BetaWarning, ConfigError, GMTError, LimitExceeded
from .group import GroupSpec
from .linalg import char_poly
from .measures import WalkConfig, walk_estimate
from .nilpotence import nr_density_exhaustive, nr_density_sampled
from .predicates import ZSetConfig
from .witness import find_witness, growth_ratios, verify_certificate

COMMANDS = ("classify", "ball", "density", "heights", "zset", "nr", "witness", "walk")

DEFAULTS = {
    "gens": None,
    "radius": 4,
    "r": 1,
    "beta": None,
    "samples": 10000,
    "seed": 0,
    "pred": ["tau=0"],
    "mode": "exhaustive",
    "k": 10,
    "maxR": 16,
    "kProbe": 12,
    "steps": 100,
    "lazy": "1/5",
    "maxElements": None,
    "budget": 5_000_000,
    "cache": None,
    "csv": None,
    "out": None,
}

# execution knobs that must not change report bytes
_NOT_RECORDED = ("threads", "out", "config")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gmt", description="Experiments in ascending HNN-extensions G(m,T).")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="JSON config file; flags override its fields")
    p.add_argument("--matrix", help='T as rows split by ";", entries by ","')
    p.add_argument("--gens", help="comma-separated generator words (default: a1..am, t)")
    p.add_argument("--radius", type=int)
    p.add_argument("--r", type=int, help="commutator depth")
    p.add_argument("--beta", help="rational beta > 1, e.g. 11/10")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--pred", action="append", help="predicate (repeatable)")
    p.add_argument("--mode", choices=("exhaustive", "sampled"))
    p.add_argument("--k", type=int, help="witness depth")
    p.add_argument("--max-R", dest="maxR", type=int)
    p.add_argument("--k-probe", dest="kProbe", type=int)
    p.add_argument("--steps", type=int, help="random walk length")
    p.add_argument("--lazy", help="lazy mass mu(1), rational")
    p.add_argument("--max-elements", dest="maxElements", type=int)
    p.add_argument("--budget", type=int, help="tuple budget for exhaustive nr")
    p.add_argument("--cache", help="ball cache file (read if compatible, else written)")
    p.add_argument("--csv", help="also write per-radius sequences as CSV")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", help="report path (default: stdout)")
    return p


def resolve_config(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    if args.config:
        try:
            cfg.update(json.loads(Path(args.config).read_text(encoding="utf-8")))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
    for key, value in vars(args).items():
        if value is not None and key not in ("config",):
            cfg[key] = value
    if not cfg.get("matrix"):
        raise ConfigError("a matrix is required (--matrix or config field 'matrix')")
    if isinstance(cfg["pred"], str):
        cfg["pred"] = [cfg["pred"]]
    if cfg["radius"] < 0:
        raise ConfigError("radius must be nonnegative")
    return cfg


def _fraction(text, name) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{name} must be a rational like 11/10, got {text!r}") from None


def _ball(spec, gens, cfg, threads):
    path = cfg.get("cache")
    if path and Path(path).exists():
        ball = ball_cache.load_ball(path, spec, gens)
        if ball.radius >= cfg["radius"]:
            return ball.restrict(cfg["radius"])
    ball = enumerate_ball(spec, gens, cfg["radius"], max_elements=cfg["maxElements"], threads=threads)
    if path:
        ball_cache.save_ball(ball, path)
    return ball


def _write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def run_experiment(cfg: dict, threads: int = 1) -> dict:
    spec = GroupSpec.parse(cfg["matrix"])
    cmd = cfg["command"]
    report: dict = {"command": cmd, "matrix": spec.matrix_text}
    if cmd == "classify":
        report.update(
            {"class": spec.growth_class.value, "m": spec.m, "det": spec.d, "N": spec.N, "charPoly": char_poly(spec.T)}
        )
        return report
    if cmd == "witness":
        R, j = find_witness(spec, max_R=cfg["maxR"], k_probe=cfg["kProbe"])
        cert = verify_certificate(spec, R, j, cfg["k"])
        report["certificate"] = cert.to_json()
        report["growthRatios"] = growth_ratios(spec, R, j, cfg["kProbe"])
        return report
    gens = GenSet.parse(spec, cfg["gens"])
    report["symmetrized"] = gens.symmetrized
    if cmd == "walk":
        wc = WalkConfig(cfg["steps"], cfg["samples"], cfg["seed"], _fraction(cfg["lazy"], "lazy"))
        report.update(walk_estimate(spec, gens, wc, cfg["pred"], threads=threads).to_json())
        return report
    ball = _ball(spec, gens, cfg, threads)
    report["ballSizes"] = ball.per_radius_counts
    if cmd == "ball":
        report["growth"] = growth_estimate(ball).to_json()
    elif cmd == "density":
        zcfg = ZSetConfig(_fraction(cfg["beta"], "beta")) if cfg["beta"] else None
        reports = [density_report(ball, p, zcfg) for p in cfg["pred"]]
        report["densities"] = [r.to_json() for r in reports]
        if cfg["csv"]:
            rows = [(r.predicate, i, c, b, str(g), float(g))
                    for r in reports for i, (c, b, g) in enumerate(zip(r.counts, r.ball_sizes, r.gammas))]
            _write_csv(cfg["csv"], ["predicate", "n", "count", "ballSize", "gamma", "gammaFloat"], rows)
    elif cmd == "heights":
        report["heights"] = height_report(ball).to_json()
    elif cmd == "zset":
        est = growth_estimate(ball)
        root = est.alpha_ratios[-1] ** (1 / (2 * spec.m)) if est.alpha_ratios else None
        beta = _fraction(cfg["beta"], "beta") if cfg["beta"] else default_beta(est, spec.m)
        report["warnings"] = []
        if root is not None and beta >= root:
            msg = f"beta = {beta} is not below the measured alpha^(1/2m) = {root:.6f}"
            warnings.warn(msg, BetaWarning, stacklevel=2)
            report["warnings"].append(msg)
        zr = zset_report(ball, ZSetConfig(beta))
        report["zset"] = zr.to_json()
        report["deltaHat"] = height_report(ball, "Z", ZSetConfig(beta)).to_json()
        if cfg["csv"]:
            _write_csv(cfg["csv"], ["n", "elliptic", "z", "fraction"],
                       [(i, a, z, f) for i, (a, z, f) in enumerate(zip(zr.elliptic_counts, zr.z_counts, zr.fractions))])
    elif cmd == "nr":
        if cfg["mode"] == "exhaustive":
            nr = nr_density_exhaustive(spec, ball, cfg["r"], budget=cfg["budget"], threads=threads)
        else:
            nr = nr_density_sampled(spec, ball, cfg["r"], cfg["samples"], cfg["seed"], threads=threads)
        report.update(nr.to_json())
        if cfg["csv"]:
            _write_csv(cfg["csv"], ["n", "gamma"], [(n, float(g)) for n, g in zip(nr.radii, nr.gammas)])
    return report


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = args.out
    try:
        cfg = resolve_config(args)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            report = run_experiment(cfg, threads=max(1, args.threads))
        notes = sorted({str(w.message) for w in caught})
        if notes:
            report["notes"] = notes
        report["config"] = {k: v for k, v in cfg.items() if k not in _NOT_RECORDED}
        _emit(report, out)
        return 0
    except GMTError as exc:
        payload = {"error": type(exc).__name__, "message": str(exc), "exitCode": exc.exit_code}
        if isinstance(exc, LimitExceeded) and exc.radius_reached is not None:
            payload["radiusReached"] = exc.radius_reached
        _emit(payload, out)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
