"""Command-line entry point: ``margulis <command> [options]``."""
import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import suites as S
from .config import load_config, preset_config
from .errors import MargulisError, ParseError
from .lorentz import ray_angle

COMMANDS = ("identities", "limit-set", "orbits", "contraction", "chart-roundtrip",
            "metric-bracket", "anosov-check")
DEFAULT_SEED = 42


@dataclass
class RunReport:
    command: str
    seed: int
    config: dict
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def ok(self):
        return S.all_passed(self.checks)

    def to_dict(self):
        return {
            "command": self.command,
            "seed": self.seed,
            "config": self.config,
            "ok": self.ok,
            "checks": [c.to_dict() for c in self.checks],
            "data": self.data,
            "timing": {"wall_time_s": self.wall_time},
        }


def _plain(x):
    """numpy scalars and arrays to JSON-native values."""
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    return x


def dumps(obj):
    # float repr is the shortest string that round-trips to the same double
    return json.dumps(_plain(obj), indent=2, allow_nan=True)


def parse_grid(text):
    try:
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ParseError(f"bad --t-grid {text!r}") from exc
    if not vals:
        raise ParseError("--t-grid is empty")
    return vals


def _write_json(path, rows):
    with open(path, "w") as fh:
        fh.write(dumps(rows) + "\n")


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for r in rows:
            w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in r])


def _apply_tol(checks, tol):
    if tol is None:
        return checks
    for c in checks:
        if c.mode == "max" and c.tol > 0:
            c.tol = tol
    return checks


def run(command, cfg, seed=DEFAULT_SEED, depth=None, max_len=None, t_grid=None, out=None, tol=None):
    """Execute one command and return its RunReport; tables go to ``out`` when given."""
    if command not in COMMANDS:
        raise ParseError(f"unknown command {command!r}")
    group = cfg.group()
    rng = np.random.default_rng(seed)
    report = RunReport(command, seed, cfg.to_dict())
    start = time.perf_counter()
    if command == "identities":
        report.checks = S.identity_suite(group, rng)
    elif command == "limit-set":
        depth = depth or 5
        lam, report.checks = S.limit_set_checks(group, depth)
        report.data = {"depth": depth, "count": len(lam)}
        if out:
            rows = [(i, float(ray_angle(x)), x[0], x[1]) for i, x in enumerate(lam)]
            _write_csv(out, ["index", "angle", "x", "y"], rows)
    elif command == "orbits":
        max_len = max_len or 3
        rows, report.checks = S.orbit_checks(group, max_len)
        report.data = {"max_len": max_len, "rows": rows}
        if out:
            _write_json(out, rows)
    elif command == "contraction":
        max_len = max_len or 4
        grid = t_grid or [0.0, 0.5, 1.0, 2.0, 4.0]
        rows, report.checks = S.contraction_table(group, max_len, grid)
        report.data = {"max_len": max_len, "t_grid": grid, "rows": len(rows),
                       "conversion": "orbit_average"}
        if out:
            _write_json(out, rows)
    elif command == "chart-roundtrip":
        max_len = max_len or 3
        rows, skipped, report.checks = S.chart_roundtrip_checks(group, max_len)
        report.data = {"max_len": max_len, "pairs": len(rows), "skipped_degenerate": skipped}
        if out:
            _write_json(out, rows)
    elif command == "metric-bracket":
        rows, info, report.checks = S.metric_bracket_checks(group, rng, cover_depth=depth or 1)
        report.data = info
        if out:
            _write_json(out, rows)
    elif command == "anosov-check":
        max_len = max_len or 4
        grid = t_grid or S.DEFAULT_T_GRID
        reports, report.checks = S.anosov_checks(group, max_len, grid)
        rows = [{"word": list(r.word), "f_avg": r.f_avg, "A": r.A, "c_hat": r.c_hat,
                 "c_envelope": r.c_envelope, "c_bound": r.c_bound, "ok": r.ok} for r in reports]
        report.data = {"max_len": max_len, "rows": rows}
        if out:
            _write_json(out, rows)
    _apply_tol(report.checks, tol)
    report.wall_time = time.perf_counter() - start
    return report


def build_parser():
    p = argparse.ArgumentParser(prog="margulis", description=__doc__)
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="JSON group config (default: the example2 preset)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--depth", type=int)
    p.add_argument("--max-len", type=int)
    p.add_argument("--t-grid")
    p.add_argument("--out")
    p.add_argument("--tol", type=float)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else preset_config()
        grid = parse_grid(args.t_grid) if args.t_grid else None
        for name in ("depth", "max_len"):
            v = getattr(args, name)
            if v is not None and v < 1:
                raise ParseError(f"--{name.replace('_', '-')} must be >= 1")
        report = run(args.command, cfg, args.seed, args.depth, args.max_len, grid, args.out, args.tol)
    except MargulisError as exc:
        print(dumps(exc.to_record()))
        return 2
    print(dumps(report.to_dict()))
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
