"""``tsm`` command line: single points, sweeps and figure data.

Examples::

    tsm point --scenario proj --theta 0.785 --phi 0.785
    tsm sweep --scenario gauss --sweep theta=0:3.14159:64 --sweep beta_M=0.5:2:4
    tsm figure fig2b --out fig2b.csv --verify

Without ``--out`` the table goes to ``$TSM_OUTPUT_DIR/<name>.<format>`` when
that variable is set and to stdout otherwise.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import logging
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np
import yaml

from .figures import FIGURES
from .report import MC_COLUMNS, PARAM_COLUMNS, RESULT_COLUMNS, MCSettings, analyze, verify_row

log = logging.getLogger("tsm")

SCENARIOS = {
    "gauss": {"measurement": "gauss", "unitary": "swap"},
    "proj": {"measurement": "proj", "unitary": "swap"},
    "augmented": {"measurement": "proj", "unitary": "augmented"},
}
DEFAULTS = {"omega_A": 2.0, "omega_B": 1.0, "beta": 1.0, "theta": math.pi / 2,
            "phi": 0.0, "beta_M": 0.0, "measurement": "gauss", "unitary": "swap"}
FLOAT_PARAMS = ("omega_A", "omega_B", "beta", "theta", "phi", "beta_M")

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 2, 3


class ManifestError(ValueError):
    pass


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", type=Path, help="YAML file with cycle/mc settings")
    p.add_argument("--out", type=Path)
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--seed", type=int)
    p.add_argument("--cycles", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--mc", action="store_true", default=None, help="add Monte Carlo columns")
    p.add_argument("--verify", action="store_true", help="cross-check against closed forms")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--scenario", choices=sorted(SCENARIOS))
    p.add_argument("--omega-a", dest="omega_A", type=float)
    p.add_argument("--omega-b", dest="omega_B", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--phi", type=float)
    p.add_argument("--beta-m", dest="beta_M", type=float)
    p.add_argument("--measurement", choices=("gauss", "proj"))
    p.add_argument("--unitary", choices=("swap", "augmented"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tsm", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("point", help="one parameter point"))
    sweep = sub.add_parser("sweep", help="cartesian grid over swept parameters")
    _add_common(sweep)
    sweep.add_argument("--sweep", action="append", default=[], metavar="NAME=START:STOP:NUM",
                       help="linearly spaced axis; repeat for a grid")
    fig = sub.add_parser("figure", help="data behind one figure")
    fig.add_argument("figure_id", choices=sorted(FIGURES))
    _add_common(fig)
    return parser


def load_config(path: Path) -> tuple[dict, dict]:
    """Read ``cycle`` and ``mc`` sections; returns flat parameter and mc dicts."""
    with open(path) as fh:
        doc = yaml.safe_load(fh) or {}
    if not isinstance(doc, dict):
        raise ManifestError(f"{path}: top level must be a mapping")
    cycle = dict(doc.get("cycle") or {})
    params = {}
    for section in ("unitary", "measurement"):
        sub = cycle.pop(section, None)
        if isinstance(sub, dict):
            sub = dict(sub)
            params[section] = sub.pop("kind", None)
            params.update(sub)
        elif sub is not None:
            params[section] = sub
    params.update(cycle)
    unknown = set(params) - set(DEFAULTS)
    if unknown:
        raise ManifestError(f"{path}: unknown cycle keys {sorted(unknown)}")
    mc = dict(doc.get("mc") or {})
    unknown = set(mc) - {"enabled", "cycles", "samples", "seed"}
    if unknown:
        raise ManifestError(f"{path}: unknown mc keys {sorted(unknown)}")
    return {k: v for k, v in params.items() if v is not None}, mc


def _parse_axis(text: str) -> tuple[str, list[float]]:
    try:
        name, rng = text.split("=", 1)
        start, stop, num = rng.split(":")
        values = np.linspace(float(start), float(stop), int(num)).tolist()
    except ValueError as exc:
        raise ManifestError(f"bad --sweep {text!r}, expected NAME=START:STOP:NUM") from exc
    if name not in FLOAT_PARAMS:
        raise ManifestError(f"cannot sweep {name!r}; choose from {', '.join(FLOAT_PARAMS)}")
    return name, values


def resolve(args) -> tuple[list[dict], MCSettings | None, str]:
    """Turn parsed arguments into grid points, MC settings and an output name."""
    base, mc_cfg = dict(DEFAULTS), {}
    points_from = None
    name = args.command
    if args.command == "figure":
        fig = FIGURES[args.figure_id]
        points_from = fig
        mc_cfg["enabled"] = fig.mc
        name = args.figure_id
    if args.config is not None:
        cfg_params, cfg_mc = load_config(args.config)
        base.update(cfg_params)
        mc_cfg.update(cfg_mc)
    if args.scenario:
        base.update(SCENARIOS[args.scenario])
    overrides = {k: getattr(args, k) for k in (*FLOAT_PARAMS, "measurement", "unitary")
                 if getattr(args, k) is not None}
    base.update(overrides)

    if points_from is not None:
        points = [{**base, **pt, **overrides} for pt in points_from.points()]
    elif args.command == "sweep":
        if not args.sweep:
            raise ManifestError("sweep needs at least one --sweep axis")
        axes = [_parse_axis(s) for s in args.sweep]
        names = [a for a, _ in axes]
        points = [{**base, **dict(zip(names, combo))}
                  for combo in itertools.product(*(v for _, v in axes))]
    else:
        points = [base]

    for k in ("cycles", "samples", "seed"):
        if getattr(args, k) is not None:
            mc_cfg[k] = getattr(args, k)
    if args.mc:
        mc_cfg["enabled"] = True
    mc = None
    if mc_cfg.get("enabled"):
        mc = MCSettings(int(mc_cfg.get("cycles", 20)), int(mc_cfg.get("samples", 20000)),
                        int(mc_cfg.get("seed", 0)))
        if mc.cycles < 1 or mc.samples < 1:
            raise ManifestError("cycles and samples must be at least 1")
    return points, mc, name


def _fmt(v) -> str:
    if v is None:
        return "nan"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format(float(v) + 0.0, ".17g")  # no "-0"
    return str(v)


def render(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=1) + "\n"
    columns = list(rows[0]) if rows else list(PARAM_COLUMNS + RESULT_COLUMNS)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in columns])
    return buf.getvalue()


def _ordered(row: dict, with_mc: bool) -> dict:
    cols = PARAM_COLUMNS + RESULT_COLUMNS + (MC_COLUMNS if with_mc else ())
    return {c: row[c] for c in cols}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        points, mc, name = resolve(args)
        with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
            rows = list(pool.map(lambda p: analyze(p, mc), points))
    except (ManifestError, ValueError, OSError, yaml.YAMLError) as exc:
        print(f"tsm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rows = [_ordered(r, mc is not None) for r in rows]
    log.info("computed %d rows", len(rows))

    fmt = args.format or (args.out.suffix.lstrip(".") if args.out and args.out.suffix in (".csv", ".json") else "csv")
    out = args.out
    if out is None and os.environ.get("TSM_OUTPUT_DIR"):
        out = Path(os.environ["TSM_OUTPUT_DIR"]) / f"{name}.{fmt}"
    text = render(rows, fmt)
    try:
        if out is None:
            sys.stdout.write(text)
        else:
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(text)
            log.info("wrote %s", out)
    except OSError as exc:
        print(f"tsm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.verify:
        bad = 0
        for i, row in enumerate(rows):
            for msg in verify_row(row):
                bad += 1
                print(f"tsm: verify row {i}: {msg}", file=sys.stderr)
        if bad:
            return EXIT_VERIFY
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
