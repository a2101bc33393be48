"""Command-line front end.

Exit codes: 0 success (or every checked item passes), 1 usage or
configuration error, 2 model infeasibility, 3 a condition check failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .bias import family_from_spec
from .dynamics import ModelError, run
from .experiment import (
    ConfigError,
    baselines,
    load_experiment,
    surface_csv,
    trajectory_csv,
    trajectory_json,
    write_text,
)
from .verifier import ORIENTATIONS, GridSpec, check_confirmation, check_negativity, check_theorem1, check_theorem2

EXIT_OK, EXIT_CONFIG, EXIT_INFEASIBLE, EXIT_CHECK_FAILED = 0, 1, 2, 3

log = logging.getLogger("asymbias")


def parse_params(text: str) -> dict:
    """``"chi=0.6,gamma=0.011"`` -> ``{"chi": 0.6, "gamma": 0.011}``."""
    params = {}
    if not text:
        return params
    for part in text.split(","):
        key, sep, value = part.partition("=")
        if not sep or not key.strip():
            raise ValueError(f"expected key=value, got {part!r}")
        params[key.strip()] = float(value)
    return params


def _family_arg(args):
    return family_from_spec(args.family, parse_params(args.params))


def cmd_simulate(args) -> int:
    try:
        exp = load_experiment(args.config)
    except ConfigError as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    try:
        tr = run(exp.model, exp.graph, exp.x0, exp.K, exp.conv_tol)
    except ModelError as exc:
        log.error("%s", exc)
        return EXIT_INFEASIBLE
    out_dir = Path(args.out_dir) if args.out_dir else Path(".")
    try:
        write_text(out_dir / exp.csv_name, trajectory_csv(tr))
        write_text(out_dir / exp.json_name, trajectory_json(tr, exp.echo))
    except OSError as exc:
        log.error("cannot write output: %s", exc)
        return EXIT_CONFIG
    print(f"wrote {out_dir / exp.csv_name} ({tr.steps} steps, converged_at={tr.converged_at})")
    return EXIT_OK


def cmd_check(args) -> int:
    try:
        fam = _family_arg(args)
        grid = GridSpec(args.resolution)
    except ValueError as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    if args.which == "confirmation":
        report = check_confirmation(fam, grid)
    elif args.which == "negativity":
        report = check_negativity(fam, grid)
    else:
        pair = fam.decomposition()
        if pair is None:
            log.error("family %s has no (f, g) decomposition", fam.name)
            return EXIT_CONFIG
        checker = check_theorem1 if args.which == "theorem1" else check_theorem2
        report = checker(*pair, grid, args.orientation)
    doc = report.to_dict()
    doc["family"] = fam.to_spec()
    try:
        write_text(args.out, json.dumps(doc, indent=1) + "\n")
    except OSError as exc:
        log.error("cannot write report: %s", exc)
        return EXIT_CONFIG
    for it in report.items:
        print(f"{it.item:16s} {it.status:4s} checked={it.checked} violations={it.violations}")
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_surface(args) -> int:
    try:
        fam = _family_arg(args)
        text = surface_csv(fam, args.resolution)
        write_text(args.out, text)
    except (ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    return EXIT_OK


def cmd_baselines(args) -> int:
    doc = baselines()
    lin, hk, dk = doc["linear_symmetric"], doc["hk_indicator"], doc["dandekar"]
    print(
        f"(a) linear-symmetric: witness ({lin['x_i']}, {lin['x_j']}, {lin['x_h']}), "
        f"weights {lin['weight_j']:.17g} and {lin['weight_h']:.17g}, equal={lin['equal']}"
    )
    print(
        f"(b) hk-indicator: witness ({hk['x_i']}, {hk['x_j']}, {hk['x_h']}), "
        f"weights {hk['weight_j']} and {hk['weight_h']}, kind={hk['kind']}, "
        f"{hk['band_condition_text']}: {hk['band_condition']}"
    )
    for case in dk["cases"]:
        print(
            f"(c) biased assimilation at x_i=0.5: x_j={case['x_j']} coefficient={case['coefficient']:.17g} "
            f"next={case['next_x_i']:.17g}"
        )
    if args.out:
        try:
            write_text(args.out, json.dumps(doc, indent=1) + "\n")
        except OSError as exc:
            log.error("cannot write output: %s", exc)
            return EXIT_CONFIG
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="asymbias", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run an experiment config")
    sim.add_argument("--config", required=True)
    sim.add_argument("--out-dir")
    sim.set_defaults(func=cmd_simulate)

    chk = sub.add_parser("check", help="grid-check a bias family")
    chk.add_argument("--family", required=True)
    chk.add_argument("--params", default="")
    chk.add_argument("--which", required=True, choices=["confirmation", "negativity", "theorem1", "theorem2"])
    chk.add_argument("--resolution", type=int, default=41)
    chk.add_argument("--orientation", choices=ORIENTATIONS, default="corrected")
    chk.add_argument("--out", required=True)
    chk.set_defaults(func=cmd_check)

    srf = sub.add_parser("surface", help="export a weight surface as CSV")
    srf.add_argument("--family", required=True)
    srf.add_argument("--params", default="")
    srf.add_argument("--resolution", type=int, default=41)
    srf.add_argument("--out", required=True)
    srf.set_defaults(func=cmd_surface)

    base = sub.add_parser("baselines", help="show where the symmetric baselines fail")
    base.add_argument("--out")
    base.set_defaults(func=cmd_baselines)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
