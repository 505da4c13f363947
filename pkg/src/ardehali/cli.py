"""Command-line interface.

Exit codes: 0 success / CERTIFIED, 2 invalid input, 3 NOT_MAXIMAL,
4 CONDITIONS_VIOLATED.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import files
from .characterization import (
    CERTIFIED,
    CONDITIONS_VIOLATED,
    NOT_MAXIMAL,
    certify_maximal_violation,
    random_local_unitary_ghz,
)
from .config import MAX_LHV_QUBITS
from .errors import ArdehaliError
from .lhv import lhv_max
from .operators import (
    ardehali_expectation,
    bounds_report,
    canonical_settings,
    ghz_state,
    w_state,
)
from .optimizer import OptimizationConfig, see_saw

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CODES = {CERTIFIED: 0, NOT_MAXIMAL: 3, CONDITIONS_VIOLATED: 4}


class InputError(Exception):
    pass


def _emit(data, out=None):
    if out:
        files.write_json(out, data)
    else:
        json.dump(data, sys.stdout, indent=2)
        sys.stdout.write("\n")


def bounds_rows(n_min, n_max):
    if not 2 <= n_min <= n_max <= MAX_LHV_QUBITS:
        raise InputError(
            f"invalid range {n_min}..{n_max}: n must satisfy 2 <= n <= {MAX_LHV_QUBITS} "
            f"(exhaustive LHV enumeration cap of 4^{MAX_LHV_QUBITS} strategies)"
        )
    rows = []
    for n in range(n_min, n_max + 1):
        report = bounds_report(n)
        labels = report.labels
        lhv = lhv_max(n)
        rows.append(
            {
                "n": n,
                "classical_bound": report.classical_bound,
                "classical_label": labels["classical_bound"],
                "lhv_max": lhv,
                "lhv_confirmed": lhv == report.classical_bound,
                "quantum_bound": report.quantum_bound,
                "quantum_label": labels["quantum_bound"],
                "ghz_value": ardehali_expectation(ghz_state(n), canonical_settings(n)),
                "violation_factor": report.violation_factor,
                "factor_label": labels["violation_factor"],
            }
        )
    return rows


def cmd_bounds(args):
    n_max = args.n_max if args.n_max is not None else args.n_min
    rows = bounds_rows(args.n_min, n_max)
    if args.json:
        _emit({"schema_version": files.SCHEMA_VERSION, "rows": rows})
        return EXIT_OK
    header = f"{'n':>3}  {'classical':>18}  {'LHV':>5}  {'quantum':>22}  {'GHZ value':>12}  {'factor':>20}"
    print(header)
    for r in rows:
        print(
            f"{r['n']:>3}  {r['classical_label']:>8} = {r['classical_bound']:<7.6g}"
            f"  {'ok' if r['lhv_confirmed'] else 'FAIL':>5}"
            f"  {r['quantum_label']:>8} = {r['quantum_bound']:<11.6f}"
            f"  {r['ghz_value']:>12.6f}"
            f"  {r['factor_label']:>8} = {r['violation_factor']:<9.6f}"
        )
    return EXIT_OK


def _load_state(path):
    return files.state_from_json(files.read_json(path))


def cmd_certify(args):
    psi = _load_state(args.state)
    n = int(np.log2(psi.size))
    if args.canonical:
        settings = canonical_settings(n)
    elif args.settings:
        settings = files.settings_from_json(files.read_json(args.settings))
    else:
        raise InputError("give either --settings FILE or --canonical")
    report = certify_maximal_violation(psi, settings, tol=args.tol)
    _emit(report.to_json(), args.out)
    return EXIT_CODES[report.verdict]


def cmd_optimize(args):
    psi = _load_state(args.state)
    cfg = OptimizationConfig(restarts=args.restarts, max_sweeps=args.max_sweeps, value_tol=args.value_tol, seed=args.seed)
    result = see_saw(psi, cfg)
    data = result.to_json()
    data["seed"] = args.seed
    data["restarts"] = args.restarts
    if args.settings_out:
        files.write_json(args.settings_out, result.best_settings.to_json())
    _emit(data, args.out)
    return EXIT_OK


def companion_paths(out):
    out = Path(out)
    stem = out.with_suffix("") if out.suffix == ".json" else out
    return Path(f"{stem}.settings.json"), Path(f"{stem}.unitaries.json")


def cmd_make_state(args):
    if args.ghz is not None:
        n = args.ghz
        if n < 2:
            raise InputError("--ghz needs n >= 2")
        _emit(files.state_to_json(ghz_state(n)), args.out)
    elif args.w is not None:
        n = args.w
        if n < 2:
            raise InputError("--w needs n >= 2")
        _emit(files.state_to_json(w_state(n)), args.out)
    else:
        n = args.random_lu_ghz
        if n < 2:
            raise InputError("--random-lu-ghz needs n >= 2")
        if not args.out:
            raise InputError("--random-lu-ghz requires --out so companion files can be written")
        rng = np.random.default_rng(args.seed)
        psi, settings, unitaries = random_local_unitary_ghz(n, rng)
        settings_path, unitaries_path = companion_paths(args.out)
        files.write_json(settings_path, settings.to_json())
        files.write_json(unitaries_path, files.unitaries_to_json(unitaries))
        _emit(files.state_to_json(psi), args.out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="ardehali", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="classical/quantum bounds, GHZ value and violation factor per n")
    p.add_argument("n_min", type=int)
    p.add_argument("n_max", type=int, nargs="?")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("certify", help="certify a state as a maximal violator")
    p.add_argument("state")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--settings")
    group.add_argument("--canonical", action="store_true")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("optimize", help="see-saw search for the best settings of a state")
    p.add_argument("state")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-sweeps", type=int, default=500)
    p.add_argument("--value-tol", type=float, default=1e-10)
    p.add_argument("--out", help="write the result JSON here instead of stdout")
    p.add_argument("--settings-out", help="also write the best settings as a settings file")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("make-state", help="write a GHZ, W or random locally rotated GHZ state")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--ghz", type=int, metavar="N")
    group.add_argument("--w", type=int, metavar="N")
    group.add_argument("--random-lu-ghz", type=int, metavar="N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_make_state)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ArdehaliError, ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
