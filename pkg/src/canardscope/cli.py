"""Command-line front end.

Subcommands: check, node, orbit, canard, simulate, signature, sweep,
nondim.  Parameters come from a JSON config file (--params / --phys)
with individual flags overriding file values.  All outputs are written
as CSV/JSON into the output directory; the CANARD_SCOPE_OUT environment
variable, when set, overrides any --out choice.

Exit codes: 0 success, 2 usage error, 3 numeric/analysis failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import model, signature as sig, singular, sweep as sweep_mod
from .errors import AnalysisError
from .integrate import IntegratorConfig, integrate, write_trajectory_csv
from .params import DimensionlessParams, PhysicalParams

_PARAM_FLAGS = ("k", "p", "a", "b", "m", "lambda", "r", "epsilon")


def _out_dir(args) -> Path:
    env = os.environ.get("CANARD_SCOPE_OUT")
    out = Path(env) if env else Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--params", type=Path, help="JSON file with the scaled parameters")
    for name in _PARAM_FLAGS:
        parser.add_argument(f"--{name}", type=float, default=None, help=f"override {name}")
    parser.add_argument("--out", default=".", help="output directory (default: cwd)")


def _load_params(parser: argparse.ArgumentParser, args) -> DimensionlessParams:
    data: dict = {}
    if args.params is not None:
        try:
            data = json.loads(Path(args.params).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            parser.error(f"cannot read params file {args.params}: {exc}")
    for name in _PARAM_FLAGS:
        value = getattr(args, name.replace("lambda", "lambda"))
        value = getattr(args, "lambda" if name == "lambda" else name)
        if value is not None:
            data[name] = value
    missing = [name for name in _PARAM_FLAGS if name not in data]
    if missing:
        parser.error(f"missing parameter values: {missing}; supply --params or flags")
    try:
        return DimensionlessParams.from_json(data)
    except ValueError as exc:
        parser.error(str(exc))
        raise AssertionError("unreachable")


def _write_json(payload: dict, path: Path) -> Path:
    path.write_text(json.dumps(payload, indent=2) + "\n")
    return path


def _cmd_check(parser, args) -> int:
    params = _load_params(parser, args)
    report = singular.check_conditions(params, mode=args.mode)
    path = _write_json(report.to_json(), _out_dir(args) / "conditions.json")
    print(f"verdict: {'pass' if report.verdict else 'fail'} (mode={report.mode})")
    for name in report.required:
        chk = report.checks[name]
        value = "n/a" if chk.value is None else f"{chk.value:.6g}"
        print(f"  {name:<11} {'ok' if chk.passed else 'FAIL':<5} value={value}")
    print(f"wrote {path}")
    return 0


def _cmd_node(parser, args) -> int:
    params = _load_params(parser, args)
    folds = singular.find_folded_singularities(params)
    payload = {"folded_singularities": [fold.to_json() for fold in folds]}
    path = _write_json(payload, _out_dir(args) / "folded_singularities.json")
    for fold in folds:
        extra = ""
        if fold.mu_ratio is not None:
            extra = f", mu={fold.mu_ratio:.6g}, s={fold.s_predicted}"
        print(f"{fold.fold_side}: z={fold.z:.6g}, {fold.classification}{extra}")
    print(f"wrote {path}")
    return 0


def _cmd_orbit(parser, args) -> int:
    params = _load_params(parser, args)
    orbit = singular.build_singular_orbit(params, funnel_method=args.funnel)
    out = _out_dir(args)
    csv_path = singular.write_orbit_csv(orbit, out / "orbit.csv")
    json_path = singular.write_orbit_json(orbit, out / "orbit.json")
    print(
        f"closed={orbit.closed} transversal={orbit.transversal} "
        f"crossing_z={orbit.crossing_z:.6g} landing=({orbit.landing[0]:g}, {orbit.landing[1]:.6g})"
    )
    print(f"wrote {csv_path} and {json_path}")
    return 0


def _cmd_canard(parser, args) -> int:
    params = _load_params(parser, args)
    approx = singular.strong_canard(params, seed_offset=args.offset, x_stop=args.x_stop)
    finer = singular.strong_canard(
        params, seed_offset=approx.seed_offset / 10.0, x_stop=args.x_stop
    )
    out = _out_dir(args)
    csv_path = out / "canard.csv"
    lines = ["x,z"]
    lines.extend(f"{repr(float(x))},{repr(float(z))}" for x, z in zip(approx.x, approx.z))
    csv_path.write_text("\n".join(lines) + "\n")
    payload = approx.to_json()
    payload["z_at_stop_finer_offset"] = finer.z_at_stop
    payload["offset_discrepancy"] = abs(finer.z_at_stop - approx.z_at_stop)
    json_path = _write_json(payload, out / "canard.json")
    print(
        f"edge z({args.x_stop:g}) = {finer.z_at_stop:.8g} "
        f"(two-offset discrepancy {payload['offset_discrepancy']:.2e})"
    )
    print(f"wrote {csv_path} and {json_path}")
    return 0


def _simulate(params: DimensionlessParams, args):
    cfg = IntegratorConfig(rtol=args.rtol, atol=args.atol, max_steps=args.max_steps)
    initial = np.array([float(part) for part in args.initial.split(",")])
    if initial.shape != (3,):
        raise ValueError(f"--initial must be three comma-separated numbers, got {args.initial!r}")
    return integrate(model.full_rhs(params), initial, (0.0, args.t_end), cfg)


def _cmd_simulate(parser, args) -> int:
    params = _load_params(parser, args)
    traj = _simulate(params, args)
    path = write_trajectory_csv(traj, _out_dir(args) / "trajectory.csv")
    stats = traj.step_stats
    print(
        f"integrated to t={traj.times[-1]:g} in {stats.accepted} steps "
        f"({stats.rejected} rejected){' [truncated]' if traj.truncated else ''}"
    )
    print(f"wrote {path} and {path.with_suffix('.json')}")
    return 0


def _cmd_signature(parser, args) -> int:
    if args.traj is not None:
        t, x = sig.read_trajectory_csv(args.traj)
        result = sig.signature_from_series(t, x, transient_fraction=args.transient)
    else:
        params = _load_params(parser, args)
        traj = _simulate(params, args)
        result = sig.signature(traj, transient_fraction=args.transient)
    path = sig.write_signature_json(result, _out_dir(args) / "signature.json")
    print(f"signature: {result.canonical_string} (periodic={result.periodic})")
    print(f"wrote {path}")
    return 0


def _parse_axis(parser, text: str, count: int, name: str) -> tuple[float, float, int]:
    parts = text.split(":")
    try:
        if len(parts) == 1:
            value = float(parts[0])
            return (value, value, 1)
        if len(parts) == 2:
            return (float(parts[0]), float(parts[1]), count)
    except ValueError:
        pass
    parser.error(f"--{name} must be VALUE or MIN:MAX, got {text!r}")
    raise AssertionError("unreachable")


def _cmd_sweep(parser, args) -> int:
    try:
        counts = tuple(int(part) for part in args.grid.lower().split("x"))
        if len(counts) != 3:
            raise ValueError
    except ValueError:
        parser.error(f"--grid must look like 50x50x1, got {args.grid!r}")
    spec = sweep_mod.SweepSpec(
        a_range=_parse_axis(parser, args.a, counts[0], "a"),
        p_range=_parse_axis(parser, args.p, counts[1], "p"),
        m_range=_parse_axis(parser, args.m, counts[2], "m"),
        delta=args.delta,
        r=args.r,
        k=args.k,
        lam=getattr(args, "lambda"),
        mode=args.mode,
        subset=args.subset,
        emit=args.emit,
    )
    rows = sweep_mod.run_sweep(spec)
    path = sweep_mod.write_region_csv(rows, _out_dir(args) / "region.csv")
    passing = sum(row.verdict for row in rows)
    print(f"{len(rows)} rows written, {passing} passing")
    print(f"wrote {path}")
    return 0


def _cmd_nondim(parser, args) -> int:
    try:
        data = json.loads(Path(args.phys).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"cannot read physical-parameter file {args.phys}: {exc}")
    try:
        phys = PhysicalParams.from_json(data)
    except ValueError as exc:
        parser.error(str(exc))
    params, scales = model.nondimensionalize(phys)
    payload = {"params": params.to_json(), "scales": scales.to_json()}
    path = _write_json(payload, _out_dir(args) / "nondim.json")
    print(json.dumps(payload["params"], indent=2))
    print(f"wrote {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="canardscope",
        description=(
            "Fast/slow analysis of the three-variable temperature-carbon "
            "oscillator: folded singularities, canards, singular orbits, "
            "MMO signatures, and parameter-region sweeps."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="evaluate the admissibility conditions")
    _add_param_flags(p_check)
    p_check.add_argument("--mode", choices=("strict", "sharp"), default="strict")
    p_check.set_defaults(func=_cmd_check)

    p_node = sub.add_parser("node", help="locate and classify the folded singularities")
    _add_param_flags(p_node)
    p_node.set_defaults(func=_cmd_node)

    p_orbit = sub.add_parser("orbit", help="construct the singular orbit")
    _add_param_flags(p_orbit)
    p_orbit.add_argument("--funnel", choices=("numeric", "linear"), default="numeric")
    p_orbit.set_defaults(func=_cmd_orbit)

    p_canard = sub.add_parser("canard", help="trace the strong canard")
    _add_param_flags(p_canard)
    p_canard.add_argument("--offset", type=float, default=None, help="seed offset from the node")
    p_canard.add_argument("--x-stop", dest="x_stop", type=float, default=-2.0)
    p_canard.set_defaults(func=_cmd_canard)

    for name, helptext in (
        ("simulate", "integrate the full system and write the trajectory"),
        ("signature", "classify oscillations into an MMO signature"),
    ):
        p_run = sub.add_parser(name, help=helptext)
        _add_param_flags(p_run)
        p_run.add_argument("--initial", default="0,0,0", help="initial state x,y,z")
        p_run.add_argument("--t-end", dest="t_end", type=float, default=200.0)
        p_run.add_argument("--rtol", type=float, default=1e-8)
        p_run.add_argument("--atol", type=float, default=1e-10)
        p_run.add_argument("--max-steps", dest="max_steps", type=int, default=2_000_000)
        if name == "signature":
            p_run.add_argument("--transient", type=float, default=0.5)
            p_run.add_argument("--traj", type=Path, default=None, help="classify an existing trajectory CSV")
            p_run.set_defaults(func=_cmd_signature)
        else:
            p_run.set_defaults(func=_cmd_simulate)

    p_sweep = sub.add_parser("sweep", help="map the admissible (a, p, m) region")
    p_sweep.add_argument("--delta", type=float, required=True)
    p_sweep.add_argument("--a", default="-1:1", help="VALUE or MIN:MAX (default -1:1)")
    p_sweep.add_argument("--p", default="0.12:6", help="VALUE or MIN:MAX (default 0.12:6)")
    p_sweep.add_argument("--m", default="0.1:2", help="VALUE or MIN:MAX (default 0.1:2)")
    p_sweep.add_argument("--grid", default="25x25x1", help="counts as AxPxM (default 25x25x1)")
    p_sweep.add_argument("--r", type=float, default=0.3)
    p_sweep.add_argument("--k", type=float, default=4.0)
    p_sweep.add_argument("--lambda", type=float, default=1.0)
    p_sweep.add_argument("--mode", choices=("strict", "sharp"), default="strict")
    p_sweep.add_argument("--subset", action="store_true", help="verdict from conditions a-d, g, h only")
    p_sweep.add_argument("--emit", choices=("full", "region"), default="full")
    p_sweep.add_argument("--out", default=".")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_nondim = sub.add_parser("nondim", help="scale a physical parameter set")
    p_nondim.add_argument("--phys", type=Path, required=True, help="PhysicalParams JSON file")
    p_nondim.add_argument("--out", default=".")
    p_nondim.set_defaults(func=_cmd_nondim)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except AnalysisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
