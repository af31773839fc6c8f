"""Command-line front end.

Subcommands:

    kinematics      closure angle <-> finger radius / jaw opening
    material-curve  sample a module's compression or bending response
    grasp           contacts, forces, and closure for a single-object scene
    pullout         extraction-resistance trace for a clamped probe
    multi           release schedule and timeline for a stacked-pair scene
    compare         sequential vs. multi-object transport cost
    sweep           re-run a scene stepping one numeric field

Results go to stdout (or ``--out``) as JSON or CSV.  Exit codes: 0 on
success, 1 when a stacked plan is infeasible, 2 for invalid scenes or
arguments.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ._version import __version__
from .demo import list_demo_scenes
from .mechanics import perturbed, sample_bending_curve, sample_compression_curve
from .planner import PlanError
from .scenario import (
    Scenario,
    ScenarioError,
    load_scenario,
    make_result_record,
    material_table,
    run_scenario,
    run_sweep,
    scenario_digest,
    write_csv,
    write_json,
)
from .transmission import (
    AngleRangeError,
    GripperConfig,
    OpeningRangeError,
    finger_radius,
    opening,
    opening_range,
    theta_for_opening,
)

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_INVALID = 2


def _add_output_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default="-", help="output file, '-' for stdout")
    parser.add_argument("--format", choices=("json", "csv"), default="json")


def _add_scene_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scene", required=True, help="scene YAML file")
    parser.add_argument(
        "--seed", type=int, default=None, help="sample material spread with this seed"
    )
    _add_output_args(parser)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="origrip",
        description="constant-force origami gripper: grasp mechanics and planning",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    kin = sub.add_parser("kinematics", help="closure angle vs. finger radius and opening")
    group = kin.add_mutually_exclusive_group(required=True)
    group.add_argument("--theta", type=float, help="closure angle, deg")
    group.add_argument("--opening", type=float, help="jaw opening to invert, mm")
    _add_output_args(kin)

    mat = sub.add_parser("material-curve", help="module force/torque response samples")
    mat.add_argument("--material", required=True, help="material name")
    mat.add_argument("--mode", choices=("compression", "bending"), default="compression")
    mat.add_argument("--samples", type=int, default=50)
    mat.add_argument("--seed", type=int, default=None, help="sample plateau spread with this seed")
    _add_output_args(mat)

    grasp_cmd = sub.add_parser("grasp", help="single-object contact and closure report")
    pull_cmd = sub.add_parser("pullout", help="extraction-resistance trace")
    for cmd in (grasp_cmd, pull_cmd):
        _add_scene_args(cmd)
        cmd.add_argument("--theta", type=float, default=None, help="override the scene's closure angle")
        cmd.add_argument("--material", default=None, help="override the scene's material by name")
        cmd.add_argument("--mu", type=float, default=None, help="override the scene's friction coefficient")
    pull_cmd.add_argument("--grid", type=float, default=None, help="override the lift grid step, mm")

    for name, blurb in (
        ("multi", "stacked-pair release schedule"),
        ("compare", "sequential vs. multi-object transport"),
    ):
        _add_scene_args(sub.add_parser(name, help=blurb))

    swp = sub.add_parser("sweep", help="step one numeric scene field")
    _add_scene_args(swp)
    swp.add_argument("--axis", required=True, help="dotted field path, e.g. theta or object.mass")
    swp.add_argument(
        "--values", required=True, help="comma list (30,45,60) or range lo:hi:step"
    )

    scenes = sub.add_parser("scenes", help="list bundled demo scenes")
    _add_output_args(scenes)

    return parser


def _emit(data, args) -> None:
    if args.out == "-":
        writer = write_json if args.format == "json" else write_csv
        writer(data, sys.stdout)
        return
    with Path(args.out).open("w") as fh:
        (write_json if args.format == "json" else write_csv)(data, fh)


def _parse_values(spec: str) -> list[float]:
    try:
        if ":" in spec:
            parts = [float(p) for p in spec.split(":")]
            if len(parts) != 3:
                raise ValueError
            lo, hi, step = parts
            if step <= 0 or hi < lo:
                raise ValueError
            values = []
            v = lo
            while v <= hi + 1e-9:
                values.append(round(v, 12))
                v += step
            return values
        return [float(p) for p in spec.split(",") if p.strip() != ""]
    except ValueError:
        raise ScenarioError(
            [f"--values: expected 'a,b,c' or 'lo:hi:step' with step > 0, got {spec!r}"]
        ) from None


def _load_kind(args, expected: str) -> tuple[Scenario, str]:
    scn = load_scenario(args.scene)
    if scn.kind != expected:
        raise ScenarioError(
            [f"{args.scene}: scene kind is {scn.kind!r} but this command needs {expected!r}"]
        )
    return scn, scenario_digest(args.scene)


def _run_kinematics(args) -> int:
    config = GripperConfig()
    if args.theta is not None:
        theta = args.theta
    else:
        theta = theta_for_opening(args.opening, config)
    lo, hi = opening_range(config)
    outputs = {
        "theta": theta,
        "finger_radius": finger_radius(theta, config.law),
        "opening": opening(theta, config),
        "opening_range": [lo, hi],
    }
    _emit({"version": __version__, "command": "kinematics", "outputs": outputs}, args)
    return EXIT_OK


def _run_material_curve(args) -> int:
    table = material_table()
    if args.material not in table:
        raise ScenarioError(
            [f"--material: unknown material {args.material!r}; known: {', '.join(sorted(table))}"]
        )
    if args.samples < 2:
        raise ScenarioError([f"--samples: need at least 2, got {args.samples}"])
    material = table[args.material]
    if args.seed is not None:
        material = perturbed(material, args.seed)
    if args.mode == "compression":
        strains, forces = sample_compression_curve(material, samples=args.samples)
        rows = [{"strain": float(s), "force": float(f)} for s, f in zip(strains, forces)]
    else:
        angles, torques = sample_bending_curve(material, samples=args.samples)
        rows = [{"angle": float(a), "torque": float(t)} for a, t in zip(angles, torques)]
    record = {
        "version": __version__,
        "command": "material-curve",
        "material": args.material,
        "mode": args.mode,
        "outputs": rows,
    }
    if args.seed is not None:
        record["seed"] = args.seed
    _emit(record, args)
    return EXIT_OK


def _apply_overrides(args, scn: Scenario) -> Scenario:
    import dataclasses

    changes: dict = {}
    if getattr(args, "theta", None) is not None:
        changes["theta"] = args.theta
    if getattr(args, "mu", None) is not None:
        if args.mu < 0:
            raise ScenarioError([f"--mu: must be non-negative, got {args.mu:g}"])
        changes["mu"] = args.mu
    if getattr(args, "material", None) is not None:
        table = material_table()
        if args.material not in table:
            raise ScenarioError(
                [f"--material: unknown material {args.material!r}; known: {', '.join(sorted(table))}"]
            )
        changes["material"] = table[args.material]
    if getattr(args, "grid", None) is not None:
        if args.grid <= 0:
            raise ScenarioError([f"--grid: must be positive, got {args.grid:g}"])
        changes["lift_step"] = args.grid
    return dataclasses.replace(scn, **changes) if changes else scn


def _run_scene_command(args, command: str, expected_kind: str) -> int:
    scn, digest = _load_kind(args, expected_kind)
    scn = _apply_overrides(args, scn)
    try:
        outputs = run_scenario(scn, seed=args.seed)
    except PlanError as exc:
        record = make_result_record(command, scn, {}, digest=digest, seed=args.seed)
        record["infeasible"] = True
        record["reason"] = exc.reason.value
        record["message"] = str(exc)
        _emit(record, args)
        return EXIT_INFEASIBLE
    record = make_result_record(command, scn, outputs, digest=digest, seed=args.seed)
    _emit(record, args)
    return EXIT_OK


def _run_sweep(args) -> int:
    scn = load_scenario(args.scene)
    values = _parse_values(args.values)
    if not values:
        raise ScenarioError(["--values: empty value list"])
    try:
        rows = run_sweep(scn, args.axis, values, seed=args.seed)
    except PlanError as exc:
        print(f"origrip: sweep point infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    record = {
        "version": __version__,
        "command": "sweep",
        "scenario": scn.name,
        "axis": args.axis,
        "digest": scenario_digest(args.scene),
        "outputs": rows,
    }
    if args.seed is not None:
        record["seed"] = args.seed
    _emit(record, args)
    return EXIT_OK


_SCENE_COMMANDS = {
    "grasp": "single_grasp",
    "pullout": "pullout",
    "multi": "stacked",
    "compare": "pickplace",
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "kinematics":
            return _run_kinematics(args)
        if args.command == "material-curve":
            return _run_material_curve(args)
        if args.command in _SCENE_COMMANDS:
            return _run_scene_command(args, args.command, _SCENE_COMMANDS[args.command])
        if args.command == "sweep":
            return _run_sweep(args)
        if args.command == "scenes":
            _emit(
                {
                    "version": __version__,
                    "command": "scenes",
                    "outputs": [{"name": n} for n in list_demo_scenes()],
                },
                args,
            )
            return EXIT_OK
        parser.error(f"unknown command {args.command!r}")
    except (ScenarioError, AngleRangeError, OpeningRangeError) as exc:
        print(f"origrip: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
