"""Scene files, result records, and parameter sweeps.

Scenes are YAML mappings with a ``kind`` discriminator:

``single_grasp``
    One object squeezed at a fixed closure angle; reports contacts, squeeze
    force, extraction capacity, and closure properties.
``pullout``
    A clamped probe with the gripper rising; reports the full
    extraction-resistance trace and its stage markers.
``stacked``
    Two stacked objects; reports the release schedule and a simulated
    carry/drop timeline.
``pickplace``
    Workcell geometry only; reports sequential vs. multi-object transport
    distance and time.

The loader validates strictly: unknown keys are rejected and all problems
are reported in one pass with dotted field paths.  Materials are looked up
by name in the built-in table, optionally extended by the YAML file named
in the ``ORIGRIP_MATERIALS`` environment variable and by a scene-level
``materials`` section (scene entries win).
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Iterable, Mapping, Sequence, Union

import yaml

from ._version import __version__
from .grasp import (
    closure_summary,
    pullout_capacity,
    pullout_trace,
    resolve_contacts,
    squeeze_force,
)
from .mechanics import BUILTIN_MATERIALS, MaterialModel, perturbed
from .planner import PlanError, StackedScene, make_stacked_scene, plan_stacked, simulate_plan
from .shapes import ObjectShape, Pose, ShapeKind, grasp_width
from .trajectory import CycleSpec, compare_cycles
from .transmission import GripperConfig, TransmissionLaw, opening

MATERIALS_ENV_VAR = "ORIGRIP_MATERIALS"

_SCENARIO_KINDS = ("single_grasp", "pullout", "stacked", "pickplace")
_SHAPE_SIZES = {
    "sphere": (1,),
    "cube": (1,),
    "cuboid": (3,),
    "cylinder": (2,),
    "curved_block": (2, 3),
}


class ScenarioError(ValueError):
    """Validation failure carrying every problem found, not just the first."""

    def __init__(self, errors: Sequence[str]):
        self.errors = list(errors)
        lines = "\n".join(f"  - {e}" for e in self.errors)
        super().__init__(f"invalid scenario ({len(self.errors)} problem(s)):\n{lines}")


# --------------------------------------------------------------------------
# loaded scenario types
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SingleGraspScenario:
    name: str
    config: GripperConfig
    material: MaterialModel
    mu: float
    torque_scale: float
    theta: float
    obj: ObjectShape

    kind = "single_grasp"


@dataclass(frozen=True)
class PulloutScenario:
    name: str
    config: GripperConfig
    material: MaterialModel
    mu: float
    torque_scale: float
    theta: float
    probe: ObjectShape
    lift_step: float

    kind = "pullout"


@dataclass(frozen=True)
class StackedScenario:
    name: str
    scene: StackedScene
    clearance: float

    kind = "stacked"


@dataclass(frozen=True)
class PickPlaceScenario:
    name: str
    spec: CycleSpec

    kind = "pickplace"


Scenario = Union[SingleGraspScenario, PulloutScenario, StackedScenario, PickPlaceScenario]


# --------------------------------------------------------------------------
# validation helpers
# --------------------------------------------------------------------------


class _Check:
    """Accumulates dotted-path error messages while pulling typed fields."""

    def __init__(self):
        self.errors: list[str] = []

    def fail(self, path: str, message: str) -> None:
        self.errors.append(f"{path}: {message}")

    def mapping(self, value: Any, path: str) -> dict | None:
        if not isinstance(value, Mapping):
            self.fail(path, f"expected a mapping, got {type(value).__name__}")
            return None
        return dict(value)

    def known_keys(self, data: Mapping, path: str, allowed: Iterable[str]) -> None:
        allowed = set(allowed)
        for key in data:
            if key not in allowed:
                self.fail(f"{path}.{key}" if path else str(key), "unknown key")

    def number(
        self,
        data: Mapping,
        key: str,
        path: str,
        default: float | None = None,
        required: bool = False,
        lo: float | None = None,
        hi: float | None = None,
        lo_open: bool = False,
    ) -> float | None:
        where = f"{path}.{key}" if path else key
        if key not in data:
            if required:
                self.fail(where, "required field is missing")
                return None
            return default
        value = data[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.fail(where, f"expected a number, got {type(value).__name__}")
            return None
        value = float(value)
        if lo is not None and (value <= lo if lo_open else value < lo):
            self.fail(where, f"must be {'>' if lo_open else '>='} {lo:g}, got {value:g}")
            return None
        if hi is not None and value > hi:
            self.fail(where, f"must be <= {hi:g}, got {value:g}")
            return None
        return value

    def integer(
        self,
        data: Mapping,
        key: str,
        path: str,
        default: int | None = None,
        choices: tuple[int, ...] | None = None,
    ) -> int | None:
        where = f"{path}.{key}" if path else key
        if key not in data:
            return default
        value = data[key]
        if isinstance(value, bool) or not isinstance(value, int):
            self.fail(where, f"expected an integer, got {type(value).__name__}")
            return None
        if choices is not None and value not in choices:
            self.fail(where, f"must be one of {sorted(choices)}, got {value}")
            return None
        return value

    def text(
        self,
        data: Mapping,
        key: str,
        path: str,
        default: str | None = None,
        required: bool = False,
        choices: tuple[str, ...] | None = None,
    ) -> str | None:
        where = f"{path}.{key}" if path else key
        if key not in data:
            if required:
                self.fail(where, "required field is missing")
                return None
            return default
        value = data[key]
        if not isinstance(value, str):
            self.fail(where, f"expected a string, got {type(value).__name__}")
            return None
        if choices is not None and value not in choices:
            self.fail(where, f"must be one of {list(choices)}, got {value!r}")
            return None
        return value

    def number_list(
        self,
        data: Mapping,
        key: str,
        path: str,
        lengths: tuple[int, ...],
        required: bool = False,
        default: tuple[float, ...] | None = None,
        positive: bool = False,
    ) -> tuple[float, ...] | None:
        where = f"{path}.{key}" if path else key
        if key not in data:
            if required:
                self.fail(where, "required field is missing")
                return None
            return default
        value = data[key]
        if not isinstance(value, (list, tuple)):
            self.fail(where, f"expected a list of numbers, got {type(value).__name__}")
            return None
        if len(value) not in lengths:
            counts = " or ".join(str(n) for n in lengths)
            self.fail(where, f"expected {counts} value(s), got {len(value)}")
            return None
        out = []
        for i, item in enumerate(value):
            if isinstance(item, bool) or not isinstance(item, (int, float)):
                self.fail(f"{where}[{i}]", f"expected a number, got {type(item).__name__}")
                return None
            if positive and item <= 0:
                self.fail(f"{where}[{i}]", f"must be > 0, got {item:g}")
                return None
            out.append(float(item))
        return tuple(out)

    def raise_if_failed(self) -> None:
        if self.errors:
            raise ScenarioError(self.errors)


def _build_gripper(chk: _Check, data: Mapping | None, path: str) -> GripperConfig:
    if data is None:
        return GripperConfig()
    section = chk.mapping(data, path)
    if section is None:
        return GripperConfig()
    chk.known_keys(
        section,
        path,
        (
            "finger_count",
            "module_offset",
            "module_levels",
            "module_height",
            "rest_depth",
            "panel_span",
            "bend_lever_arm",
            "curvature_threshold",
            "law",
        ),
    )
    law = TransmissionLaw()
    if "law" in section:
        law_map = chk.mapping(section["law"], f"{path}.law")
        if law_map is not None:
            chk.known_keys(law_map, f"{path}.law", ("r0", "slope", "theta_min", "theta_max"))
            r0 = chk.number(law_map, "r0", f"{path}.law", default=law.r0, lo=0.0, lo_open=True)
            slope = chk.number(law_map, "slope", f"{path}.law", default=law.slope, lo=0.0, lo_open=True)
            theta_min = chk.number(law_map, "theta_min", f"{path}.law", default=law.theta_min)
            theta_max = chk.number(law_map, "theta_max", f"{path}.law", default=law.theta_max)
            if None not in (r0, slope, theta_min, theta_max):
                try:
                    law = TransmissionLaw(r0=r0, slope=slope, theta_min=theta_min, theta_max=theta_max)
                except ValueError as exc:
                    chk.fail(f"{path}.law", str(exc))

    kwargs: dict[str, Any] = {"law": law}
    finger_count = chk.integer(section, "finger_count", path, choices=(2, 4))
    if finger_count is not None:
        kwargs["finger_count"] = finger_count
    for key in ("module_offset", "module_height", "rest_depth", "panel_span", "bend_lever_arm", "curvature_threshold"):
        value = chk.number(section, key, path, lo=0.0, lo_open=True)
        if value is not None:
            kwargs[key] = value
    levels = chk.number_list(section, "module_levels", path, lengths=(1, 2, 3, 4), positive=True)
    if levels is not None:
        kwargs["module_levels"] = levels
    try:
        return GripperConfig(**kwargs)
    except ValueError as exc:
        chk.fail(path, str(exc))
        return GripperConfig()


def _build_material_table(chk: _Check, section: Any, path: str) -> dict[str, MaterialModel]:
    table = dict(BUILTIN_MATERIALS)
    env_path = os.environ.get(MATERIALS_ENV_VAR)
    if env_path:
        try:
            raw = yaml.safe_load(Path(env_path).read_text())
        except (OSError, yaml.YAMLError) as exc:
            chk.fail("materials", f"cannot read {MATERIALS_ENV_VAR} file {env_path!r}: {exc}")
            raw = None
        if raw is not None:
            table.update(_parse_materials(chk, raw, f"{MATERIALS_ENV_VAR}"))
    if section is not None:
        table.update(_parse_materials(chk, section, path))
    return table


def _parse_materials(chk: _Check, data: Any, path: str) -> dict[str, MaterialModel]:
    out: dict[str, MaterialModel] = {}
    mapping = chk.mapping(data, path)
    if mapping is None:
        return out
    for name, body in mapping.items():
        where = f"{path}.{name}"
        entry = chk.mapping(body, where)
        if entry is None:
            continue
        chk.known_keys(
            entry,
            where,
            (
                "plateau_force",
                "force_band",
                "plateau_torque",
                "torque_band",
                "strain_range",
                "angle_range",
                "overload_stiffness",
            ),
        )
        pf = chk.number(entry, "plateau_force", where, required=True, lo=0.0, lo_open=True)
        fb = chk.number(entry, "force_band", where, default=0.05, lo=0.0, hi=0.2)
        pt = chk.number(entry, "plateau_torque", where, required=True, lo=0.0, lo_open=True)
        tb = chk.number(entry, "torque_band", where, default=0.05, lo=0.0, hi=0.2)
        strain = chk.number_list(entry, "strain_range", where, (2,), default=(0.1, 0.5), positive=True)
        angle = chk.number_list(entry, "angle_range", where, (2,), default=(5.0, 25.0), positive=True)
        stiff = chk.number(entry, "overload_stiffness", where, lo=0.0, lo_open=True)
        if None in (pf, fb, pt, tb) or strain is None or angle is None:
            continue
        try:
            out[str(name)] = MaterialModel(
                name=str(name),
                plateau_force=pf,
                force_band=fb,
                plateau_torque=pt,
                torque_band=tb,
                strain_lo=strain[0],
                strain_hi=strain[1],
                angle_lo=angle[0],
                angle_hi=angle[1],
                overload_stiffness=stiff,
            )
        except ValueError as exc:
            chk.fail(where, str(exc))
    return out


def _build_object(
    chk: _Check,
    data: Any,
    path: str,
    default_name: str,
    allow_z: bool,
) -> ObjectShape | None:
    entry = chk.mapping(data, path)
    if entry is None:
        return None
    allowed = ["shape", "size", "mass", "name", "yaw"]
    if allow_z:
        allowed.append("z")
    chk.known_keys(entry, path, allowed)
    shape = chk.text(entry, "shape", path, required=True, choices=tuple(_SHAPE_SIZES))
    if shape is None:
        return None
    size = chk.number_list(entry, "size", path, _SHAPE_SIZES[shape], required=True, positive=True)
    mass = chk.number(entry, "mass", path, default=0.0, lo=0.0)
    name = chk.text(entry, "name", path, default=default_name)
    yaw = chk.number(entry, "yaw", path, default=0.0)
    z = chk.number(entry, "z", path, default=0.0) if allow_z else 0.0
    if size is None or mass is None or yaw is None or z is None:
        return None
    try:
        return ObjectShape(
            kind=ShapeKind(shape),
            dims=size,
            mass=mass,
            name=name or default_name,
            pose=Pose(z=z, yaw=yaw),
        )
    except ValueError as exc:
        chk.fail(path, str(exc))
        return None


def _pick_material(
    chk: _Check, data: Mapping, table: Mapping[str, MaterialModel], path: str = ""
) -> MaterialModel | None:
    name = chk.text(data, "material", path, required=True)
    if name is None:
        return None
    if name not in table:
        known = ", ".join(sorted(table))
        chk.fail("material" if not path else f"{path}.material", f"unknown material {name!r}; known: {known}")
        return None
    return table[name]


# --------------------------------------------------------------------------
# loading
# --------------------------------------------------------------------------


def parse_scenario(data: Any, source: str = "<dict>") -> Scenario:
    """Validate a raw mapping and assemble the typed scenario."""
    chk = _Check()
    root = chk.mapping(data, source if source != "<dict>" else "scenario")
    if root is None:
        chk.raise_if_failed()
    kind = chk.text(root, "kind", "", required=True, choices=_SCENARIO_KINDS)
    if kind is None:
        chk.raise_if_failed()

    common = ["kind", "name", "gripper", "materials"]
    mech = ["material", "mu", "torque_scale"]
    default_name = Path(source).stem if source not in ("<dict>", "") else "scenario"
    name = chk.text(root, "name", "", default=default_name) or default_name

    if kind == "single_grasp":
        chk.known_keys(root, "", common + mech + ["theta", "object"])
        config = _build_gripper(chk, root.get("gripper"), "gripper")
        table = _build_material_table(chk, root.get("materials"), "materials")
        material = _pick_material(chk, root, table)
        mu = chk.number(root, "mu", "", default=0.5, lo=0.0)
        torque_scale = chk.number(root, "torque_scale", "", default=1.0, lo=0.0, lo_open=True)
        theta = chk.number(
            root, "theta", "", required=True, lo=config.law.theta_min, hi=config.law.theta_max
        )
        obj = _build_object(chk, root.get("object"), "object", "object", allow_z=True) \
            if "object" in root else (chk.fail("object", "required field is missing") or None)
        chk.raise_if_failed()
        return SingleGraspScenario(name, config, material, mu, torque_scale, theta, obj)

    if kind == "pullout":
        chk.known_keys(root, "", common + mech + ["theta", "object", "lift_step"])
        config = _build_gripper(chk, root.get("gripper"), "gripper")
        table = _build_material_table(chk, root.get("materials"), "materials")
        material = _pick_material(chk, root, table)
        mu = chk.number(root, "mu", "", default=0.5, lo=0.0)
        torque_scale = chk.number(root, "torque_scale", "", default=1.0, lo=0.0, lo_open=True)
        theta = chk.number(
            root, "theta", "", required=True, lo=config.law.theta_min, hi=config.law.theta_max
        )
        lift_step = chk.number(root, "lift_step", "", default=0.5, lo=0.0, lo_open=True)
        probe = _build_object(chk, root.get("object"), "object", "probe", allow_z=True) \
            if "object" in root else (chk.fail("object", "required field is missing") or None)
        chk.raise_if_failed()
        return PulloutScenario(name, config, material, mu, torque_scale, theta, probe, lift_step)

    if kind == "stacked":
        chk.known_keys(root, "", common + mech + ["top", "bottom", "clearance", "safety"])
        config = _build_gripper(chk, root.get("gripper"), "gripper")
        table = _build_material_table(chk, root.get("materials"), "materials")
        material = _pick_material(chk, root, table)
        mu = chk.number(root, "mu", "", default=0.5, lo=0.0)
        torque_scale = chk.number(root, "torque_scale", "", default=1.0, lo=0.0, lo_open=True)
        clearance = chk.number(root, "clearance", "", default=0.0, lo=0.0)
        safety = chk.number(root, "safety", "", default=1.2, lo=1.0)
        top = _build_object(chk, root.get("top"), "top", "top", allow_z=False) \
            if "top" in root else (chk.fail("top", "required field is missing") or None)
        bottom = _build_object(chk, root.get("bottom"), "bottom", "bottom", allow_z=False) \
            if "bottom" in root else (chk.fail("bottom", "required field is missing") or None)
        chk.raise_if_failed()
        scene = make_stacked_scene(
            top, bottom, clearance, config, material, mu, safety, torque_scale
        )
        return StackedScenario(name, scene, clearance)

    # pickplace
    chk.known_keys(root, "", common + ["cycle"])
    cycle_map = chk.mapping(root.get("cycle"), "cycle") if "cycle" in root else None
    if "cycle" not in root:
        chk.fail("cycle", "required field is missing")
    spec = CycleSpec()
    if cycle_map is not None:
        chk.known_keys(
            cycle_map,
            "cycle",
            (
                "pick",
                "place_bottom",
                "place_top",
                "approach_height",
                "descend_speed",
                "ascend_speed",
                "travel_speed",
                "grasp_dwell",
                "release_dwell",
            ),
        )
        kwargs: dict[str, Any] = {}
        for site in ("pick", "place_bottom", "place_top"):
            xy = chk.number_list(cycle_map, site, "cycle", (2,))
            if xy is not None:
                kwargs[site] = xy
        for key, lo_open in (
            ("approach_height", True),
            ("descend_speed", True),
            ("ascend_speed", True),
            ("travel_speed", True),
            ("grasp_dwell", False),
            ("release_dwell", False),
        ):
            value = chk.number(cycle_map, key, "cycle", lo=0.0, lo_open=lo_open)
            if value is not None:
                kwargs[key] = value
        try:
            spec = CycleSpec(**kwargs)
        except ValueError as exc:
            chk.fail("cycle", str(exc))
    chk.raise_if_failed()
    return PickPlaceScenario(name, spec)


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        raw = yaml.safe_load(path.read_text())
    except OSError as exc:
        raise ScenarioError([f"{path}: cannot read file: {exc}"]) from exc
    except yaml.YAMLError as exc:
        raise ScenarioError([f"{path}: not valid YAML: {exc}"]) from exc
    return parse_scenario(raw, source=str(path))


def scenario_digest(path: str | Path) -> str:
    """Stable identity of a scene file (sha256 of its bytes)."""
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


# --------------------------------------------------------------------------
# serialization back to plain data
# --------------------------------------------------------------------------


def _gripper_dict(config: GripperConfig) -> dict:
    return {
        "finger_count": config.finger_count,
        "module_offset": config.module_offset,
        "module_levels": list(config.module_levels),
        "module_height": config.module_height,
        "rest_depth": config.rest_depth,
        "panel_span": config.panel_span,
        "bend_lever_arm": config.bend_lever_arm,
        "curvature_threshold": config.curvature_threshold,
        "law": {
            "r0": config.law.r0,
            "slope": config.law.slope,
            "theta_min": config.law.theta_min,
            "theta_max": config.law.theta_max,
        },
    }


def _material_dict(material: MaterialModel) -> dict:
    return {
        "plateau_force": material.plateau_force,
        "force_band": material.force_band,
        "plateau_torque": material.plateau_torque,
        "torque_band": material.torque_band,
        "strain_range": [material.strain_lo, material.strain_hi],
        "angle_range": [material.angle_lo, material.angle_hi],
        "overload_stiffness": material.overload_stiffness,
    }


def _object_dict(obj: ObjectShape, with_z: bool) -> dict:
    out: dict[str, Any] = {"shape": obj.kind.value, "size": list(obj.dims), "mass": obj.mass}
    if obj.name:
        out["name"] = obj.name
    if obj.pose.yaw:
        out["yaw"] = obj.pose.yaw
    if with_z and obj.pose.z:
        out["z"] = obj.pose.z
    return out


def scenario_to_dict(scn: Scenario) -> dict:
    """Plain mapping that parses back to an equivalent scenario."""
    if isinstance(scn, SingleGraspScenario):
        return {
            "kind": "single_grasp",
            "name": scn.name,
            "gripper": _gripper_dict(scn.config),
            "materials": {scn.material.name: _material_dict(scn.material)},
            "material": scn.material.name,
            "mu": scn.mu,
            "torque_scale": scn.torque_scale,
            "theta": scn.theta,
            "object": _object_dict(scn.obj, with_z=True),
        }
    if isinstance(scn, PulloutScenario):
        return {
            "kind": "pullout",
            "name": scn.name,
            "gripper": _gripper_dict(scn.config),
            "materials": {scn.material.name: _material_dict(scn.material)},
            "material": scn.material.name,
            "mu": scn.mu,
            "torque_scale": scn.torque_scale,
            "theta": scn.theta,
            "lift_step": scn.lift_step,
            "object": _object_dict(scn.probe, with_z=True),
        }
    if isinstance(scn, StackedScenario):
        scene = scn.scene
        return {
            "kind": "stacked",
            "name": scn.name,
            "gripper": _gripper_dict(scene.config),
            "materials": {scene.material.name: _material_dict(scene.material)},
            "material": scene.material.name,
            "mu": scene.mu,
            "torque_scale": scene.torque_scale,
            "clearance": scn.clearance,
            "safety": scene.safety,
            "top": _object_dict(scene.top, with_z=False),
            "bottom": _object_dict(scene.bottom, with_z=False),
        }
    if isinstance(scn, PickPlaceScenario):
        spec = scn.spec
        return {
            "kind": "pickplace",
            "name": scn.name,
            "cycle": {
                "pick": list(spec.pick),
                "place_bottom": list(spec.place_bottom),
                "place_top": list(spec.place_top),
                "approach_height": spec.approach_height,
                "descend_speed": spec.descend_speed,
                "ascend_speed": spec.ascend_speed,
                "travel_speed": spec.travel_speed,
                "grasp_dwell": spec.grasp_dwell,
                "release_dwell": spec.release_dwell,
            },
        }
    raise TypeError(f"not a scenario: {type(scn).__name__}")


def save_scenario(scn: Scenario, path: str | Path) -> None:
    Path(path).write_text(yaml.safe_dump(scenario_to_dict(scn), sort_keys=True))


# --------------------------------------------------------------------------
# running
# --------------------------------------------------------------------------


def _maybe_perturbed(material: MaterialModel, seed: int | None) -> MaterialModel:
    return material if seed is None else perturbed(material, seed)


def run_single_grasp(scn: SingleGraspScenario, seed: int | None = None) -> dict:
    material = _maybe_perturbed(scn.material, seed)
    contacts = resolve_contacts(
        scn.theta, scn.obj, scn.config, material, scn.mu, scn.torque_scale
    )
    out: dict[str, Any] = {
        "theta": scn.theta,
        "opening": opening(scn.theta, scn.config),
        "object_width": grasp_width(scn.obj),
        "grasp_mode": contacts.grasp_mode.value,
        "contact_count": len(contacts),
        "squeeze_force": squeeze_force(contacts),
        "side_squeeze_force": squeeze_force(contacts, finger_index=0),
        "pullout_capacity": pullout_capacity(contacts),
        "contacts": [
            {
                "finger": rec.finger_index,
                "level": rec.level,
                "mode": rec.mode.value,
                "penetration": rec.penetration,
                "bend_angle": rec.bend_angle,
                "normal_force": rec.normal_force,
                "inclination": rec.inclination,
                "engagement": rec.engagement,
                "overcompressed": rec.overcompressed,
                "overfolded": rec.overfolded,
            }
            for rec in contacts.records
        ],
    }
    if len(contacts) >= 2:
        closure = closure_summary(contacts, scn.obj, scn.config)
        out["force_closure"] = closure.force_closure
        out["closure_margin"] = closure.margin
        out["form_closure"] = closure.form_closure
        out["wrap_coverage"] = closure.wrap_angle
    else:
        out["force_closure"] = False
        out["closure_margin"] = 0.0
        out["form_closure"] = None
        out["wrap_coverage"] = None
    return out


def run_pullout(scn: PulloutScenario, seed: int | None = None) -> dict:
    from .grasp import default_lift_grid

    material = _maybe_perturbed(scn.material, seed)
    grid = default_lift_grid(scn.probe, scn.config, step=scn.lift_step)
    trace = pullout_trace(
        scn.theta, scn.probe, scn.config, material, scn.mu, grid, scn.torque_scale
    )
    return {
        "theta": scn.theta,
        "opening": opening(scn.theta, scn.config),
        "capacity": float(trace.forces[0]),
        "peak_force": float(trace.forces.max()),
        "markers": trace.markers,
        "trace": {
            "lift": [float(v) for v in trace.lifts],
            "force": [float(v) for v in trace.forces],
        },
    }


def run_stacked(scn: StackedScenario, seed: int | None = None) -> dict:
    scene = scn.scene
    if seed is not None:
        scene = StackedScene(
            top=scene.top,
            bottom=scene.bottom,
            config=scene.config,
            material=perturbed(scene.material, seed),
            mu=scene.mu,
            safety=scene.safety,
            torque_scale=scene.torque_scale,
        )
    plan = plan_stacked(scene)
    stages = simulate_plan(scene, plan)
    return {
        "plan": {
            "theta_grasp": plan.theta_grasp,
            "theta_release_bottom": plan.theta_release_bottom,
            "theta_release_top": plan.theta_release_top,
            "grasp_window": list(plan.grasp_window),
            "release_window": list(plan.release_window),
            "top_window": [plan.top_window.theta_lo, plan.top_window.theta_hi],
            "bottom_window": [plan.bottom_window.theta_lo, plan.bottom_window.theta_hi],
            "top_limiting_factor": plan.top_window.limiting_factor.value,
            "bottom_limiting_factor": plan.bottom_window.limiting_factor.value,
        },
        "stages": [
            {
                "stage": s.stage,
                "theta": s.theta,
                "top_held": s.top_held,
                "bottom_held": s.bottom_held,
            }
            for s in stages
        ],
    }


def run_pickplace(scn: PickPlaceScenario, seed: int | None = None) -> dict:
    result = compare_cycles(scn.spec)
    return {
        "sequential": {
            "distance": result.sequential.path_distance,
            "time": result.sequential.process_time,
        },
        "multiobject": {
            "distance": result.multiobject.path_distance,
            "time": result.multiobject.process_time,
        },
        "distance_saved": result.distance_saved,
        "time_saved": result.time_saved,
        "distance_reduction": result.distance_reduction,
        "time_reduction": result.time_reduction,
    }


_RUNNERS: dict[str, Callable[..., dict]] = {
    "single_grasp": run_single_grasp,
    "pullout": run_pullout,
    "stacked": run_stacked,
    "pickplace": run_pickplace,
}


def run_scenario(scn: Scenario, seed: int | None = None) -> dict:
    return _RUNNERS[scn.kind](scn, seed=seed)


def make_result_record(
    command: str, scn: Scenario, outputs: dict, digest: str | None = None, seed: int | None = None
) -> dict:
    record = {
        "version": __version__,
        "command": command,
        "scenario": scn.name,
        "kind": scn.kind,
        "outputs": outputs,
    }
    if digest is not None:
        record["digest"] = digest
    if seed is not None:
        record["seed"] = seed
    return record


# --------------------------------------------------------------------------
# sweeps
# --------------------------------------------------------------------------


def run_sweep(
    scn: Scenario, axis: str, values: Sequence[float], seed: int | None = None
) -> list[dict]:
    """Re-run a scenario with one numeric field stepped through ``values``.

    ``axis`` is a dotted path into the scene mapping (for example ``theta``,
    ``mu``, ``object.mass``, or ``cycle.travel_speed``).  Rows keep the
    input order; outputs are flattened to scalar columns.
    """
    base = scenario_to_dict(scn)
    _resolve_axis(base, axis)  # validate once up front
    rows: list[dict] = []
    for value in values:
        data = json.loads(json.dumps(base))  # deep copy of plain data
        parent, leaf = _resolve_axis(data, axis)
        parent[leaf] = float(value)
        variant = parse_scenario(data, source=f"<sweep {axis}={value:g}>")
        outputs = run_scenario(variant, seed=seed)
        row: dict[str, Any] = {axis: float(value)}
        _flatten("", outputs, row)
        rows.append(row)
    return rows


def _resolve_axis(data: dict, axis: str) -> tuple[dict, str]:
    parts = axis.split(".")
    node: Any = data
    for i, part in enumerate(parts[:-1]):
        if not isinstance(node, dict) or part not in node:
            raise ScenarioError([f"{axis}: no such field (stuck at {'.'.join(parts[: i + 1])})"])
        node = node[part]
    leaf = parts[-1]
    if not isinstance(node, dict) or leaf not in node:
        raise ScenarioError([f"{axis}: no such field"])
    if isinstance(node[leaf], bool) or not isinstance(node[leaf], (int, float)):
        raise ScenarioError([f"{axis}: not a numeric field"])
    return node, leaf


def _flatten(prefix: str, value: Any, out: dict) -> None:
    if isinstance(value, dict):
        for key, item in value.items():
            _flatten(f"{prefix}.{key}" if prefix else str(key), item, out)
    elif isinstance(value, (list, tuple)):
        return  # tables and traces have their own output paths
    elif value is None or isinstance(value, (bool, int, float, str)):
        if prefix:
            out[prefix] = value


# --------------------------------------------------------------------------
# output writers
# --------------------------------------------------------------------------


def _fmt(value: Any) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        return f"{value:.6g}"
    return value


def write_json(data: Any, stream: io.TextIOBase) -> None:
    json.dump(data, stream, indent=2, sort_keys=True)
    stream.write("\n")


def write_csv(data: Any, stream: io.TextIOBase) -> None:
    """Tabular form: row lists as a table, traces as lift/force columns,
    anything else as flattened key,value pairs."""
    writer = csv.writer(stream, lineterminator="\n")
    body = data.get("outputs", data) if isinstance(data, dict) else data
    if isinstance(body, list) and body and all(isinstance(r, dict) for r in body):
        header: list[str] = []
        for row in body:
            for key in row:
                if key not in header:
                    header.append(key)
        writer.writerow(header)
        for row in body:
            writer.writerow([_fmt(row.get(key)) for key in header])
        return
    if isinstance(body, dict):
        trace = body.get("trace")
        if isinstance(trace, dict) and "lift" in trace and "force" in trace:
            writer.writerow(["lift", "force"])
            for lift, force in zip(trace["lift"], trace["force"]):
                writer.writerow([_fmt(lift), _fmt(force)])
            return
        flat: dict[str, Any] = {}
        _flatten("", data, flat)
        writer.writerow(["field", "value"])
        for key in flat:
            writer.writerow([key, _fmt(flat[key])])
        return
    raise TypeError("cannot render this result as CSV")


def material_table() -> dict[str, MaterialModel]:
    """Built-in materials plus any defined via the environment override."""
    chk = _Check()
    table = _build_material_table(chk, None, "materials")
    chk.raise_if_failed()
    return table
