"""Quasi-static grasp mechanics: contact resolution, closure tests, pull-out.

Contact model
-------------
The gripper squeezes an object centered in the workspace.  At each module
level whose face overlaps the object's vertical span, the per-side
penetration is half the difference between the local object width and the
aperture.  Flat faces load the module in compression; convexly curved
surfaces (cross-section radius at most ``curvature_threshold * panel_span``)
make the face fold around the object instead, loading it in bending.

Wrap geometry for a bending contact on a cross-section of radius R with
penetration p:
    patch half-width   s = sqrt(2 R p - p^2), capped by the panel half-span
    patch edge angle   alpha = asin(s / R)
    panel bend angle   alpha / 2   (mean surface slope over the patch)

The contact ``inclination`` is the out-of-plane tilt of the contact normal:
zero on prismatic sides, and the vertical-profile slope at the contact
height on barrel-like objects when the face presses below the equator (the
wrapped face hooks under the widest section, resisting extraction).

Pull-out capacity sums mu * Fn * cos(inclination) + Fn * sin(inclination)
over the contact set.  Pull-out traces re-resolve the contacts while the
gripper rises: faces slide toward or past the narrowing sections and then
off the top of the object, which reproduces flat plateaus with discrete
drops for parallel grasps and a smoothly varying curve for enveloping ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, QhullError

from .mechanics import (
    MaterialModel,
    bending_contact_force,
    bending_state,
    compression_state,
    effective_strain,
)
from .shapes import (
    ObjectShape,
    bounding_radius,
    equator_z,
    horizontal_radius,
    local_width,
    vertical_profile_radius,
    z_span,
)
from .transmission import GripperConfig, finger_bearings, opening

_MAX_INCLINATION = 89.9  # deg; keeps sin/cos well-conditioned at deep hooks


class GraspMode(Enum):
    PARALLEL = "parallel"
    V_ENVELOPING = "v_enveloping"


class ContactMode(Enum):
    COMPRESSION = "compression"
    BENDING = "bending"


# --------------------------------------------------------------------------
# contact records
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ContactRecord:
    finger_index: int
    level: int                       # 0 = bottom module, upward
    mode: ContactMode
    penetration: float               # mm
    bend_angle: float | None         # deg, bending contacts only
    normal_force: float              # N
    normal: tuple[float, float]      # unit in-plane direction, into the object
    position: tuple[float, float]    # contact point in the grasp plane, mm
    inclination: float               # deg, out-of-plane tilt of the normal
    mu: float
    engagement: float                # fraction of the module face on the object
    overcompressed: bool
    overfolded: bool


@dataclass(frozen=True)
class ContactSet:
    records: tuple[ContactRecord, ...]
    grasp_mode: GraspMode
    theta: float
    char_radius: float               # torque normalization length, mm

    def __len__(self) -> int:
        return len(self.records)

    def finger(self, index: int) -> "ContactSet":
        """Sub-set of the records belonging to one finger."""
        kept = tuple(r for r in self.records if r.finger_index == index)
        return ContactSet(kept, self.grasp_mode, self.theta, self.char_radius)


@dataclass(frozen=True)
class ClosureResult:
    force_closure: bool
    form_closure: bool | None        # None when not applicable (parallel mode)
    margin: float
    wrap_angle: float | None         # deg of cross-section covered by patches


@dataclass(frozen=True)
class LiftResult:
    holds: bool
    capacity: float                  # N
    weight: float                    # N
    margin: float                    # capacity - weight, N


# --------------------------------------------------------------------------
# mode selection and contact resolution
# --------------------------------------------------------------------------


def grasp_mode(obj: ObjectShape, config: GripperConfig | None = None) -> GraspMode:
    """Parallel for flat faces, enveloping for tightly curved ones."""
    config = config or GripperConfig()
    r_h = horizontal_radius(obj, equator_z(obj))
    if r_h is None:
        return GraspMode.PARALLEL
    if r_h <= config.curvature_threshold * config.panel_span:
        return GraspMode.V_ENVELOPING
    return GraspMode.PARALLEL


def _wrap_geometry(penetration: float, r_h: float, half_span: float) -> tuple[float, float]:
    """(bend angle, patch edge angle) in deg for a wrapped contact."""
    pen = min(penetration, r_h)  # cannot sink past the section center
    s_patch = math.sqrt(max(0.0, 2.0 * r_h * pen - pen * pen))
    s_eff = min(s_patch, half_span)
    edge = math.degrees(math.asin(min(1.0, s_eff / r_h)))
    return edge / 2.0, edge


def _hook_angle(obj: ObjectShape, z_contact: float) -> float:
    """Downward tilt (deg) of the contact normal below the widest section."""
    r_v = vertical_profile_radius(obj)
    if r_v is None:
        return 0.0
    depth = equator_z(obj) - z_contact
    if depth <= 0.0:
        return 0.0
    return min(_MAX_INCLINATION, math.degrees(math.asin(min(1.0, depth / r_v))))


def _level_contacts(
    theta: float,
    obj: ObjectShape,
    config: GripperConfig,
    material: MaterialModel,
    mu: float,
    lift: float,
    torque_scale: float,
) -> list[ContactRecord]:
    """Contact records with the gripper raised by ``lift`` mm."""
    if mu < 0.0:
        raise ValueError(f"mu must be non-negative, got {mu:g}")
    aperture = opening(theta, config)
    mode = grasp_mode(obj, config)
    span_lo, span_hi = z_span(obj)
    half_face = config.module_height / 2.0
    half_span = config.panel_span / 2.0
    records: list[ContactRecord] = []

    for level, level_z in enumerate(config.module_levels):
        face_lo = level_z - half_face + lift
        face_hi = level_z + half_face + lift
        overlap_lo = max(face_lo, span_lo)
        overlap_hi = min(face_hi, span_hi)
        if overlap_hi <= overlap_lo:
            continue
        engagement = (overlap_hi - overlap_lo) / config.module_height
        # The face presses hardest at the widest covered section.
        z_contact = min(max(equator_z(obj), overlap_lo), overlap_hi)

        for finger, bearing in enumerate(finger_bearings(config)):
            width = local_width(obj, bearing, z_contact)
            pen = (width - aperture) / 2.0
            if pen <= 0.0:
                continue

            incl = _hook_angle(obj, z_contact)
            if mode is GraspMode.V_ENVELOPING:
                r_h = horizontal_radius(obj, z_contact)
                bend, _ = _wrap_geometry(pen, r_h, half_span)
                state = bending_state(bend, material)
                force = engagement * bending_contact_force(
                    bend, config.bend_lever_arm, material, torque_scale
                )
                overfolded = state.overfolded
                overcompressed = False
                contact_mode = ContactMode.BENDING
                bend_angle: float | None = bend
            else:
                strain = effective_strain(pen, config.rest_depth)
                state = compression_state(strain, material)
                force = engagement * state.force
                overcompressed = state.overcompressed
                overfolded = False
                contact_mode = ContactMode.COMPRESSION
                bend_angle = None

            rad = math.radians(bearing)
            outward = (math.cos(rad), math.sin(rad))
            records.append(
                ContactRecord(
                    finger_index=finger,
                    level=level,
                    mode=contact_mode,
                    penetration=pen,
                    bend_angle=bend_angle,
                    normal_force=force,
                    normal=(-outward[0], -outward[1]),
                    position=(width / 2.0 * outward[0], width / 2.0 * outward[1]),
                    inclination=incl,
                    mu=mu,
                    engagement=engagement,
                    overcompressed=overcompressed,
                    overfolded=overfolded,
                )
            )
    return records


def resolve_contacts(
    theta: float,
    obj: ObjectShape,
    config: GripperConfig | None = None,
    material: MaterialModel | None = None,
    mu: float = 0.5,
    torque_scale: float = 1.0,
) -> ContactSet:
    """All module contacts on an object centered in the workspace."""
    from .mechanics import TPU95A

    config = config or GripperConfig()
    material = material or TPU95A
    records = _level_contacts(theta, obj, config, material, mu, 0.0, torque_scale)
    return ContactSet(
        records=tuple(records),
        grasp_mode=grasp_mode(obj, config),
        theta=theta,
        char_radius=bounding_radius(obj),
    )


# --------------------------------------------------------------------------
# wrench-space closure
# --------------------------------------------------------------------------


def contact_wrench_primitives(contacts: ContactSet) -> np.ndarray:
    """Friction-cone edge wrenches, one row per primitive: (fx, fy, tau).

    Each contact contributes the two planar cone edges at +-atan(mu) about
    its normal (the edges coincide when mu = 0).  Torque is taken about the
    object centroid and normalized by the bounding-circle radius so all
    three wrench coordinates share a force scale.
    """
    if len(contacts) == 0:
        raise ValueError("contact set is empty")
    rows = []
    r_char = contacts.char_radius
    for rec in contacts.records:
        n = np.array(rec.normal)
        t = np.array([-n[1], n[0]])
        p = np.array(rec.position)
        for sign in (1.0, -1.0):
            f = rec.normal_force * (n + sign * rec.mu * t)
            tau = (p[0] * f[1] - p[1] * f[0]) / r_char
            rows.append([f[0], f[1], tau])
    return np.array(rows)


@dataclass(frozen=True)
class ForceClosure:
    closed: bool
    margin: float


def is_force_closure(primitives: np.ndarray) -> ForceClosure:
    """Strict origin-in-hull test in wrench space.

    Decision by linear program: the origin is interior to the convex cone of
    the primitives iff some positive combination (all weights >= 1) sums to
    zero and the primitives span the full wrench space.  The margin is the
    distance from the origin to the hull boundary, 0 when not closed.
    """
    primitives = np.asarray(primitives, dtype=float)
    if primitives.ndim != 2 or primitives.shape[1] != 3 or primitives.shape[0] < 2:
        raise ValueError("need at least two wrench primitives of dimension 3")
    if np.linalg.matrix_rank(primitives, tol=1e-9) < 3:
        return ForceClosure(False, 0.0)
    m = primitives.shape[0]
    lp = linprog(
        c=np.ones(m),
        A_eq=primitives.T,
        b_eq=np.zeros(3),
        bounds=[(1.0, None)] * m,
        method="highs",
    )
    if not lp.success:
        return ForceClosure(False, 0.0)
    try:
        hull = ConvexHull(primitives)
    except QhullError:
        return ForceClosure(False, 0.0)
    # facet equations are a.x + d <= 0 inside; distance from origin = -d
    margin = float(-np.max(hull.equations[:, -1]))
    if margin <= 0.0:
        return ForceClosure(False, 0.0)
    return ForceClosure(True, margin)


def is_form_closure(
    contacts: ContactSet,
    obj: ObjectShape,
    config: GripperConfig | None = None,
    slip_margin: float = 15.0,
) -> tuple[bool, float]:
    """Frictionless geometric envelopment test for enveloping grasps.

    Accumulates the angular sectors of the cross-section covered by wrap
    patches; the grasp is form closed when coverage reaches
    180 deg + 2 * slip_margin.  Parallel grasps have no wrap and are a
    domain error.
    """
    config = config or GripperConfig()
    if contacts.grasp_mode is not GraspMode.V_ENVELOPING:
        raise ValueError("form closure is defined only for enveloping grasps")
    half_span = config.panel_span / 2.0
    bearings = finger_bearings(config)
    intervals: list[tuple[float, float]] = []
    for rec in contacts.records:
        if rec.mode is not ContactMode.BENDING:
            continue
        z = equator_z(obj)  # coverage assessed on the widest section
        r_h = horizontal_radius(obj, z)
        if r_h is None:
            continue
        _, edge = _wrap_geometry(rec.penetration, r_h, half_span)
        center = bearings[rec.finger_index]
        intervals.append((center - edge, center + edge))
    coverage = _circular_union_deg(intervals)
    threshold = 180.0 + 2.0 * slip_margin
    return coverage >= threshold, coverage


def _circular_union_deg(intervals: Iterable[tuple[float, float]]) -> float:
    """Total angular measure (deg) of a union of circle arcs."""
    spans = []
    for lo, hi in intervals:
        if hi - lo >= 360.0:
            return 360.0
        lo %= 360.0
        hi = lo + (hi - lo) % 360.0 if hi != lo else lo
        width = (hi - lo) % 360.0
        if width == 0.0:
            continue
        if lo + width <= 360.0:
            spans.append((lo, lo + width))
        else:
            spans.append((lo, 360.0))
            spans.append((0.0, (lo + width) % 360.0))
    if not spans:
        return 0.0
    spans.sort()
    total = 0.0
    cur_lo, cur_hi = spans[0]
    for lo, hi in spans[1:]:
        if lo > cur_hi:
            total += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
        else:
            cur_hi = max(cur_hi, hi)
    total += cur_hi - cur_lo
    return total


def closure_summary(
    contacts: ContactSet,
    obj: ObjectShape,
    config: GripperConfig | None = None,
    slip_margin: float = 15.0,
) -> ClosureResult:
    """Force closure always; form closure only where it applies."""
    fc = (
        is_force_closure(contact_wrench_primitives(contacts))
        if len(contacts) >= 2
        else ForceClosure(False, 0.0)
    )
    if contacts.grasp_mode is GraspMode.V_ENVELOPING:
        form, wrap = is_form_closure(contacts, obj, config, slip_margin)
        return ClosureResult(fc.closed, form, fc.margin, wrap)
    return ClosureResult(fc.closed, None, fc.margin, None)


# --------------------------------------------------------------------------
# pull-out resistance and lifting
# --------------------------------------------------------------------------


def pullout_capacity(contacts: ContactSet | Sequence[ContactRecord]) -> float:
    """Maximum vertical extraction resistance of a contact set, N."""
    records = contacts.records if isinstance(contacts, ContactSet) else tuple(contacts)
    total = 0.0
    for rec in records:
        incl = math.radians(rec.inclination)
        total += rec.mu * rec.normal_force * math.cos(incl) + rec.normal_force * math.sin(incl)
    return total


def squeeze_force(contacts: ContactSet, finger_index: int | None = None) -> float:
    """Sum of in-plane normal force components, optionally for one finger.

    This is what a probe sensor reads while being squeezed: the horizontal
    push of one side's modules.
    """
    records = (
        contacts.records
        if finger_index is None
        else contacts.finger(finger_index).records
    )
    return sum(r.normal_force * math.cos(math.radians(r.inclination)) for r in records)


def lift_check(
    contacts: ContactSet,
    obj: ObjectShape,
    gravity: float = 9.81,
    safety: float = 1.0,
) -> LiftResult:
    """Does the grasp carry the object's weight with the given safety factor?"""
    if gravity <= 0.0:
        raise ValueError(f"gravity must be positive, got {gravity:g}")
    if safety < 1.0:
        raise ValueError(f"safety factor must be >= 1, got {safety:g}")
    capacity = pullout_capacity(contacts)
    weight = obj.mass * gravity
    return LiftResult(
        holds=capacity >= safety * weight,
        capacity=capacity,
        weight=weight,
        margin=capacity - weight,
    )


@dataclass(frozen=True)
class PulloutTrace:
    lifts: np.ndarray                # mm, ascending
    forces: np.ndarray               # N
    t1: float                        # lift start
    t2: float                        # top face starts to leave the object
    t3: float                        # top face fully above the object
    t4: float                        # bottom face fully above the object

    @property
    def markers(self) -> dict[str, float]:
        return {"t1": self.t1, "t2": self.t2, "t3": self.t3, "t4": self.t4}

    def stage_of(self, lift: float) -> str:
        if lift < self.t2:
            return "t1"
        if lift < self.t3:
            return "t2"
        if lift < self.t4:
            return "t3"
        return "t4"


def default_lift_grid(
    probe: ObjectShape, config: GripperConfig | None = None, step: float = 0.5
) -> np.ndarray:
    """Grid from 0 to just past full disengagement."""
    config = config or GripperConfig()
    if step <= 0.0:
        raise ValueError(f"step must be positive, got {step:g}")
    _, span_hi = z_span(probe)
    lift_max = span_hi - (config.module_levels[0] - config.module_height / 2.0) + 2.0 * step
    return np.arange(0.0, lift_max + step, step)


def pullout_trace(
    theta: float,
    probe: ObjectShape,
    config: GripperConfig | None = None,
    material: MaterialModel | None = None,
    mu: float = 0.5,
    lift_grid: Sequence[float] | np.ndarray | None = None,
    torque_scale: float = 1.0,
) -> PulloutTrace:
    """Extraction-resistance curve while the gripper rises off a fixed probe.

    The probe must cover both module faces at lift 0 so every stage
    transition appears in the trace.
    """
    from .mechanics import TPU95A

    config = config or GripperConfig()
    material = material or TPU95A
    if lift_grid is None:
        lift_grid = default_lift_grid(probe, config)
    lifts = np.asarray(lift_grid, dtype=float)
    if lifts.size == 0:
        raise ValueError("lift_grid is empty")

    span_lo, span_hi = z_span(probe)
    half_face = config.module_height / 2.0
    for level_z in config.module_levels:
        if not span_lo <= level_z <= span_hi:
            raise ValueError(
                f"probe span [{span_lo:g}, {span_hi:g}] mm does not cover the "
                f"module level at {level_z:g} mm"
            )

    forces = np.empty_like(lifts)
    for i, lift in enumerate(lifts):
        records = _level_contacts(theta, probe, config, material, mu, float(lift), torque_scale)
        forces[i] = pullout_capacity(records)

    top = config.module_levels[-1]
    bottom = config.module_levels[0]
    return PulloutTrace(
        lifts=lifts,
        forces=forces,
        t1=0.0,
        t2=max(0.0, span_hi - (top + half_face)),
        t3=max(0.0, span_hi - (top - half_face)),
        t4=max(0.0, span_hi - (bottom - half_face)),
    )


# --------------------------------------------------------------------------
# friction calibration
# --------------------------------------------------------------------------


def calibrate_friction(
    probe: ObjectShape,
    theta: float,
    config: GripperConfig | None = None,
    material: MaterialModel | None = None,
    target_side_force: float = 1.5,
    torque_scale: float = 1.0,
) -> float:
    """Friction coefficient making one finger's extraction resistance equal
    the target.

    The probe instrumentation reads the vertical force transmitted through
    one side of the grasp, so the fit is against a single finger's records;
    normal forces do not depend on mu, which makes the capacity linear in mu
    and the fit closed-form.
    """
    contacts = resolve_contacts(theta, probe, config, material, mu=0.0, torque_scale=torque_scale)
    side = contacts.finger(0)
    if len(side) == 0:
        raise ValueError("probe makes no contact on the reference finger")
    slope = sum(
        r.normal_force * math.cos(math.radians(r.inclination)) for r in side.records
    )
    intercept = sum(
        r.normal_force * math.sin(math.radians(r.inclination)) for r in side.records
    )
    if slope <= 0.0:
        raise ValueError("degenerate probe contact: no friction-bearing normal force")
    mu = (target_side_force - intercept) / slope
    if mu < 0.0:
        raise ValueError(
            f"target {target_side_force:g} N is below the frictionless wrap "
            f"resistance {intercept:g} N; no non-negative mu fits"
        )
    return mu
