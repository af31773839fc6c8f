"""Graspable object geometry.

Objects are convex solids described by a kind plus a short dimension tuple.
The grasp analysis is planar (wrenches live in the horizontal plane) but
contact bookkeeping is 2.5-D: module faces act at discrete heights, so each
shape also exposes its vertical span and, for barrel-like kinds, how the
horizontal cross-section narrows away from the equator.

Dimension order per kind:
    sphere        (diameter,)
    cube          (edge,)
    cuboid        (width, depth, height)     width lies along finger bearing 0
    cylinder      (diameter, height)         axis vertical
    curved_block  (radius, width[, height])  barrel: vertical profile radius,
                                             equator diameter, vertical extent
                                             (defaults to width)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum


class ShapeKind(str, Enum):
    SPHERE = "sphere"
    CUBE = "cube"
    CUBOID = "cuboid"
    CYLINDER = "cylinder"
    CURVED_BLOCK = "curved_block"


_DIM_NAMES = {
    ShapeKind.SPHERE: ("diameter",),
    ShapeKind.CUBE: ("edge",),
    ShapeKind.CUBOID: ("width", "depth", "height"),
    ShapeKind.CYLINDER: ("diameter", "height"),
    ShapeKind.CURVED_BLOCK: ("radius", "width", "height"),
}


@dataclass(frozen=True)
class Pose:
    """Planar placement plus stacking info.  ``z`` is the base height."""

    x: float = 0.0
    y: float = 0.0
    z: float = 0.0
    yaw: float = 0.0          # deg
    stack_level: int = 0


@dataclass(frozen=True)
class ObjectShape:
    kind: ShapeKind
    dims: tuple[float, ...]
    mass: float = 0.0         # kg
    name: str = ""
    material: str = ""
    pose: Pose = field(default_factory=Pose)

    def __post_init__(self):
        names = _DIM_NAMES[self.kind]
        if self.kind is ShapeKind.CURVED_BLOCK and len(self.dims) == 2:
            # vertical extent defaults to the equator width
            object.__setattr__(self, "dims", (*self.dims, self.dims[1]))
        if len(self.dims) != len(names):
            raise ValueError(
                f"{self.kind.value} needs dims {names}, got {len(self.dims)} values"
            )
        for label, value in zip(names, self.dims):
            if value <= 0.0:
                raise ValueError(f"{self.kind.value} {label} must be positive, got {value:g}")
        if self.mass < 0.0:
            raise ValueError(f"mass must be non-negative, got {self.mass:g}")
        if self.kind is ShapeKind.CURVED_BLOCK:
            radius, width, height = self.dims
            if width > 2.0 * radius:
                raise ValueError("curved_block width cannot exceed its profile diameter")
            if height > 2.0 * radius:
                raise ValueError("curved_block height cannot exceed its profile diameter")


# convenience constructors -------------------------------------------------


def sphere(diameter: float, mass: float = 0.0, **kw) -> ObjectShape:
    return ObjectShape(ShapeKind.SPHERE, (diameter,), mass, **kw)


def cube(edge: float, mass: float = 0.0, **kw) -> ObjectShape:
    return ObjectShape(ShapeKind.CUBE, (edge,), mass, **kw)


def cuboid(width: float, depth: float, height: float, mass: float = 0.0, **kw) -> ObjectShape:
    return ObjectShape(ShapeKind.CUBOID, (width, depth, height), mass, **kw)


def cylinder(diameter: float, height: float, mass: float = 0.0, **kw) -> ObjectShape:
    return ObjectShape(ShapeKind.CYLINDER, (diameter, height), mass, **kw)


def curved_block(
    radius: float, width: float, height: float | None = None, mass: float = 0.0, **kw
) -> ObjectShape:
    dims = (radius, width) if height is None else (radius, width, height)
    return ObjectShape(ShapeKind.CURVED_BLOCK, dims, mass, **kw)


# geometry queries ---------------------------------------------------------


def grasp_width(obj: ObjectShape) -> float:
    """Widest extent along the finger closure axis (bearing 0), mm."""
    return width_along(obj, 0.0)


def width_along(obj: ObjectShape, bearing_deg: float) -> float:
    """Support width of the equator cross-section along a bearing, mm."""
    if obj.kind is ShapeKind.SPHERE or obj.kind is ShapeKind.CYLINDER:
        return obj.dims[0]
    if obj.kind is ShapeKind.CURVED_BLOCK:
        return obj.dims[1]
    if obj.kind is ShapeKind.CUBE:
        w = d = obj.dims[0]
    else:  # cuboid
        w, d = obj.dims[0], obj.dims[1]
    rel = math.radians(bearing_deg - obj.pose.yaw)
    return w * abs(math.cos(rel)) + d * abs(math.sin(rel))


def vertical_extent(obj: ObjectShape) -> float:
    if obj.kind is ShapeKind.SPHERE:
        return obj.dims[0]
    if obj.kind is ShapeKind.CUBE:
        return obj.dims[0]
    if obj.kind is ShapeKind.CUBOID:
        return obj.dims[2]
    if obj.kind is ShapeKind.CYLINDER:
        return obj.dims[1]
    return obj.dims[2]  # curved_block


def z_span(obj: ObjectShape) -> tuple[float, float]:
    """World-frame vertical interval occupied by the object."""
    return obj.pose.z, obj.pose.z + vertical_extent(obj)


def equator_z(obj: ObjectShape) -> float:
    """Height of the widest horizontal cross-section."""
    lo, hi = z_span(obj)
    return 0.5 * (lo + hi)


def vertical_profile_radius(obj: ObjectShape) -> float | None:
    """Curvature radius of the side profile in a vertical plane.

    None means the sides are vertical (prisms), so the cross-section never
    narrows and contact normals carry no vertical component.
    """
    if obj.kind is ShapeKind.SPHERE:
        return obj.dims[0] / 2.0
    if obj.kind is ShapeKind.CURVED_BLOCK:
        return obj.dims[0]
    return None


def local_width(obj: ObjectShape, bearing_deg: float, z: float) -> float:
    """Support width of the cross-section at world height ``z``, mm.

    Returns 0.0 outside the vertical span or where a barrel profile has
    narrowed to nothing.
    """
    lo, hi = z_span(obj)
    if not lo <= z <= hi:
        return 0.0
    r_v = vertical_profile_radius(obj)
    if r_v is None:
        return width_along(obj, bearing_deg)
    dz = z - equator_z(obj)
    if abs(dz) > r_v:
        return 0.0
    sagitta = r_v - math.sqrt(r_v * r_v - dz * dz)
    return max(0.0, width_along(obj, bearing_deg) - 2.0 * sagitta)


def horizontal_radius(obj: ObjectShape, z: float) -> float | None:
    """Curvature radius of the contacted surface in the grasp plane.

    None means flat faces (cube/cuboid); curved kinds return the local
    cross-section radius at height ``z``.
    """
    if obj.kind in (ShapeKind.CUBE, ShapeKind.CUBOID):
        return None
    w = local_width(obj, 0.0, z)
    return w / 2.0 if w > 0.0 else None


def bounding_radius(obj: ObjectShape) -> float:
    """Radius of the bounding circle of the equator cross-section."""
    if obj.kind is ShapeKind.CUBE:
        e = obj.dims[0]
        return e * math.sqrt(2.0) / 2.0
    if obj.kind is ShapeKind.CUBOID:
        w, d = obj.dims[0], obj.dims[1]
        return math.sqrt(w * w + d * d) / 2.0
    return width_along(obj, 0.0) / 2.0


def stack_on(top: ObjectShape, bottom: ObjectShape, gap: float = 0.0) -> ObjectShape:
    """Copy of ``top`` resting on ``bottom`` (plus an optional gap)."""
    import dataclasses as _dc

    base = bottom.pose.z + vertical_extent(bottom) + gap
    pose = _dc.replace(top.pose, z=base, stack_level=bottom.pose.stack_level + 1)
    return _dc.replace(top, pose=pose)
