"""Independent reference implementations used to cross-check the package.

Everything here is deliberately brute force and shares no code with the
implementations under test: closure is judged by direction sampling instead
of an LP, widths by projecting polygon vertices, arc unions by a dense
angular grid, and hold windows by sweeping the hold predicate directly.
"""

from __future__ import annotations

import math

import numpy as np

from origrip import SIL950, TPU95A, GripperConfig, cube, holds_at, make_stacked_scene, sphere


def sphere_directions(n: int = 360) -> np.ndarray:
    """Roughly uniform unit vectors via the Fibonacci spiral."""
    i = np.arange(n) + 0.5
    phi = math.pi * (3.0 - math.sqrt(5.0)) * i
    z = 1.0 - 2.0 * i / n
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def positive_span_closed(primitives: np.ndarray, n_dirs: int = 360, rel_tol: float = 1e-9) -> bool:
    """A wrench set resists every disturbance iff every direction of wrench
    space has positive support from some primitive."""
    primitives = np.asarray(primitives, dtype=float)
    scale = float(np.abs(primitives).max())
    if scale == 0.0:
        return False
    # a set confined to a plane or line fails along its normal even when no
    # sampled direction lands exactly on that measure-zero failure set
    if np.linalg.matrix_rank(primitives, tol=rel_tol * scale) < primitives.shape[1]:
        return False
    support = primitives @ sphere_directions(n_dirs).T
    return bool(np.all(support.max(axis=0) > rel_tol * scale))


_FINE_DIRECTIONS = sphere_directions(36000)

# Measured covering radii of the Fibonacci direction sets (max angle from any
# direction to its nearest sample): 0.142 rad for 360 points, 0.013 rad for
# 36000.  The sampled support minimum can overshoot the true closure margin
# by at most (max primitive norm) * covering radius, which bounds what each
# resolution can decide.
_COARSE_RESOLUTION = 0.16
_FINE_RESOLUTION = 0.02


def sampling_decisive(primitives: np.ndarray) -> bool:
    """Is this set's closure status resolvable by 360-direction sampling?

    Sets whose true closure margin lies within the angular resolution of the
    360-direction grid can be misjudged by that grid no matter how closure is
    actually computed, so comparisons restrict to sets whose margin a much
    finer grid certifies as either clearly positive or clearly below the
    coarse grid's resolution.
    """
    primitives = np.asarray(primitives, dtype=float)
    lip = float(np.linalg.norm(primitives, axis=1).max())
    if lip == 0.0:
        return False
    sampled_margin = float((primitives @ _FINE_DIRECTIONS.T).max(axis=0).min())
    # sampled_margin lies in [true margin, true margin + lip * fine radius]
    certainly_closed = sampled_margin > _FINE_RESOLUTION * lip
    certainly_open = sampled_margin <= -_COARSE_RESOLUTION * lip
    return certainly_closed or certainly_open


def random_contact_primitives(rng: np.random.Generator, n_contacts: int) -> np.ndarray:
    """Friction-cone edge wrenches for a random planar contact set.

    Contacts sit on a random star-shaped boundary; normals point roughly
    inward with some jitter, like the output of a real contact resolver but
    built from scratch here.
    """
    bearings = np.sort(rng.uniform(0.0, 2.0 * math.pi, n_contacts))
    radii = rng.uniform(10.0, 50.0, n_contacts)
    r_char = float(radii.max())
    rows = []
    for phi, r in zip(bearings, radii):
        jitter = rng.uniform(-0.5, 0.5)
        n = -np.array([math.cos(phi + jitter), math.sin(phi + jitter)])
        t = np.array([-n[1], n[0]])
        p = r * np.array([math.cos(phi), math.sin(phi)])
        fn = rng.uniform(0.5, 5.0)
        mu = rng.uniform(0.05, 1.0)
        for sign in (1.0, -1.0):
            f = fn * (n + sign * mu * t)
            rows.append([f[0], f[1], (p[0] * f[1] - p[1] * f[0]) / r_char])
    return np.array(rows)


def arc_union_measure(intervals: list[tuple[float, float]], resolution: float = 0.05) -> float:
    """Angular measure (deg) of a union of circle arcs by dense marking."""
    n = int(round(360.0 / resolution))
    marks = np.zeros(n, dtype=bool)
    for lo, hi in intervals:
        width = hi - lo
        if width <= 0.0:
            continue
        if width >= 360.0:
            return 360.0
        start = int(np.floor((lo % 360.0) / resolution))
        count = int(np.ceil(width / resolution))
        idx = (start + np.arange(count)) % n
        marks[idx] = True
    return float(marks.sum()) * resolution


def polygon_support_width(vertices: np.ndarray, bearing_deg: float) -> float:
    """Width of a convex polygon along a direction, by projecting vertices."""
    u = np.array([math.cos(math.radians(bearing_deg)), math.sin(math.radians(bearing_deg))])
    proj = vertices @ u
    return float(proj.max() - proj.min())


def rectangle_vertices(width: float, depth: float, yaw_deg: float) -> np.ndarray:
    c, s = math.cos(math.radians(yaw_deg)), math.sin(math.radians(yaw_deg))
    rot = np.array([[c, -s], [s, c]])
    half = np.array([[width, depth], [width, -depth], [-width, -depth], [-width, depth]]) / 2.0
    return half @ rot.T


def random_stacked_scene(rng: np.random.Generator):
    """Random stacked pair drawn from the planner's intended envelope.

    Both objects stay within the jaw range, the top is wider than the
    bottom by 6..12 mm, and masses are light enough that grip strength is
    never the binding constraint.
    """
    kinds = {"sphere": sphere, "cube": cube}
    make_top = kinds[rng.choice(["sphere", "cube"])]
    make_bottom = kinds[rng.choice(["sphere", "cube"])]
    top_width = rng.uniform(54.0, 66.0)
    bottom_width = top_width - rng.uniform(6.0, 12.0)
    top = make_top(top_width, mass=rng.uniform(0.005, 0.02))
    bottom = make_bottom(bottom_width, mass=rng.uniform(0.005, 0.02))
    config = GripperConfig(finger_count=int(rng.choice([2, 4])))
    material = {"tpu95a": TPU95A, "sil950": SIL950}[rng.choice(["tpu95a", "sil950"])]
    return make_stacked_scene(
        top, bottom, clearance=rng.uniform(0.0, 4.0), config=config, material=material, mu=0.5
    )


def swept_hold_window(
    obj,
    config,
    material,
    mu: float,
    safety: float = 1.2,
    step: float = 0.1,
) -> tuple[float, float] | None:
    """Hold window by direct evaluation of the hold predicate on a grid.

    Also verifies that the holdable set is a single contiguous interval on
    the grid, which the analytic window construction assumes.
    """
    thetas = np.arange(config.law.theta_min, config.law.theta_max + step / 2.0, step)
    flags = [holds_at(float(t), obj, config, material, mu=mu, safety=safety) for t in thetas]
    idx = [i for i, f in enumerate(flags) if f]
    if not idx:
        return None
    lo_i, hi_i = idx[0], idx[-1]
    assert all(flags[lo_i : hi_i + 1]), "holdable set is not contiguous on the sweep grid"
    return float(thetas[lo_i]), float(thetas[hi_i])
