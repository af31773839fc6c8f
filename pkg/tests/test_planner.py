import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from origrip import (
    GripperConfig,
    InfeasibleReason,
    LimitingFactor,
    PlanError,
    Pose,
    SIL950,
    TPU95A,
    cube,
    cuboid,
    equator_z,
    hold_window,
    holds_at,
    make_stacked_scene,
    plan_stacked,
    simulate_plan,
    sphere,
)

CFG2 = GripperConfig(finger_count=2)
CFG4 = GripperConfig(finger_count=4)


def theta_at(target_opening):
    """Servo angle giving a jaw opening, from the linear drive law."""
    return (39.0 - target_opening / 2.0) * 90.0 / 25.0


def expected_strain_window(width):
    """Angles where the squeeze sits between 10% and 50% of module depth."""
    return theta_at(width - 2.0 * 1.5), theta_at(width - 2.0 * 7.5)


def timeline(scene, plan):
    return [(s.top_held, s.bottom_held) for s in simulate_plan(scene, plan)]


def test_hold_window_is_strain_interval_when_strong_enough():
    scene = make_stacked_scene(sphere(60.0, 0.10), sphere(50.0, 0.06), config=CFG4)
    for obj, width in ((scene.top, 60.0), (scene.bottom, 50.0)):
        window = hold_window(obj, CFG4, SIL950, mu=0.5)
        lo, hi = expected_strain_window(width)
        assert window.theta_lo == pytest.approx(lo, abs=1e-9)
        assert window.theta_hi == pytest.approx(hi, abs=1e-9)
        assert window.limiting_factor is LimitingFactor.STRAIN_RANGE
        assert window.width == pytest.approx(21.6, abs=1e-9)
        assert window.contains(0.5 * (lo + hi))
        assert not window.contains(hi + 0.1)


def test_window_matches_swept_predicate():
    scene = make_stacked_scene(cube(58.0, 0.12), cube(50.0, 0.08), config=CFG4)
    for obj in (scene.top, scene.bottom):
        window = hold_window(obj, CFG4, SIL950, mu=0.5)
        swept = oracles.swept_hold_window(obj, CFG4, SIL950, mu=0.5)
        assert swept is not None
        assert abs(window.theta_lo - swept[0]) <= 0.1 + 1e-9
        assert abs(window.theta_hi - swept[1]) <= 0.1 + 1e-9


def test_holds_at_strain_edges():
    scene = make_stacked_scene(sphere(60.0, 0.10), sphere(50.0, 0.06), config=CFG4)
    top = scene.top
    assert holds_at(59.4, top, CFG4, SIL950, mu=0.5)
    assert holds_at(37.8 + 1e-6, top, CFG4, SIL950, mu=0.5)
    assert not holds_at(59.5, top, CFG4, SIL950, mu=0.5)  # squeezed past the band
    assert not holds_at(37.7, top, CFG4, SIL950, mu=0.5)  # too loose


def test_stack_centering():
    scene = make_stacked_scene(sphere(60.0, 0.10), sphere(50.0, 0.06), config=CFG4)
    assert scene.bottom.pose.z == pytest.approx(-12.5)
    assert scene.top.pose.z == pytest.approx(37.5)
    # the two equators straddle the module heights symmetrically
    mid = 0.5 * (equator_z(scene.bottom) + equator_z(scene.top))
    assert mid == pytest.approx(0.5 * (20.0 + 60.0))
    spaced = make_stacked_scene(sphere(60.0, 0.10), sphere(50.0, 0.06), clearance=2.0, config=CFG4)
    gap = spaced.top.pose.z - (spaced.bottom.pose.z + 50.0)
    assert gap == pytest.approx(2.0)
    mid = 0.5 * (equator_z(spaced.bottom) + equator_z(spaced.top))
    assert mid == pytest.approx(40.0)
    with pytest.raises(ValueError):
        make_stacked_scene(sphere(60.0), sphere(50.0), clearance=-1.0)


def test_scene_defaults():
    scene = make_stacked_scene(sphere(60.0, 0.10), sphere(50.0, 0.06))
    assert scene.material is SIL950
    assert scene.mu == 0.5
    assert scene.safety == 1.2


def test_plan_spheres():
    scene = make_stacked_scene(sphere(60.0, 0.10), sphere(50.0, 0.06), config=CFG4)
    plan = plan_stacked(scene)
    assert plan.theta_grasp == pytest.approx(57.6, abs=1e-9)
    assert plan.theta_release_bottom == pytest.approx(44.1, abs=1e-9)
    assert plan.theta_release_top == 0.0
    assert plan.grasp_window == pytest.approx((55.8, 59.4), abs=1e-9)
    assert plan.release_window == pytest.approx((37.8, 55.8), abs=1e-9)
    assert timeline(scene, plan) == [(True, True), (True, False), (False, False)]


def test_plan_cubes():
    scene = make_stacked_scene(cube(58.0, 0.12), cube(50.0, 0.08), config=CFG4)
    plan = plan_stacked(scene)
    assert plan.theta_grasp == pytest.approx(59.4, abs=1e-9)
    assert plan.theta_release_bottom == pytest.approx(45.9, abs=1e-9)
    assert timeline(scene, plan) == [(True, True), (True, False), (False, False)]


def test_plan_sphere_on_cube():
    scene = make_stacked_scene(sphere(60.0, 0.10), cube(52.0, 0.08), config=CFG4)
    plan = plan_stacked(scene)
    assert plan.theta_grasp == pytest.approx(55.8, abs=1e-9)
    assert plan.theta_release_bottom == pytest.approx(42.3, abs=1e-9)
    assert timeline(scene, plan) == [(True, True), (True, False), (False, False)]


def test_plan_cuboids_two_fingers():
    scene = make_stacked_scene(
        cuboid(62.0, 100.0, 60.0, 0.15),
        cuboid(54.0, 90.0, 48.0, 0.10),
        config=CFG2,
        material=TPU95A,
    )
    plan = plan_stacked(scene)
    assert plan.theta_grasp == pytest.approx(52.2, abs=1e-9)
    assert plan.theta_release_bottom == pytest.approx(38.7, abs=1e-9)
    assert timeline(scene, plan) == [(True, True), (True, False), (False, False)]


def test_release_angle_guarantees_no_touch():
    scene = make_stacked_scene(sphere(60.0, 0.10), sphere(50.0, 0.06), config=CFG4)
    plan = plan_stacked(scene)
    # at the bottom-release angle the jaws have opened past the bottom object
    assert 78.0 - 50.0 * plan.theta_release_bottom / 90.0 > 50.0


def test_plan_size_order_error():
    scene = make_stacked_scene(sphere(50.0, 0.05), sphere(60.0, 0.05), config=CFG4)
    with pytest.raises(PlanError) as exc_info:
        plan_stacked(scene)
    assert exc_info.value.reason is InfeasibleReason.SIZE_ORDER


def test_plan_no_common_hold_error():
    scene = make_stacked_scene(sphere(66.0, 0.02), sphere(50.0, 0.02), config=CFG4)
    with pytest.raises(PlanError) as exc_info:
        plan_stacked(scene)
    assert exc_info.value.reason is InfeasibleReason.NO_COMMON_HOLD


def test_plan_no_release_gap_error():
    # widths two millimetres apart: no angle drops one but keeps the other
    scene = make_stacked_scene(cube(52.0, 0.02), cube(50.0, 0.02), config=CFG4)
    with pytest.raises(PlanError) as exc_info:
        plan_stacked(scene)
    assert exc_info.value.reason is InfeasibleReason.NO_RELEASE_GAP


def test_window_none_when_unholdable():
    # wider than the jaws can ever grip in-band
    assert hold_window(sphere(96.0, 0.01), CFG4, SIL950, mu=0.5) is None
    # far too heavy for the soft material
    assert hold_window(sphere(60.0, 5.0), CFG4, SIL950, mu=0.5) is None


def test_window_clipped_by_lift_capacity():
    obj = sphere(66.0, 0.1, pose=Pose(z=10.0))
    window = hold_window(obj, CFG2, SIL950, mu=0.5)
    assert window.limiting_factor is LimitingFactor.LIFT_CAPACITY
    lo, hi = expected_strain_window(66.0)
    assert window.theta_hi == pytest.approx(hi, abs=1e-9)
    assert lo < window.theta_lo < hi
    assert window.theta_lo == pytest.approx(31.6272115945, abs=1e-4)
    # the predicate flips exactly at the found edge
    assert not holds_at(window.theta_lo - 0.01, obj, CFG2, SIL950, mu=0.5)
    assert holds_at(window.theta_lo + 0.01, obj, CFG2, SIL950, mu=0.5)
    swept = oracles.swept_hold_window(obj, CFG2, SIL950, mu=0.5)
    assert abs(window.theta_lo - swept[0]) <= 0.1 + 1e-9


def test_window_clipped_by_opening_range():
    obj = sphere(82.0, 0.01, pose=Pose(z=-1.0))
    window = hold_window(obj, CFG4, SIL950, mu=0.5)
    assert window.limiting_factor is LimitingFactor.OPENING_RANGE
    assert window.theta_lo == 0.0
    assert window.theta_hi == pytest.approx(19.8, abs=1e-9)


def test_random_scenes_window_and_plan():
    rng = np.random.default_rng(20260825)
    for _ in range(10):
        scene = oracles.random_stacked_scene(rng)
        for obj in (scene.top, scene.bottom):
            window = hold_window(obj, scene.config, scene.material, mu=scene.mu, safety=scene.safety)
            swept = oracles.swept_hold_window(
                obj, scene.config, scene.material, scene.mu, scene.safety
            )
            assert window is not None and swept is not None
            assert abs(window.theta_lo - swept[0]) <= 0.1 + 1e-9
            assert abs(window.theta_hi - swept[1]) <= 0.1 + 1e-9
        plan = plan_stacked(scene)
        assert timeline(scene, plan) == [(True, True), (True, False), (False, False)]


@given(
    st.floats(min_value=40.0, max_value=70.0),
    st.floats(min_value=1.0, max_value=10.0),
)
@settings(max_examples=30)
def test_wider_objects_hold_at_smaller_angles(width, extra):
    narrow = hold_window(sphere(width, 0.001), CFG4, SIL950, mu=0.5)
    wide = hold_window(sphere(width + extra, 0.001), CFG4, SIL950, mu=0.5)
    assert narrow is not None and wide is not None
    assert wide.theta_lo <= narrow.theta_lo
    assert wide.theta_hi <= narrow.theta_hi


@given(st.floats(min_value=45.0, max_value=60.0))
@settings(max_examples=20)
def test_feasible_plans_survive_simulation(top_width):
    scene = make_stacked_scene(
        sphere(top_width, 0.01), sphere(top_width - 8.0, 0.01), config=CFG4
    )
    plan = plan_stacked(scene)
    assert timeline(scene, plan) == [(True, True), (True, False), (False, False)]
