import json

import pytest

from origrip.cli import EXIT_INFEASIBLE, EXIT_INVALID, EXIT_OK, main
from origrip.demo import demo_scene_path
from origrip.scenario import scenario_digest

ENVELOPING = str(demo_scene_path("grasp_enveloping"))
PARALLEL = str(demo_scene_path("grasp_parallel"))
STACKED = str(demo_scene_path("stacked_spheres"))
PICKPLACE = str(demo_scene_path("pickplace_comparison"))
PULLOUT = str(demo_scene_path("pullout_enveloping"))


def run_json(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    record = json.loads(captured.out) if captured.out else None
    return code, record, captured.err


def test_kinematics_forward(capsys):
    code, record, _ = run_json(capsys, ["kinematics", "--theta", "0"])
    assert code == EXIT_OK
    out = record["outputs"]
    assert out["theta"] == 0.0
    assert out["opening"] == 78.0
    assert out["finger_radius"] == 54.0
    lo, hi = out["opening_range"]
    assert lo < hi == 78.0


def test_kinematics_inverse(capsys):
    code, record, _ = run_json(capsys, ["kinematics", "--opening", "53"])
    assert code == EXIT_OK
    assert record["outputs"]["theta"] == pytest.approx(45.0)
    assert record["outputs"]["finger_radius"] == pytest.approx(41.5)


def test_kinematics_angle_out_of_range(capsys):
    code, record, err = run_json(capsys, ["kinematics", "--theta", "120"])
    assert code == EXIT_INVALID
    assert record is None
    assert "origrip:" in err and "servo angle" in err


def test_kinematics_flags_are_mutually_exclusive(capsys):
    with pytest.raises(SystemExit) as exc_info:
        main(["kinematics", "--theta", "30", "--opening", "53"])
    assert exc_info.value.code == 2


def test_material_curve_compression(capsys):
    code, record, _ = run_json(
        capsys, ["material-curve", "--material", "sil950", "--samples", "13"]
    )
    assert code == EXIT_OK
    rows = record["outputs"]
    assert len(rows) == 13
    assert rows[0] == {"strain": 0.0, "force": 0.0}
    plateau = [r["force"] for r in rows if 0.1 <= r["strain"] <= 0.5]
    assert plateau and all(f == 1.0 for f in plateau)


def test_material_curve_bending(capsys):
    code, record, _ = run_json(
        capsys, ["material-curve", "--material", "sil950", "--mode", "bending", "--samples", "7"]
    )
    assert code == EXIT_OK
    rows = record["outputs"]
    assert len(rows) == 7
    assert {"angle", "torque"} == set(rows[0])
    plateau = [r["torque"] for r in rows if 5.0 <= r["angle"]]
    assert plateau and all(t == 9.5 for t in plateau)


def test_material_curve_csv(capsys):
    code = main(["material-curve", "--material", "tpu95a", "--format", "csv", "--samples", "5"])
    assert code == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "strain,force"
    assert len(lines) == 6


def test_material_curve_unknown_material(capsys):
    code, _, err = run_json(capsys, ["material-curve", "--material", "adamantium"])
    assert code == EXIT_INVALID
    assert "unknown material 'adamantium'" in err


def test_material_curve_needs_two_samples(capsys):
    code, _, err = run_json(capsys, ["material-curve", "--material", "tpu95a", "--samples", "1"])
    assert code == EXIT_INVALID
    assert "--samples" in err


def test_material_curve_seeded_spread(capsys):
    base = ["material-curve", "--material", "tpu95a", "--samples", "9"]
    _, nominal, _ = run_json(capsys, base)
    _, seeded_a, _ = run_json(capsys, base + ["--seed", "11"])
    _, seeded_b, _ = run_json(capsys, base + ["--seed", "11"])
    assert seeded_a == seeded_b
    assert seeded_a != nominal
    assert seeded_a["seed"] == 11
    plateau = [r["force"] for r in seeded_a["outputs"] if 0.1 <= r["strain"] <= 0.5]
    assert all(4.5 <= f <= 5.0 for f in plateau)  # stays inside the 5% spread band


def test_grasp_command(capsys):
    code, record, _ = run_json(capsys, ["grasp", "--scene", ENVELOPING])
    assert code == EXIT_OK
    assert record["command"] == "grasp"
    assert record["kind"] == "single_grasp"
    assert record["digest"] == scenario_digest(ENVELOPING)
    assert record["outputs"]["grasp_mode"] == "v_enveloping"
    assert record["outputs"]["pullout_capacity"] == pytest.approx(3.0, abs=1e-9)


def test_grasp_overrides(capsys):
    code, record, _ = run_json(
        capsys,
        ["grasp", "--scene", ENVELOPING, "--theta", "45", "--material", "sil950", "--mu", "0.3"],
    )
    assert code == EXIT_OK
    assert record["outputs"]["theta"] == 45.0
    assert record["outputs"]["pullout_capacity"] == pytest.approx(1.0290970548976035, abs=1e-9)


def test_grasp_rejects_negative_mu(capsys):
    code, _, err = run_json(capsys, ["grasp", "--scene", ENVELOPING, "--mu", "-0.1"])
    assert code == EXIT_INVALID
    assert "--mu" in err


def test_grasp_rejects_wrong_scene_kind(capsys):
    code, _, err = run_json(capsys, ["grasp", "--scene", STACKED])
    assert code == EXIT_INVALID
    assert "scene kind is 'stacked'" in err


def test_pullout_grid_override(capsys):
    code, record, _ = run_json(capsys, ["pullout", "--scene", PULLOUT, "--grid", "10"])
    assert code == EXIT_OK
    lifts = record["outputs"]["trace"]["lift"]
    assert lifts[1] - lifts[0] == pytest.approx(10.0)
    assert record["outputs"]["capacity"] == pytest.approx(3.0, abs=1e-9)
    code, _, err = run_json(capsys, ["pullout", "--scene", PULLOUT, "--grid", "0"])
    assert code == EXIT_INVALID
    assert "--grid" in err


def test_multi_command(capsys):
    code, record, _ = run_json(capsys, ["multi", "--scene", STACKED])
    assert code == EXIT_OK
    assert record["outputs"]["plan"]["theta_grasp"] == pytest.approx(57.6, abs=1e-9)
    held = [(s["top_held"], s["bottom_held"]) for s in record["outputs"]["stages"]]
    assert held == [(True, True), (True, False), (False, False)]


def test_multi_infeasible_scene(capsys, tmp_path):
    scene = tmp_path / "upside_down.yaml"
    scene.write_text(
        "kind: stacked\n"
        "material: sil950\n"
        "top:\n  shape: sphere\n  size: [50.0]\n  mass: 0.05\n"
        "bottom:\n  shape: sphere\n  size: [60.0]\n  mass: 0.05\n"
    )
    code, record, _ = run_json(capsys, ["multi", "--scene", str(scene)])
    assert code == EXIT_INFEASIBLE
    assert record["infeasible"] is True
    assert record["reason"] == "size_order"
    assert record["outputs"] == {}
    assert "message" in record


def test_compare_command(capsys):
    code, record, _ = run_json(capsys, ["compare", "--scene", PICKPLACE])
    assert code == EXIT_OK
    assert record["outputs"]["distance_reduction"] == pytest.approx(0.33, abs=1e-12)
    assert record["outputs"]["time_reduction"] == pytest.approx(0.31, abs=1e-12)


def test_sweep_range_values(capsys):
    code, record, _ = run_json(
        capsys, ["sweep", "--scene", ENVELOPING, "--axis", "theta", "--values", "30:60:15"]
    )
    assert code == EXIT_OK
    assert record["axis"] == "theta"
    assert [row["theta"] for row in record["outputs"]] == [30.0, 45.0, 60.0]


def test_sweep_comma_values_csv(capsys):
    code = main(
        [
            "sweep",
            "--scene",
            ENVELOPING,
            "--axis",
            "theta",
            "--values",
            "40,60",
            "--format",
            "csv",
        ]
    )
    assert code == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("theta,")
    assert len(lines) == 3


def test_sweep_bad_values(capsys):
    for bad in ("abc", "10:5:1", "1:10:0", "1:10"):
        code, _, err = run_json(
            capsys, ["sweep", "--scene", ENVELOPING, "--axis", "theta", "--values", bad]
        )
        assert code == EXIT_INVALID, bad
        assert "--values" in err


def test_sweep_bad_axis(capsys):
    code, _, err = run_json(
        capsys, ["sweep", "--scene", ENVELOPING, "--axis", "object.flavor", "--values", "1,2"]
    )
    assert code == EXIT_INVALID
    assert "no such field" in err


def test_output_to_file(capsys, tmp_path):
    out_file = tmp_path / "result.json"
    code = main(["grasp", "--scene", ENVELOPING, "--out", str(out_file)])
    assert code == EXIT_OK
    assert capsys.readouterr().out == ""
    record = json.loads(out_file.read_text())
    assert record["outputs"]["pullout_capacity"] == pytest.approx(3.0, abs=1e-9)


def test_scenes_listing(capsys):
    code, record, _ = run_json(capsys, ["scenes"])
    assert code == EXIT_OK
    names = [row["name"] for row in record["outputs"]]
    assert len(names) == 9
    assert "stacked_spheres" in names and names == sorted(names)


def test_missing_scene_file(capsys, tmp_path):
    code, _, err = run_json(capsys, ["grasp", "--scene", str(tmp_path / "nope.yaml")])
    assert code == EXIT_INVALID
    assert "cannot read file" in err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc_info:
        main(["--version"])
    assert exc_info.value.code == 0
    assert capsys.readouterr().out.startswith("origrip ")
