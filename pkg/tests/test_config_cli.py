"""Configuration layering, CLI subcommands, artifacts, and determinism."""

import json
import math

import pytest

from peierls.cli import main
from peierls.config import (
    ConfigError,
    RunConfig,
    load_config,
    parse_config_file,
    reference_config_path,
)


def write_cfg(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_parse_basic(tmp_path):
    path = write_cfg(tmp_path, "t = 0.5\nzeta = 1.25\nbig_l = 32\nstrict_paper = true\n# comment\n")
    values = parse_config_file(path)
    assert values == {"t": 0.5, "zeta": 1.25, "big_l": 32, "strict_paper": True}


def test_parse_reports_line_and_field(tmp_path):
    path = write_cfg(tmp_path, "t = 0.5\nbogus = 1\n")
    with pytest.raises(ConfigError, match=r"run\.cfg:2.*bogus"):
        parse_config_file(path)
    path2 = write_cfg(tmp_path, "t = not-a-number\n", name="bad.cfg")
    with pytest.raises(ConfigError, match=r"bad\.cfg:1.*'t'"):
        parse_config_file(path2)


def test_precedence_file_env_cli(tmp_path):
    path = write_cfg(tmp_path, "t = 0.5\nq = 1.5\n")
    cfg = load_config(path, overrides={"q": 2.0}, environ={"PEIERLS_T": "0.7", "PEIERLS_Q": "1.8"})
    assert cfg.t == 0.7  # env beats file
    assert cfg.q == 2.0  # CLI beats env


def test_invalid_field_values():
    with pytest.raises(ConfigError, match="t"):
        RunConfig(t=-1.0)
    with pytest.raises(ConfigError, match="phonon_norm"):
        RunConfig(phonon_norm="bogus")
    with pytest.raises(ConfigError, match="resolution"):
        RunConfig(resolution=0)


def test_reference_configs_load():
    for name in ("double_well", "kink_dynamics"):
        cfg = load_config(reference_config_path(name))
        assert cfg.q == 1.5 and cfg.w == -1.0
    with pytest.raises(ConfigError):
        reference_config_path("missing")


def test_seeds_deterministic():
    cfg = load_config(reference_config_path("double_well"))
    assert cfg.seeds() == cfg.seeds()
    assert cfg.seeds()[0] == (0.0, 0.0)
    assert len(cfg.seeds()) == 1 + len(cfg.seed_rings) * cfg.seed_angles


def test_cli_exit_code_config_error(tmp_path, capsys):
    rc = main(["landscape", "--reference", "double_well", "-o", str(tmp_path), "--set", "t=-1"])
    assert rc == 2
    assert "t" in capsys.readouterr().err


def test_cli_landscape_deterministic_across_workers(tmp_path):
    args = ["landscape", "--reference", "double_well", "--set", "resolution=11"]
    assert main(args + ["-o", str(tmp_path / "a"), "--workers", "1"]) == 0
    assert main(args + ["-o", str(tmp_path / "b"), "--workers", "3"]) == 0
    csv_a = (tmp_path / "a" / "landscape.csv").read_bytes()
    csv_b = (tmp_path / "b" / "landscape.csv").read_bytes()
    assert csv_a == csv_b


def test_cli_landscape_resolution_one(tmp_path):
    rc = main([
        "landscape", "--reference", "double_well", "-o", str(tmp_path),
        "--set", "resolution=1",
    ])
    assert rc == 0
    lines = (tmp_path / "landscape.csv").read_text().splitlines()
    assert len(lines) == 2  # header + single center cell
    re_val, im_val = lines[1].split(",")[:2]
    assert float(re_val) == 0.0 and float(im_val) == 0.0


def test_cli_landscape_metadata_embeds_config(tmp_path):
    assert main(["landscape", "--reference", "double_well", "-o", str(tmp_path),
                 "--set", "resolution=5"]) == 0
    meta = json.loads((tmp_path / "landscape.json").read_text())
    assert meta["schema"] == "peierls/landscape/v1"
    assert meta["config"]["resolution"] == 5
    assert meta["config"]["t"] == 0.015365533074576245


def test_cli_critical_points_decoupled(tmp_path):
    rc = main(["critical-points", "-o", str(tmp_path),
               "--set", "zeta=0", "--set", "kappa=0", "--set", "t=1.0"])
    assert rc == 0
    lines = (tmp_path / "critical_points.csv").read_text().splitlines()
    assert len(lines) == 2
    kind, re_val, im_val = lines[1].split(",")[:3]
    assert kind == "minimum"
    assert math.hypot(float(re_val), float(im_val)) < 1e-10


def test_cli_spectrum_constant(tmp_path):
    rc = main(["spectrum", "--reference", "double_well", "-o", str(tmp_path),
               "--set", "q=1.0", "--set", "z_re=0.05", "--set", "z_im=0.05"])
    assert rc == 0
    meta = json.loads((tmp_path / "spectrum.json").read_text())
    assert meta["proportionality_constant"] == pytest.approx(2.0, rel=1e-9)
    header = (tmp_path / "spectrum.csv").read_text().splitlines()[0]
    assert header == "index,real_space,mode_value"


def test_cli_dynamics_fixed_point_constant_trajectory(tmp_path):
    rc = main(["dynamics", "--reference", "kink_dynamics", "-o", str(tmp_path),
               "--set", "x0=0", "--set", "v0=0", "--set", "steps=50", "--set", "settle_tol=0"])
    assert rc == 0
    rows = (tmp_path / "trajectory.csv").read_text().splitlines()[1:]
    assert len(rows) == 51
    for row in rows:
        _, x, v, _ = row.split(",")
        assert abs(float(x)) < 1e-12 and abs(float(v)) < 1e-12


def test_cli_kink_spectrum(tmp_path):
    rc = main(["kink-spectrum", "--reference", "kink_dynamics", "-o", str(tmp_path),
               "--set", "n_sites=80", "--set", "kink_site=40"])
    assert rc == 0
    meta = json.loads((tmp_path / "kink_spectrum.json").read_text())
    assert meta["in_gap_count"] >= 1
    assert meta["schema"] == "peierls/kink-spectrum/v1"


def test_cli_kink_propagate_small(tmp_path):
    rc = main(["kink-propagate", "--reference", "kink_dynamics", "-o", str(tmp_path),
               "--set", "n_sites=60", "--set", "kink_site=30",
               "--set", "kink_steps=20", "--set", "anchor_offset=0"])
    assert rc == 0
    meta = json.loads((tmp_path / "kink_trajectory.json").read_text())
    assert meta["termination"] == "completed"
    assert meta["relative_energy_drift"] < 1e-6
    header = (tmp_path / "kink_trajectory.csv").read_text().splitlines()[0]
    assert header == "t,re_z,im_z,kink_position,energy,n_anchor"


def test_cli_validate_passes_and_fault_injection(tmp_path, monkeypatch, capsys):
    assert main(["validate", "--reference", "kink_dynamics", "-o", str(tmp_path / "ok")]) == 0
    report = json.loads((tmp_path / "ok" / "validation.json").read_text())["report"]
    assert report["passed"] is True
    assert report["info"]["real-space-to-mode-constant"] == pytest.approx(2.0, abs=1e-12)
    monkeypatch.setenv("PEIERLS_TEST_CORRUPT_XI", "0.01")
    assert main(["validate", "--reference", "kink_dynamics", "-o", str(tmp_path / "bad")]) == 1
    bad = json.loads((tmp_path / "bad" / "validation.json").read_text())["report"]
    failed = [c["name"] for c in bad["checks"] if not c["passed"]]
    assert failed == ["lambda-printed-vs-matrix"]


def test_cli_rerun_from_metadata(tmp_path):
    # an artifact's metadata alone is enough to reproduce it
    out1 = tmp_path / "first"
    assert main(["landscape", "--reference", "double_well", "-o", str(out1),
                 "--set", "resolution=7"]) == 0
    meta = json.loads((out1 / "landscape.json").read_text())
    cfg_lines = []
    for key, value in meta["config"].items():
        if isinstance(value, list):
            value = ",".join(repr(v) for v in value)
        cfg_lines.append(f"{key} = {value}")
    rerun_cfg = tmp_path / "rerun.cfg"
    rerun_cfg.write_text("\n".join(cfg_lines) + "\n")
    out2 = tmp_path / "second"
    assert main(["landscape", "--config", str(rerun_cfg), "-o", str(out2)]) == 0
    assert (out1 / "landscape.csv").read_bytes() == (out2 / "landscape.csv").read_bytes()
