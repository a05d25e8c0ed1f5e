import os

import numpy as np
import pytest

from dslab.cli import main
from dslab.config import parse_config, with_seed
from dslab.errors import ConfigError

MINIMAL_BEAM = """
[run]
scenario = beam_splitter
output_dir = {out}

[beam_splitter]
omega0 = 1.0
sigma0 = 6.0
x_start = -30.0
p0 = 0.5
t_end = 100.0
n_ensemble = 200
seed = 11
nx = 1024
dt = 0.2
domain = -120, 120
barrier_amplitude = 0.0
checkpoint_every = 20
"""


def write_cfg(tmp_path, text, name="run.ini"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_parse_minimal_config(tmp_path):
    rc = parse_config(write_cfg(tmp_path, MINIMAL_BEAM.format(out=tmp_path)))
    assert rc.scenario == "beam_splitter"
    assert rc.params.sigma0 == 6.0
    assert rc.params.domain == (-120.0, 120.0)
    assert len(rc.config_hash) == 64


def test_misspelled_key_rejected(tmp_path):
    bad = MINIMAL_BEAM.format(out=tmp_path).replace("sigma0 =", "sigma_zero =")
    with pytest.raises(ConfigError, match="sigma_zero"):
        parse_config(write_cfg(tmp_path, bad))


def test_missing_physics_param_rejected(tmp_path):
    bad = MINIMAL_BEAM.format(out=tmp_path).replace("p0 = 0.5\n", "")
    with pytest.raises(ConfigError, match="p0"):
        parse_config(write_cfg(tmp_path, bad))


def test_unknown_section_rejected(tmp_path):
    bad = MINIMAL_BEAM.format(out=tmp_path) + "\n[extra]\nfoo = 1\n"
    with pytest.raises(ConfigError, match="extra"):
        parse_config(write_cfg(tmp_path, bad))


def test_comments_do_not_change_hash(tmp_path):
    a = parse_config(write_cfg(tmp_path, MINIMAL_BEAM.format(out=tmp_path), "a.ini"))
    commented = MINIMAL_BEAM.format(out=tmp_path).replace(
        "p0 = 0.5", "p0 = 0.5  # subluminal packet"
    ) + "\n# trailing comment\n"
    b = parse_config(write_cfg(tmp_path, commented, "b.ini"))
    assert a.config_hash == b.config_hash


def test_seed_override_keeps_hash_lineage(tmp_path):
    rc = parse_config(write_cfg(tmp_path, MINIMAL_BEAM.format(out=tmp_path)))
    rc2 = with_seed(rc, 99)
    assert rc2.params.seed == 99
    assert rc2.config_hash == rc.config_hash


def test_inconsistent_params_reported(tmp_path):
    bad = MINIMAL_BEAM.format(out=tmp_path).replace("nx = 1024", "nx = 4")
    with pytest.raises(ConfigError, match="beam_splitter"):
        parse_config(write_cfg(tmp_path, bad))


def test_cli_run_beam(tmp_path, capsys):
    cfg = write_cfg(tmp_path, MINIMAL_BEAM.format(out=tmp_path / "out"))
    rc = main(["run", cfg])
    assert rc == 0
    out = capsys.readouterr().out
    assert "reflected fraction" in out
    files = os.listdir(tmp_path / "out")
    assert "report.txt" in files
    assert "usym_map.dslab" in files
    assert "selected_trajectory.csv" in files


def test_cli_run_twice_identical_outputs(tmp_path):
    blobs = []
    for sub in ("o1", "o2"):
        cfg = write_cfg(tmp_path, MINIMAL_BEAM.format(out=tmp_path / sub), f"{sub}.ini")
        assert main(["run", cfg]) == 0
        blobs.append({
            name: open(tmp_path / sub / name, "rb").read()
            for name in ("ensemble.csv", "trajectory_fan.csv", "usym_map.dslab")
        })
    assert blobs[0].keys() == blobs[1].keys()
    for name in blobs[0]:
        assert blobs[0][name] == blobs[1][name], name


def test_cli_seed_override_changes_samples(tmp_path):
    cfg = write_cfg(tmp_path, MINIMAL_BEAM.format(out=tmp_path / "s1"))
    assert main(["run", cfg]) == 0
    cfg2 = write_cfg(tmp_path, MINIMAL_BEAM.format(out=tmp_path / "s2"), "r2.ini")
    assert main(["run", cfg2, "--seed", "404"]) == 0
    e1 = open(tmp_path / "s1" / "ensemble.csv").read().splitlines()
    e2 = open(tmp_path / "s2" / "ensemble.csv").read().splitlines()
    assert e1[0] == e2[0]  # same config hash line
    assert e1[2] != e2[2]  # different samples


def test_cli_error_paths(tmp_path, capsys):
    assert main(["run", str(tmp_path / "missing.ini")]) == 2
    assert "error:" in capsys.readouterr().err


def test_cli_version(capsys):
    with pytest.raises(SystemExit):
        main(["--version"])
    assert "dslab" in capsys.readouterr().out
