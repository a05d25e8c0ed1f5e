#!/usr/bin/env python3
"""Generate the small simulator outputs the figure frontend tests consume.

Run from the repository root; writes into frontend/test/fixtures/.  The
fixtures are committed so `npm test` needs no Python, and regenerating them
must be byte-identical (fixed configs and seeds).
"""

import os
import sys

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from dslab.scenarios import BeamSplitterConfig, EprConfig, run_beam_splitter, run_epr
from dslab.soliton import SolitonParams, solve_radial_profile, write_radial_csv
from dslab.provenance import dataclass_hash

OUT = os.path.join(os.path.dirname(__file__), "..", "frontend", "test", "fixtures")


def main():
    os.makedirs(OUT, exist_ok=True)
    cfg = BeamSplitterConfig(
        nx=512, dt=0.25, n_ensemble=200, t_end=100.0, sigma0=6.0, x_start=-30.0,
        domain=(-120.0, 120.0), barrier_amplitude=0.14, checkpoint_every=20,
        fan_size=24, seed=31,
    )
    outputs = {
        "report": f"{OUT}/report.txt",
        "fan_csv": f"{OUT}/trajectory_fan.csv",
        "psi_map": f"{OUT}/psi_map.dslab",
        "usym_map": f"{OUT}/usym_map.dslab",
        "trajectory_csv": f"{OUT}/selected_trajectory.csv",
        "ensemble_csv": f"{OUT}/ensemble.csv",
    }
    run_beam_splitter(cfg, outputs=outputs)

    repr_cfg = EprConfig(nx=160, dt=0.05, n_ensemble=120, seed=13)
    run_epr(repr_cfg, outputs={"divergence_csv": f"{OUT}/epr_divergence.csv"})

    params = SolitonParams(g0=4 * np.pi, l0=0.01, omega0=1.0)
    prof = solve_radial_profile(params, omega=1.0, r_max=3.0, n_out=600)
    write_radial_csv(f"{OUT}/radial_profile.csv", prof, config_hash="", tool_version="fixture")

    # negative-control fixtures
    fan = open(f"{OUT}/trajectory_fan.csv").read().splitlines()
    head = fan[0]
    key = "config_hash="
    pos = head.index(key) + len(key)
    end = head.index(" ", pos)
    tampered = head[:pos] + "deadbeef" + head[end:]
    with open(f"{OUT}/trajectory_fan_badhash.csv", "w") as fh:
        fh.write("\n".join([tampered] + fan[1:]) + "\n")
    with open(f"{OUT}/empty_trajectory.csv", "w") as fh:
        fh.write("# run_id=empty seed=0 config_hash= tool_version=\n")
    print("fixtures written to", OUT)


if __name__ == "__main__":
    main()
