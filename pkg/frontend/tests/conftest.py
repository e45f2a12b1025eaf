import subprocess
import sys

import pytest


def run_cli(*args):
    """Invoke the primary CLI; the plotting layer only consumes its files."""
    proc = subprocess.run(
        [sys.executable, "-m", "jumptrack.cli", *args],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="session")
def entropy_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("curves") / "entropy.csv"
    run_cli(
        "entropy-curve", "--gamma", "1", "--omega-min", "0.01",
        "--omega-max", "0.25", "--steps", "30", "--out", str(path),
    )
    return path


@pytest.fixture(scope="session")
def adaptive_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("traj") / "adaptive.csv"
    run_cli(
        "simulate", "--gamma", "1", "--omega", "1", "--policy", "adaptive:real",
        "--t-max", "100", "--dt-record", "0.25", "--seed", "0", "--out", str(path),
    )
    return path


@pytest.fixture(scope="session")
def fixed_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("traj") / "fixed.csv"
    run_cli(
        "simulate", "--gamma", "1", "--omega", "1", "--policy", "fixed:0.5,0",
        "--t-max", "200", "--dt-record", "0.25", "--seed", "7", "--out", str(path),
    )
    return path
