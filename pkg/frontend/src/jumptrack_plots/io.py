"""CSV loading with schema validation against the jumptrack CLI formats."""

from __future__ import annotations

import csv

TRAJECTORY_COLUMNS = [
    "trajectory_id",
    "t",
    "re_ce",
    "im_ce",
    "re_cg",
    "im_cg",
    "bloch_x",
    "bloch_y",
    "bloch_z",
    "active_mu_re",
    "active_mu_im",
    "jumps_so_far",
]

ENTROPY_COLUMNS = [
    "omega_over_gamma",
    "family",
    "mu_re",
    "mu_im",
    "p1",
    "p2",
    "entropy_bits",
    "pr_residual",
]


class SchemaError(ValueError):
    """Input CSV does not match the expected CLI schema."""


def _check_header(header: list[str], expected: list[str], path: str) -> None:
    for col in expected:
        if col not in header:
            raise SchemaError(f"{path}: missing column '{col}'")
    for col in header:
        if col not in expected:
            raise SchemaError(f"{path}: unexpected column '{col}'")


def load_csv(path: str, expected_columns: list[str]) -> list[dict]:
    """Rows as dicts; header must match the expected schema exactly."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise SchemaError(f"{path}: empty file, no header")
        _check_header(list(reader.fieldnames), expected_columns, path)
        return list(reader)


def load_trajectories(path: str) -> list[dict]:
    return load_csv(path, TRAJECTORY_COLUMNS)


def load_entropy_curve(path: str) -> list[dict]:
    return load_csv(path, ENTROPY_COLUMNS)
