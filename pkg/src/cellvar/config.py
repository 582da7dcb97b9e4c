"""Flat key = value simulation configs for the command-line driver.

The file is line-oriented: ``key = value`` pairs, ``#`` comments, blank
lines ignored.  Vector values are whitespace-separated numbers; the
elasticity matrices take either 3 numbers (diagonal) or 9 (row-major).
Validation failures name the offending field path, e.g.
``material.C1 not symmetric``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from . import so3
from .rod import (
    LinearPotential,
    RodConfig,
    RodGrid,
    perturbed_band,
    rest_band,
    translating_band,
    uniform_material,
)
from .variational import DiscreteField, SolverOptions


class ConfigError(ValueError):
    """Configuration problem; the message starts with the field path."""


DEFAULTS = {
    "grid.ds": "0.1",
    "grid.dt": "0.05",
    "grid.elements": "16",
    "steps": "50",
    "seed": "0",
    "material.rho": "1.0",
    "material.J": "1.0 1.0 1.0",
    "material.C1": "1.0 1.0 1.0",
    "material.C2": "1.0 1.0 1.0",
    "material.e": "0.0 0.0 0.0",
    "material.potential": "none",
    "initial.kind": "rest",
    "initial.velocity": "0.0 0.0 0.0",
    "initial.amplitude": "0.01",
    "initial.file": "",
    "initial.r0": "0.0 0.0 0.0",
    "initial.R0": "0.0 0.0 0.0",
    "solver.tol": "1e-12",
    "solver.max_iter": "50",
}


@dataclass
class SimulationConfig:
    grid: RodGrid
    material: object
    steps: int
    seed: int
    solver: SolverOptions
    initial_kind: str
    initial_velocity: np.ndarray
    initial_amplitude: float
    initial_file: str
    initial_r0: np.ndarray
    initial_rot0: np.ndarray

    def initial_band(self):
        kind = self.initial_kind
        if kind == "rest":
            return rest_band(self.grid, self.initial_r0, self.initial_rot0)
        if kind == "translating":
            return translating_band(
                self.grid, self.initial_velocity, self.initial_r0, self.initial_rot0
            )
        if kind == "near-rest":
            return perturbed_band(
                rest_band(self.grid, self.initial_r0, self.initial_rot0),
                self.initial_amplitude,
                self.seed,
            )
        if kind == "file":
            return _band_from_table(self.grid, self.initial_file)
        raise ConfigError(f"initial.kind unknown value {kind!r}")


def _parse_floats(field, text, allowed_counts):
    try:
        values = [float(tok) for tok in text.split()]
    except ValueError:
        raise ConfigError(f"{field} is not a list of numbers: {text!r}") from None
    if len(values) not in allowed_counts:
        raise ConfigError(
            f"{field} needs {' or '.join(map(str, allowed_counts))} numbers"
        )
    return np.array(values)


def _parse_scalar(field, text, kind=float):
    try:
        return kind(text)
    except ValueError:
        raise ConfigError(f"{field} is not a valid {kind.__name__}: {text!r}") from None


def _parse_matrix(field, text):
    values = _parse_floats(field, text, (3, 9))
    matrix = np.diag(values) if values.size == 3 else values.reshape(3, 3)
    if np.max(np.abs(matrix - matrix.T)) > 1e-12:
        raise ConfigError(f"{field} not symmetric")
    if np.min(np.linalg.eigvalsh(matrix)) <= 0.0:
        raise ConfigError(f"{field} not positive definite")
    return matrix


def read_pairs(path):
    pairs = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            key = key.strip()
            if key not in DEFAULTS:
                raise ConfigError(f"{key} is not a recognized setting")
            pairs[key] = value.strip()
    return pairs


def load_config(path):
    settings = dict(DEFAULTS)
    settings.update(read_pairs(path))

    ds = _parse_scalar("grid.ds", settings["grid.ds"])
    dt = _parse_scalar("grid.dt", settings["grid.dt"])
    elements = _parse_scalar("grid.elements", settings["grid.elements"], int)
    if ds <= 0 or dt <= 0:
        raise ConfigError("grid.ds and grid.dt must be positive")
    if elements < 2:
        raise ConfigError("grid.elements must be at least 2")
    grid = RodGrid(ds=ds, dt=dt, s_period=elements)

    rho = _parse_scalar("material.rho", settings["material.rho"])
    if rho < 0:
        raise ConfigError("material.rho must be nonnegative")
    inertia = _parse_floats("material.J", settings["material.J"], (3,))
    if np.any(inertia < 0):
        raise ConfigError("material.J moments must be nonnegative")
    c1 = _parse_matrix("material.C1", settings["material.C1"])
    c2 = _parse_matrix("material.C2", settings["material.C2"])
    rest_strain = _parse_floats("material.e", settings["material.e"], (3,))

    potential_spec = settings["material.potential"].split()
    if potential_spec == ["none"]:
        potential = None
    elif len(potential_spec) == 4 and potential_spec[0] == "linear":
        g = _parse_floats("material.potential", " ".join(potential_spec[1:]), (3,))
        potential = LinearPotential(g)
    else:
        raise ConfigError(
            "material.potential must be 'none' or 'linear gx gy gz'"
        )

    material = uniform_material(
        rho=rho,
        inertia=inertia,
        c1=c1,
        c2=c2,
        rest_strain=rest_strain,
        potential=potential,
    )

    steps = _parse_scalar("steps", settings["steps"], int)
    if steps < 0:
        raise ConfigError("steps must be nonnegative")
    seed = _parse_scalar("seed", settings["seed"], int)
    tol = _parse_scalar("solver.tol", settings["solver.tol"])
    max_iter = _parse_scalar("solver.max_iter", settings["solver.max_iter"], int)
    if tol <= 0 or max_iter < 1:
        raise ConfigError("solver.tol must be positive and solver.max_iter >= 1")

    kind = settings["initial.kind"]
    if kind not in ("rest", "translating", "near-rest", "file"):
        raise ConfigError(f"initial.kind unknown value {kind!r}")
    if kind == "file" and not settings["initial.file"]:
        raise ConfigError("initial.file is required when initial.kind = file")

    return SimulationConfig(
        grid=grid,
        material=material,
        steps=steps,
        seed=seed,
        solver=SolverOptions(tol=tol, max_iter=max_iter),
        initial_kind=kind,
        initial_velocity=_parse_floats(
            "initial.velocity", settings["initial.velocity"], (3,)
        ),
        initial_amplitude=_parse_scalar(
            "initial.amplitude", settings["initial.amplitude"]
        ),
        initial_file=settings["initial.file"],
        initial_r0=_parse_floats("initial.r0", settings["initial.r0"], (3,)),
        initial_rot0=so3.exp(_parse_floats("initial.R0", settings["initial.R0"], (3,))),
    )


_TABLE_FIELDS = (
    "i j rx ry rz R00 R01 R02 R10 R11 R12 R20 R21 R22".split()
)


def _band_from_table(grid, path):
    """Initial band from a CSV table of per-vertex configurations."""
    values = {}
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            reader = csv.DictReader(handle)
            missing = set(_TABLE_FIELDS) - set(reader.fieldnames or ())
            if missing:
                raise ConfigError(
                    f"initial.file missing columns: {sorted(missing)}"
                )
            for row in reader:
                v = (int(row["i"]), int(row["j"]))
                r = np.array([float(row["rx"]), float(row["ry"]), float(row["rz"])])
                rot = np.array(
                    [float(row[f"R{a}{b}"]) for a in range(3) for b in range(3)]
                ).reshape(3, 3)
                if so3.orthonormality_defect(rot) > 1e-8:
                    raise ConfigError(
                        f"initial.file row for vertex {v} is not a rotation"
                    )
                values[v] = RodConfig(r, so3.project_rotation(rot))
    except OSError as err:
        raise ConfigError(f"initial.file cannot be read: {err}") from None
    field = DiscreteField(values, canonical=grid.canonical)
    front_start = max(i + j for (i, j) in field) - 1
    for diagonal in range(front_start - 2, front_start + 2):
        for v in grid.diagonal_vertices(diagonal):
            if v not in field:
                raise ConfigError(f"initial.file does not cover band vertex {v}")
    return field
