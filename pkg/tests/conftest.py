import numpy as np
import pytest

from cellvar import so3
from cellvar.rod import FaceIndex, RodConfig, RodGrid, uniform_material


@pytest.fixture
def rng():
    return np.random.default_rng(20240815)


@pytest.fixture
def grid():
    return RodGrid(ds=0.1, dt=0.05, s_period=8)


@pytest.fixture
def flat_grid():
    # non-periodic: raw node coordinates, used by interpolation oracles
    return RodGrid(ds=0.1, dt=0.05)


@pytest.fixture
def material():
    return uniform_material(
        rho=1.2,
        inertia=(0.6, 0.8, 1.1),
        c1=np.diag([2.0, 1.5, 1.0]),
        c2=np.diag([0.7, 0.9, 1.3]),
    )


def random_rod_config(rng, spread=0.5, shift=1.0):
    return RodConfig(
        rng.uniform(-shift, shift, size=3),
        so3.exp(rng.uniform(-spread, spread, size=3)),
    )


def random_face(rng):
    return FaceIndex(
        int(rng.integers(-3, 4)),
        int(rng.integers(-3, 4)),
        1 if rng.random() < 0.5 else -1,
    )


def random_face_configs(rng, spread=0.5):
    return random_face(rng), [random_rod_config(rng, spread) for _ in range(3)]
