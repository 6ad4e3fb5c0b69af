import numpy as np
import pytest

from lplab.fields import GridSpec, SampledField


@pytest.fixture
def grid1d() -> GridSpec:
    return GridSpec(dim=1, n=256, box=1.0)


@pytest.fixture
def grid1d_big() -> GridSpec:
    return GridSpec(dim=1, n=1024, box=1.0)


@pytest.fixture
def grid2d() -> GridSpec:
    return GridSpec(dim=2, n=64, box=1.0)


def random_complex_field(grid: GridSpec, seed: int = 0) -> SampledField:
    rng = np.random.default_rng(seed)
    data = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    return SampledField(grid, data)
