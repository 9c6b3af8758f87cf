from __future__ import annotations

import numpy as np
import pytest

from modgrid.palette import default_palette


@pytest.fixture(scope="session")
def palette10():
    """The shipped 10-module palette at profile order 3."""
    return default_palette(10, 3)


@pytest.fixture(scope="session")
def palette10_s2():
    return default_palette(10, 2)


def make_gradient_image(width: int = 256, height: int = 256) -> np.ndarray:
    """Horizontal linear gradient, black at x=0 to white at x=width-1."""
    ramp = np.linspace(0, 255, width).round().astype(np.uint8)
    img = np.zeros((height, width, 3), dtype=np.uint8)
    img[:, :, :] = ramp[None, :, None]
    return img


def make_random_image(rng: np.random.Generator, width: int, height: int) -> np.ndarray:
    return rng.integers(0, 256, size=(height, width, 3), dtype=np.uint8)
