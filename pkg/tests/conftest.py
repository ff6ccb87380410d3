import os

import numpy as np
import pytest

from nirfuse.image import load_rgb

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
SCENE_PATH = os.path.join(DATA_DIR, "scene_128.png")

# Erased-region rectangle used by the synthetic acceptance runs; sits on
# the bowl disk boundary and the red ring, both strong luminance edges.
ERASE_RECT = (68, 38, 24, 24)


@pytest.fixture(scope="session")
def scene():
    """Bundled 128x128 clean test scene."""
    return load_rgb(SCENE_PATH)


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
