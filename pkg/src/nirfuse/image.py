"""Image containers, patch extraction, and 8-bit PNG I/O.

Planes are 2-D float64 arrays with samples nominally in [0, 1]; color
images are (H, W, 3) float64 arrays in RGB order.  All functions treat
their inputs as immutable and return fresh arrays.
"""

from __future__ import annotations

import numpy as np
from PIL import Image


def as_plane(a) -> np.ndarray:
    """Coerce to a 2-D float64 plane, validating the shape."""
    p = np.asarray(a, dtype=np.float64)
    if p.ndim != 2 or p.size == 0:
        raise ValueError(f"expected a non-empty 2-D plane, got shape {p.shape}")
    return p


def as_color(a) -> np.ndarray:
    """Coerce to an (H, W, 3) float64 color image, validating the shape."""
    img = np.asarray(a, dtype=np.float64)
    if img.ndim != 3 or img.shape[2] != 3 or img.shape[0] == 0 or img.shape[1] == 0:
        raise ValueError(f"expected a non-empty (H, W, 3) image, got shape {img.shape}")
    return img


def extract_patch(plane: np.ndarray, row: int, col: int, m: int) -> np.ndarray:
    """Extract the m-by-m window centered at (row, col).

    Out-of-bounds coordinates are filled by replicating the nearest edge
    pixel, so patch means stay meaningful at the border.  Returns an
    (m, m) array; the center value is ``patch[m // 2, m // 2]``.
    """
    plane = as_plane(plane)
    if m < 1 or m % 2 == 0:
        raise ValueError(f"patch side must be a positive odd integer, got {m}")
    h, w = plane.shape
    if not (0 <= row < h and 0 <= col < w):
        raise ValueError(f"center ({row}, {col}) outside {h}x{w} plane")
    r = m // 2
    rows = np.clip(np.arange(row - r, row + r + 1), 0, h - 1)
    cols = np.clip(np.arange(col - r, col + r + 1), 0, w - 1)
    return plane[np.ix_(rows, cols)]


def luminance(img: np.ndarray) -> np.ndarray:
    """Channel-average gray plane of an RGB image."""
    return as_color(img).mean(axis=2)


def to_uint8(a: np.ndarray) -> np.ndarray:
    """Clamp to [0, 1] and round to the nearest of 256 levels."""
    return np.rint(np.clip(a, 0.0, 1.0) * 255.0).astype(np.uint8)


def from_uint8(a: np.ndarray) -> np.ndarray:
    return np.asarray(a, dtype=np.float64) / 255.0


def load_rgb(path) -> np.ndarray:
    """Load an 8-bit PNG as an (H, W, 3) float64 image in [0, 1].

    Alpha channels are dropped; grayscale files are replicated to three
    channels.
    """
    with Image.open(path) as im:
        im = im.convert("RGB")
        arr = np.asarray(im, dtype=np.uint8)
    return from_uint8(arr)


def load_gray(path) -> np.ndarray:
    """Load an 8-bit PNG as a float64 plane in [0, 1].

    RGB files are accepted and converted by channel average.
    """
    with Image.open(path) as im:
        if im.mode in ("L", "I;16", "I"):
            arr = np.asarray(im.convert("L"), dtype=np.uint8)
            return from_uint8(arr)
        arr = np.asarray(im.convert("RGB"), dtype=np.uint8)
    return from_uint8(arr).mean(axis=2)


def save_rgb(path, img: np.ndarray) -> None:
    Image.fromarray(to_uint8(as_color(img)), mode="RGB").save(path, format="PNG")


def save_gray(path, plane: np.ndarray) -> None:
    Image.fromarray(to_uint8(as_plane(plane)), mode="L").save(path, format="PNG")
