"""Synthetic VCI/NGI pair generation for desk-scale validation.

Real capture rigs produce a noisy visible color image plus a clean but
brightness-inconsistent near-infrared gray image; no such data ships
with this package, so the harness manufactures a pair from any clean
color image: additive Gaussian noise makes the VCI, and the NGI is the
clean luminance warped by a smooth brightness field with edges erased
in a chosen region, reproducing the two discrepancy modes the transfers
are supposed to fix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .image import as_color, luminance

Rect = tuple[int, int, int, int]  # (top, left, height, width)


@dataclass
class SyntheticSpec:
    """Recipe for one synthetic pair.

    sigma: std of the additive Gaussian noise on the VCI.
    brightness: amplitude of the smooth multiplicative field on the NGI.
    erase_rect: optional (top, left, height, width) region whose NGI
        content is flattened to its mean, erasing all edges there.
    seed: RNG seed; the pair is deterministic given the seed.
    """

    sigma: float = 0.1
    brightness: float = 0.0
    erase_rect: Rect | None = None
    seed: int = 0

    def validate(self, shape: tuple[int, int]) -> None:
        if self.sigma < 0:
            raise ValueError(f"sigma must be non-negative, got {self.sigma}")
        if self.erase_rect is not None:
            top, left, height, width = self.erase_rect
            if height <= 0 or width <= 0:
                raise ValueError(f"erase_rect must have positive size, got {self.erase_rect}")
            if top < 0 or left < 0 or top + height > shape[0] or left + width > shape[1]:
                raise ValueError(f"erase_rect {self.erase_rect} outside {shape} image")


def brightness_pattern(height: int, width: int) -> np.ndarray:
    """Smooth low-frequency pattern in [-1, 1], one lobe per axis."""
    yy = np.arange(height, dtype=np.float64)[:, None] / height
    xx = np.arange(width, dtype=np.float64)[None, :] / width
    return np.sin(2.0 * np.pi * xx) * np.cos(np.pi * yy)


def rect_mask(shape: tuple[int, int], rect: Rect) -> np.ndarray:
    mask = np.zeros(shape, dtype=bool)
    top, left, height, width = rect
    mask[top : top + height, left : left + width] = True
    return mask


def synthesize_pair(clean: np.ndarray, spec: SyntheticSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Build (vci, ngi, clean_ref) from a clean color image.

    The VCI is the clean image plus i.i.d. Gaussian noise, clamped to
    [0, 1].  The NGI is the channel-average luminance multiplied by the
    smooth brightness field; inside ``erase_rect`` it is replaced by the
    region mean so no gradients survive there.
    """
    clean = as_color(clean)
    shape = clean.shape[:2]
    spec.validate(shape)

    rng = np.random.default_rng(spec.seed)
    vci = np.clip(clean + rng.normal(0.0, spec.sigma, size=clean.shape), 0.0, 1.0)

    ngi = luminance(clean)
    if spec.brightness != 0.0:
        ngi = ngi * (1.0 + spec.brightness * brightness_pattern(*shape))
    if spec.erase_rect is not None:
        mask = rect_mask(shape, spec.erase_rect)
        ngi = ngi.copy()
        ngi[mask] = ngi[mask].mean()
    ngi = np.clip(ngi, 0.0, 1.0)

    return vci, ngi, clean.copy()


def make_test_scene(size: int = 128) -> np.ndarray:
    """Deterministic clean color scene used by the validation suite.

    Mimics a desk capture: an illumination gradient, a 2x2 color chart,
    a bowl-like disk crossed by a thin red ring, and a textured region,
    so the scene carries strong chroma, sharp edges, and fine detail.
    """
    rng = np.random.default_rng(0)
    yy = np.arange(size, dtype=np.float64)[:, None] / size
    xx = np.arange(size, dtype=np.float64)[None, :] / size

    base = 0.35 + 0.25 * xx + 0.10 * yy
    img = np.stack([base * 1.06, base, base * 0.94], axis=2)

    # 2x2 color chart in the upper-left quarter
    chart = [
        ((0.10, 0.10), (0.80, 0.20, 0.20)),
        ((0.10, 0.26), (0.20, 0.70, 0.30)),
        ((0.26, 0.10), (0.20, 0.30, 0.80)),
        ((0.26, 0.26), (0.85, 0.75, 0.25)),
    ]
    side = max(2, int(0.13 * size))
    for (ty, tx), color in chart:
        r0, c0 = int(ty * size), int(tx * size)
        img[r0 : r0 + side, c0 : c0 + side] = color

    # bowl: a disk with a thin bright red ring across it
    cy, cx = 0.62 * size, 0.55 * size
    rr = np.hypot(yy * size - cy, xx * size - cx)
    disk = rr < 0.27 * size
    img[disk] = (0.58, 0.42, 0.30)
    ring = np.abs(rr - 0.18 * size) < max(1.0, 0.012 * size)
    img[ring] = (0.78, 0.12, 0.12)

    # fine texture in the lower-right corner
    tex = rng.normal(0.0, 1.0, size=(size, size))
    tex = (tex + np.roll(tex, 1, axis=0) + np.roll(tex, 1, axis=1)) / 3.0
    region = (yy > 0.72) & (xx > 0.62)
    img += 0.05 * (tex * region)[:, :, None]

    return np.clip(img, 0.0, 1.0)
