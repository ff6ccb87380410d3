"""Decorrelated log-LMS lab color space.

The classic statistical color-transfer space: RGB is mapped to LMS cone
responses, log10 is taken, and an orthogonal mixing matrix produces one
luminance axis and two nearly independent chrominance axes.  Because the
mixing matrix is orthogonal, the inverse transform is its transpose
followed by a power of ten and the LMS-to-RGB inverse matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .image import as_color

_RGB_TO_LMS = np.array(
    [
        [0.3811, 0.5783, 0.0402],
        [0.1967, 0.7244, 0.0782],
        [0.0241, 0.1288, 0.8444],
    ]
)

_LAB_MIXING = np.array(
    [
        [1.0, 1.0, 1.0],
        [1.0, 1.0, -2.0],
        [1.0, -1.0, 0.0],
    ]
) / np.sqrt([[3.0], [6.0], [2.0]])

# Half an 8-bit quantization step: bounds log10 at about -2.71 so black
# pixels stay finite without distorting any representable 8-bit level.
LOG_FLOOR = 1.0 / 510.0


@dataclass(frozen=True, eq=False)
class LabConversionConstants:
    rgb_to_lms: np.ndarray = field(default_factory=_RGB_TO_LMS.copy)
    lms_to_rgb: np.ndarray = field(default_factory=lambda: np.linalg.inv(_RGB_TO_LMS))
    lab_mixing: np.ndarray = field(default_factory=_LAB_MIXING.copy)
    log_floor: float = LOG_FLOOR


DEFAULT_CONSTANTS = LabConversionConstants()


def rgb_to_lab(img: np.ndarray, k: LabConversionConstants = DEFAULT_CONSTANTS) -> np.ndarray:
    """Map an RGB image in [0, 1] to (lum, chroma1, chroma2) planes.

    LMS responses are floored at ``k.log_floor`` before the logarithm, so
    black pixels convert without singularities.
    """
    img = as_color(img)
    lms = img @ k.rgb_to_lms.T
    np.maximum(lms, k.log_floor, out=lms)
    return np.log10(lms) @ k.lab_mixing.T


def lab_to_rgb(lab: np.ndarray, k: LabConversionConstants = DEFAULT_CONSTANTS) -> np.ndarray:
    """Invert :func:`rgb_to_lab` and clamp the result to the RGB cube."""
    lab = as_color(lab)
    log_lms = lab @ k.lab_mixing  # orthogonal: inverse is the transpose
    rgb = np.power(10.0, log_lms) @ k.lms_to_rgb.T
    return np.clip(rgb, 0.0, 1.0)


def gray_to_lum(levels: np.ndarray, k: LabConversionConstants = DEFAULT_CONSTANTS) -> np.ndarray:
    """Luminance coordinate of achromatic pixels (g, g, g)."""
    g = np.asarray(levels, dtype=np.float64)
    rgb = np.repeat(g.reshape(-1, 1, 1), 3, axis=2)
    return rgb_to_lab(rgb, k)[:, 0, 0].reshape(g.shape)


def lum_range(k: LabConversionConstants = DEFAULT_CONSTANTS) -> tuple[float, float]:
    """Luminance values of black and white; brackets every valid pixel.

    All entries of the RGB-to-LMS matrix are positive, so over the RGB
    cube the log-LMS sum is extremal at the black and white corners.
    """
    lo, hi = gray_to_lum(np.array([0.0, 1.0]), k)
    return float(lo), float(hi)
