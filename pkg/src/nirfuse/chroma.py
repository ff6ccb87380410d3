"""Color transfer: chrominance correction and final assembly.

The contrast transfer's slope field encodes how strongly each guide
pixel was amplified to match the visible luminance.  Dividing the
denoised visible chrominance by that slope re-balances saturation for
the new luminance plane; the corrected chrominance is then recombined
with the new luminance in the decorrelated color space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .colorspace import DEFAULT_CONSTANTS, LabConversionConstants, lab_to_rgb
from .contrast import AffineMapField
from .image import as_color, as_plane


@dataclass
class SlopeClamp:
    """Guards for the per-pixel division by the slope field.

    Slopes below ``eps_slope`` (including negative ones, which would
    flip hue) are raised to it, and the resulting chroma gain is capped
    at ``max_gain`` so near-zero slopes cannot blow up saturation.
    """

    eps_slope: float = 0.2
    max_gain: float = 5.0

    def validate(self) -> None:
        if not 0 < self.eps_slope <= 1:
            raise ValueError(f"eps_slope must be in (0, 1], got {self.eps_slope}")
        if not self.max_gain >= 1:
            raise ValueError(f"max_gain must be >= 1, got {self.max_gain}")


def chroma_gain(slope: np.ndarray, clamp: SlopeClamp) -> np.ndarray:
    """Per-pixel chroma gain min(1 / max(slope, eps_slope), max_gain)."""
    clamp.validate()
    return np.minimum(1.0 / np.maximum(slope, clamp.eps_slope), clamp.max_gain)


def transfer_chroma(
    vci_lab: np.ndarray,
    field: AffineMapField,
    clamp: SlopeClamp | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Divide both chrominance planes by the clamped slope field."""
    lab = as_color(vci_lab)
    slope = as_plane(field.slope)
    if slope.shape != lab.shape[:2]:
        raise ValueError(f"slope shape {slope.shape} does not match image {lab.shape[:2]}")
    gain = chroma_gain(slope, clamp or SlopeClamp())
    return lab[:, :, 1] * gain, lab[:, :, 2] * gain


def assemble_fused(
    new_ngi_lum: np.ndarray,
    alpha: np.ndarray,
    beta: np.ndarray,
    k: LabConversionConstants = DEFAULT_CONSTANTS,
) -> np.ndarray:
    """Stack (lum, chroma1, chroma2) and convert back to RGB.

    ``new_ngi_lum`` must be in luminance-coordinate units of the
    decorrelated space.  The output is clamped to the RGB cube.
    """
    lum = as_plane(new_ngi_lum)
    a = as_plane(alpha)
    b = as_plane(beta)
    if not (lum.shape == a.shape == b.shape):
        raise ValueError("luminance and chrominance planes must share dimensions")
    return lab_to_rgb(np.stack([lum, a, b], axis=2), k)
