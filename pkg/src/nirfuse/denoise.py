"""Non-local means filtering and noise-level estimation.

Used in two places: cleaning the visible color image before any transfer
runs, and splitting planes into base and detail layers.  The filter is
the classic patch-comparison form: every pixel becomes a weighted
average of the pixels in its search window, with weights driven by the
similarity of the surrounding patches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .image import as_color, as_plane

# Filtering strength when not set explicitly: h = 0.75 * estimated noise
# std, floored so smooth inputs still get a well-defined (nearly
# identity) filter.
H_SIGMA_FACTOR = 0.75
H_FLOOR = 0.02

# Sum of squared entries of the 4-neighbor Laplacian kernel; the kernel
# response to unit-variance white noise has variance 20.
_LAPLACIAN_NORM = math.sqrt(20.0)
_MAD_TO_STD = 1.0 / 0.6745


@dataclass
class NlmParams:
    """Patch radius r_p (side 2*r_p+1), search radius r_s, strength h.

    ``h=None`` selects the automatic strength derived from the input's
    estimated noise level.  The center pixel always carries weight 1.
    """

    patch_radius: int = 3
    search_radius: int = 10
    h: float | None = None

    def validate(self) -> None:
        if self.patch_radius < 1:
            raise ValueError(f"patch_radius must be >= 1, got {self.patch_radius}")
        if self.search_radius < self.patch_radius:
            raise ValueError(
                f"search_radius ({self.search_radius}) must be >= patch_radius"
                f" ({self.patch_radius})"
            )
        if self.h is not None and not self.h > 0:
            raise ValueError(f"h must be positive, got {self.h}")


def estimate_sigma(plane: np.ndarray) -> float:
    """Robust additive-noise std estimate from the Laplacian response.

    The 4-neighbor Laplacian annihilates locally affine structure, so
    its interior response is dominated by noise; the MAD makes the
    estimate robust to the edges that remain.
    """
    p = as_plane(plane)
    if p.shape[0] < 3 or p.shape[1] < 3:
        raise ValueError(f"plane must be at least 3x3, got {p.shape}")
    lap = (
        p[:-2, 1:-1] + p[2:, 1:-1] + p[1:-1, :-2] + p[1:-1, 2:]
        - 4.0 * p[1:-1, 1:-1]
    )
    mad = np.median(np.abs(lap - np.median(lap)))
    return float(mad * _MAD_TO_STD / _LAPLACIAN_NORM)


def nlm_denoise_plane(plane: np.ndarray, params: NlmParams | None = None) -> np.ndarray:
    """Non-local means filter of a single plane."""
    p = as_plane(plane)
    out = _nlm(p[np.newaxis], params)[0]
    return out


def nlm_denoise_color(img: np.ndarray, params: NlmParams | None = None) -> np.ndarray:
    """Non-local means with one joint weight field for all three channels.

    Patch distances are averaged over channels, and the resulting weight
    field is applied identically to each channel, so chroma and
    luminance stay aligned.
    """
    rgb = as_color(img)
    stack = np.moveaxis(rgb, 2, 0)
    return np.moveaxis(_nlm(stack, params), 0, 2)


def _auto_sigma2(stack: np.ndarray) -> float:
    """Mean per-channel noise variance; 0 for degenerate planes."""
    if stack.shape[1] < 3 or stack.shape[2] < 3:
        return 0.0
    return float(np.mean([estimate_sigma(c) ** 2 for c in stack]))


def _nlm(stack: np.ndarray, params: NlmParams | None) -> np.ndarray:
    params = params or NlmParams()
    params.validate()
    rp, rs = params.patch_radius, params.search_radius
    m = 2 * rp + 1
    nch, height, width = stack.shape

    sigma2 = _auto_sigma2(stack)
    h = params.h if params.h is not None else max(H_SIGMA_FACTOR * math.sqrt(sigma2), H_FLOOR)
    inv_h2 = 1.0 / (h * h)

    padded = [np.pad(c, rp, mode="edge") for c in stack]

    # out = x + sum_j w_j (x_j - x) / (1 + sum_j w_j): the center anchors
    # the average with weight 1, so constant inputs are exact fixed
    # points and the h -> 0 limit is the identity.
    wsum = np.zeros((height, width))
    shift = np.zeros((nch, height, width))
    for dy in range(-rs, rs + 1):
        for dx in range(-rs, rs + 1):
            if dy == 0 and dx == 0:
                continue
            r0, r1 = max(0, -dy), height - max(0, dy)
            c0, c1 = max(0, -dx), width - max(0, dx)
            if r0 >= r1 or c0 >= c1:
                continue
            hh, ww = r1 - r0, c1 - c0
            diff2 = np.zeros((hh + 2 * rp, ww + 2 * rp))
            for pc in padded:
                a = pc[r0 : r0 + hh + 2 * rp, c0 : c0 + ww + 2 * rp]
                b = pc[r0 + dy : r0 + dy + hh + 2 * rp, c0 + dx : c0 + dx + ww + 2 * rp]
                diff2 += (a - b) ** 2
            d2 = _box_sum_valid(diff2, m) / (m * m * nch)
            w = np.exp(-np.maximum(d2 - 2.0 * sigma2, 0.0) * inv_h2)
            wsum[r0:r1, c0:c1] += w
            for c in range(nch):
                xi = stack[c, r0:r1, c0:c1]
                xj = stack[c, r0 + dy : r1 + dy, c0 + dx : c1 + dx]
                shift[c, r0:r1, c0:c1] += w * (xj - xi)

    out = stack + shift / (1.0 + wsum)
    for c in range(nch):  # guard 1-ulp excursions of the convex average
        np.clip(out[c], stack[c].min(), stack[c].max(), out=out[c])
    return out


def _box_sum_valid(a: np.ndarray, m: int) -> np.ndarray:
    """Sum over every m-by-m window (valid positions only).

    Direct shifted accumulation: summation order is independent of the
    pixel position, which keeps the filter exactly shift-equivariant.
    """
    hh = a.shape[0] - m + 1
    ww = a.shape[1] - m + 1
    out = np.zeros((hh, ww))
    for u in range(m):
        for v in range(m):
            out += a[u : u + hh, v : v + ww]
    return out
