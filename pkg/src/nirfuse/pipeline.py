"""End-to-end fusion: denoise, then contrast, detail, and color transfers.

Stage order:

  1. non-local means denoising of the visible color image (joint
     weights, so no noise leaks into any later stage);
  2. conversion to the decorrelated color space;
  3. contrast transfer of the gray guide onto the denoised luminance;
  4. detail transfer from the captured guide onto the remapped guide;
  5. chrominance correction by the slope field;
  6. recombination and conversion back to RGB.

The contrast and detail solvers are tuned for planes in [0, 1], while
raw luminance coordinates of the log-based color space are negative.
The pipeline therefore works in *normalized* luminance units: the
affine map sending the space's black/white luminance range onto [0, 1].
The guide plane enters those units through a precomputed 256-entry
gray-level table, and the enhanced luminance is mapped back to raw
units just before recombination.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import image
from .chroma import assemble_fused, transfer_chroma
from .colorspace import DEFAULT_CONSTANTS, LabConversionConstants, gray_to_lum, lum_range, rgb_to_lab
from .config import FusionConfig
from .contrast import AffineMapField, contrast_transfer
from .denoise import nlm_denoise_color
from .detail import detail_transfer
from .image import as_color, as_plane

INTERMEDIATE_NAMES = (
    "01_denoised_vci.png",
    "02_contrast_ngi.png",
    "03_detail_ngi.png",
    "04_slope_field.png",
)


@dataclass
class FusionResult:
    """Fused image plus the per-stage intermediates.

    ``contrast_ngi`` and ``detail_ngi`` are in normalized luminance
    units ([0, 1]), directly viewable as grayscale images.
    """

    fused: np.ndarray
    denoised_vci: np.ndarray
    contrast_ngi: np.ndarray
    detail_ngi: np.ndarray
    field: AffineMapField


def normalize_lum(lum: np.ndarray, k: LabConversionConstants = DEFAULT_CONSTANTS) -> np.ndarray:
    """Map raw luminance coordinates onto [0, 1] nominal units."""
    lo, hi = lum_range(k)
    return (np.asarray(lum, dtype=np.float64) - lo) / (hi - lo)


def denormalize_lum(u: np.ndarray, k: LabConversionConstants = DEFAULT_CONSTANTS) -> np.ndarray:
    lo, hi = lum_range(k)
    return lo + np.asarray(u, dtype=np.float64) * (hi - lo)


def gray_lift_table(k: LabConversionConstants = DEFAULT_CONSTANTS, n: int = 256) -> tuple[np.ndarray, np.ndarray]:
    """Monotone table: gray level in [0, 1] -> normalized luminance."""
    levels = np.linspace(0.0, 1.0, n)
    return levels, normalize_lum(gray_to_lum(levels, k), k)


def lift_gray_plane(plane: np.ndarray, k: LabConversionConstants = DEFAULT_CONSTANTS) -> np.ndarray:
    """Lift a gray intensity plane into normalized luminance units."""
    levels, lums = gray_lift_table(k)
    return np.interp(as_plane(plane), levels, lums)


def fuse_denoised(
    denoised_vci: np.ndarray,
    ngi: np.ndarray,
    cfg: FusionConfig | None = None,
    k: LabConversionConstants = DEFAULT_CONSTANTS,
) -> FusionResult:
    """Run stages 2-6 on an already noise-free visible image."""
    cfg = cfg or FusionConfig()
    cfg.validate()
    denoised = as_color(denoised_vci)
    guide = as_plane(ngi)
    if denoised.shape[:2] != guide.shape:
        raise ValueError(
            f"image dimensions differ: vci {denoised.shape[:2]} vs ngi {guide.shape}"
        )

    lab = rgb_to_lab(denoised, k)
    vci_lum = normalize_lum(lab[:, :, 0], k)
    guide_lum = lift_gray_plane(guide, k)

    new_lum, field = contrast_transfer(vci_lum, guide_lum, m=cfg.patch_m, mu_c=cfg.mu_c)
    enhanced_lum = detail_transfer(new_lum, guide_lum, nlm=cfg.nlm_base, solver=cfg.detail_solver)
    alpha, beta = transfer_chroma(lab, field, cfg.slope_clamp)
    fused = assemble_fused(denormalize_lum(enhanced_lum, k), alpha, beta, k)

    return FusionResult(
        fused=fused,
        denoised_vci=denoised,
        contrast_ngi=new_lum,
        detail_ngi=enhanced_lum,
        field=field,
    )


def run_pipeline(
    vci: np.ndarray,
    ngi: np.ndarray,
    cfg: FusionConfig | None = None,
    k: LabConversionConstants = DEFAULT_CONSTANTS,
    dump_dir: str | None = None,
) -> FusionResult:
    """Full fusion of a noisy visible image with a clean gray guide."""
    cfg = cfg or FusionConfig()
    cfg.validate()
    vci_img = as_color(vci)
    guide = as_plane(ngi)
    if vci_img.shape[:2] != guide.shape:
        raise ValueError(
            f"image dimensions differ: vci {vci_img.shape[:2]} vs ngi {guide.shape}"
        )

    denoised = nlm_denoise_color(vci_img, cfg.nlm_initial)
    result = fuse_denoised(denoised, guide, cfg, k)

    if cfg.dump_intermediates:
        if dump_dir is None:
            raise ValueError("dump_intermediates is set but no dump directory was given")
        dump_intermediates(result, dump_dir)
    return result


def dump_intermediates(result: FusionResult, dump_dir: str) -> None:
    """Write the four per-stage images as 8-bit PNGs."""
    os.makedirs(dump_dir, exist_ok=True)
    image.save_rgb(os.path.join(dump_dir, INTERMEDIATE_NAMES[0]), result.denoised_vci)
    image.save_gray(os.path.join(dump_dir, INTERMEDIATE_NAMES[1]), result.contrast_ngi)
    image.save_gray(os.path.join(dump_dir, INTERMEDIATE_NAMES[2]), result.detail_ngi)
    slope = result.field.slope
    span = slope.max() - slope.min()
    viz = (slope - slope.min()) / span if span > 0 else np.zeros_like(slope)
    image.save_gray(os.path.join(dump_dir, INTERMEDIATE_NAMES[3]), viz)
