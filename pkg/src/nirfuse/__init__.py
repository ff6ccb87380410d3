"""Noise removal by fusing a noisy visible color image with a clean
near-infrared gray guide, via contrast, detail, and color transfers."""

from .chroma import SlopeClamp, assemble_fused, chroma_gain, transfer_chroma
from .colorspace import DEFAULT_CONSTANTS, LabConversionConstants, lab_to_rgb, rgb_to_lab
from .config import FusionConfig, config_from_dict, config_to_dict, load_config, save_config
from .contrast import (
    AffineMapField,
    PatchSystem,
    compute_prior,
    contrast_transfer,
    distance_weights,
    patch_system_at,
    solve_affine,
)
from .denoise import NlmParams, estimate_sigma, nlm_denoise_color, nlm_denoise_plane
from .detail import (
    DetailSolverParams,
    LayerPair,
    decompose_layers,
    detail_transfer,
    soft_threshold,
    solve_detail,
)
from .image import extract_patch, load_gray, load_rgb, save_gray, save_rgb
from .metrics import mean_gradient_magnitude, psnr
from .pipeline import FusionResult, fuse_denoised, lift_gray_plane, run_pipeline
from .synthetic import SyntheticSpec, make_test_scene, synthesize_pair

__version__ = "0.1.0"

__all__ = [
    "AffineMapField",
    "DEFAULT_CONSTANTS",
    "DetailSolverParams",
    "FusionConfig",
    "FusionResult",
    "LabConversionConstants",
    "LayerPair",
    "NlmParams",
    "PatchSystem",
    "SlopeClamp",
    "SyntheticSpec",
    "assemble_fused",
    "chroma_gain",
    "compute_prior",
    "config_from_dict",
    "config_to_dict",
    "contrast_transfer",
    "decompose_layers",
    "detail_transfer",
    "distance_weights",
    "estimate_sigma",
    "extract_patch",
    "fuse_denoised",
    "lab_to_rgb",
    "lift_gray_plane",
    "load_config",
    "load_gray",
    "load_rgb",
    "make_test_scene",
    "mean_gradient_magnitude",
    "nlm_denoise_color",
    "nlm_denoise_plane",
    "patch_system_at",
    "psnr",
    "rgb_to_lab",
    "run_pipeline",
    "save_config",
    "save_gray",
    "save_rgb",
    "solve_affine",
    "solve_detail",
    "soft_threshold",
    "synthesize_pair",
]
