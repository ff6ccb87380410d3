import os

import numpy as np
import pytest

from nirfuse.colorspace import rgb_to_lab
from nirfuse.config import FusionConfig
from nirfuse.denoise import nlm_denoise_color
from nirfuse.pipeline import (
    INTERMEDIATE_NAMES,
    denormalize_lum,
    fuse_denoised,
    gray_lift_table,
    lift_gray_plane,
    normalize_lum,
    run_pipeline,
)
from nirfuse.synthetic import SyntheticSpec, make_test_scene, synthesize_pair


def small_pair(seed=3, size=64, sigma=0.1):
    scene = make_test_scene(size)
    return synthesize_pair(scene, SyntheticSpec(sigma=sigma, seed=seed))


def test_lift_table_is_monotone_and_normalized():
    levels, lums = gray_lift_table()
    assert (np.diff(lums) > 0).all()
    assert lums[0] == 0.0
    assert abs(lums[-1] - 1.0) < 1e-12


def test_lum_normalization_round_trip(rng):
    lum = -rng.uniform(0.0, 4.6, (16, 16))
    np.testing.assert_allclose(denormalize_lum(normalize_lum(lum)), lum, atol=1e-12)


def test_identity_path_reproduces_denoised_vci():
    # noise-free visible image whose luminance the guide matches exactly:
    # with a negligible prior the whole chain is close to the identity
    scene = make_test_scene(64)
    cfg = FusionConfig(mu_c=1e-6)
    denoised = nlm_denoise_color(scene, cfg.nlm_initial)
    target = normalize_lum(rgb_to_lab(denoised)[:, :, 0])
    levels, lums = gray_lift_table()
    ngi = np.interp(target, lums, levels)  # invert the monotone lift
    result = run_pipeline(scene, ngi, cfg)
    assert np.abs(result.fused - result.denoised_vci).max() <= 0.02


def test_fused_image_is_valid(scene):
    vci, ngi, _ = synthesize_pair(scene, SyntheticSpec(sigma=0.1, seed=4))
    result = run_pipeline(vci, ngi)
    assert result.fused.shape == vci.shape
    assert np.isfinite(result.fused).all()
    assert result.fused.min() >= 0.0
    assert result.fused.max() <= 1.0


def test_noise_never_bypasses_initial_denoising():
    # feeding the pre-denoised image into the later stages reproduces
    # the full run bit for bit
    vci, ngi, _ = small_pair()
    cfg = FusionConfig()
    full = run_pipeline(vci, ngi, cfg)
    staged = fuse_denoised(nlm_denoise_color(vci, cfg.nlm_initial), ngi, cfg)
    assert np.array_equal(full.fused, staged.fused)
    assert np.array_equal(full.contrast_ngi, staged.contrast_ngi)
    assert np.array_equal(full.field.slope, staged.field.slope)


def test_two_runs_are_bit_identical():
    vci, ngi, _ = small_pair()
    a = run_pipeline(vci, ngi)
    b = run_pipeline(vci, ngi)
    assert np.array_equal(a.fused, b.fused)


def test_dump_writes_exactly_four_pngs(tmp_path):
    vci, ngi, _ = small_pair(size=32)
    cfg = FusionConfig(dump_intermediates=True)
    run_pipeline(vci, ngi, cfg, dump_dir=str(tmp_path))
    files = sorted(os.listdir(tmp_path))
    assert files == sorted(INTERMEDIATE_NAMES)


def test_dump_flag_without_directory_is_an_error():
    vci, ngi, _ = small_pair(size=32)
    with pytest.raises(ValueError):
        run_pipeline(vci, ngi, FusionConfig(dump_intermediates=True))


def test_dimension_mismatch_rejected():
    vci, ngi, _ = small_pair(size=32)
    with pytest.raises(ValueError):
        run_pipeline(vci, ngi[:-1])


def test_lift_gray_plane_matches_direct_conversion(rng):
    from nirfuse.colorspace import gray_to_lum

    # exact at the 8-bit table nodes
    nodes = (np.arange(256) / 255.0).reshape(16, 16)
    np.testing.assert_allclose(
        lift_gray_plane(nodes), normalize_lum(gray_to_lum(nodes)), atol=1e-12
    )
    # between nodes the interpolation error follows the log curvature;
    # away from black it stays small
    plane = 0.05 + 0.95 * rng.random((8, 8))
    lifted = lift_gray_plane(plane)
    direct = normalize_lum(gray_to_lum(plane))
    np.testing.assert_allclose(lifted, direct, atol=2e-4)
