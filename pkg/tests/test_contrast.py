import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nirfuse.contrast import (
    PatchSystem,
    compute_prior,
    contrast_transfer,
    distance_weights,
    patch_system_at,
    solve_affine,
)


def lstsq_oracle(sys: PatchSystem) -> np.ndarray:
    """Minimizer of the weighted data term plus prior, via the stacked
    least-squares system [sqrt(W) Q; sqrt(mu) I] s = [sqrt(W) p; sqrt(mu) s0].
    """
    n = sys.q.size
    design = np.column_stack([sys.q, np.ones(n)])
    sw = np.sqrt(sys.w)
    a = np.vstack([sw[:, None] * design, np.sqrt(sys.mu_c) * np.eye(2)])
    b = np.concatenate([sw * sys.p, np.sqrt(sys.mu_c) * sys.s0])
    return np.linalg.lstsq(a, b, rcond=None)[0]


def random_system(rng, mu_c, m=5):
    return PatchSystem(
        p=rng.uniform(0.0, 1.0, m * m),
        q=rng.uniform(0.0, 1.0, m * m),
        w=distance_weights(m),
        s0=rng.uniform(-1.0, 2.0, 2),
        mu_c=mu_c,
    )


class TestDistanceWeights:
    def test_single_pixel(self):
        np.testing.assert_array_equal(distance_weights(1), [1.0])

    def test_3x3_values(self):
        w = distance_weights(3).reshape(3, 3)
        assert w[1, 1] == 1.0
        assert w[0, 1] == w[1, 0] == w[1, 2] == w[2, 1] == 0.5
        diag = 1.0 / (1.0 + np.sqrt(2.0))
        np.testing.assert_allclose([w[0, 0], w[0, 2], w[2, 0], w[2, 2]], diag)

    def test_5x5_matches_loop_oracle(self):
        got = distance_weights(5)
        total = 0.0
        for dr in range(-2, 3):
            for dc in range(-2, 3):
                total += 1.0 / (1.0 + np.sqrt(dr * dr + dc * dc))
        assert abs(got.sum() - total) < 1e-12

    def test_center_is_maximum_and_symmetric(self):
        w = distance_weights(7).reshape(7, 7)
        assert w[3, 3] == w.max() == 1.0
        np.testing.assert_array_equal(w, w[::-1, :])
        np.testing.assert_array_equal(w, w[:, ::-1])

    def test_rejects_even_side(self):
        with pytest.raises(ValueError):
            distance_weights(4)


class TestComputePrior:
    def test_equal_constant_patches(self):
        patch = np.full(9, 0.4)
        np.testing.assert_allclose(compute_prior(patch, patch.copy()), [1.0, 0.0], atol=1e-12)

    def test_center_spike_ratio(self):
        patch = np.array([1, 1, 1, 1, 2, 1, 1, 1, 1], dtype=float)
        s0 = compute_prior(patch, patch.copy())
        np.testing.assert_allclose(s0, [1.8, 0.0], atol=1e-12)

    def test_flat_guide_defers_to_visible_ratio(self):
        flat = np.full(9, 0.5)
        vci = np.array([0.2, 0.3, 0.4, 0.5, 0.9, 0.5, 0.4, 0.3, 0.2])
        s0 = compute_prior(flat, vci)
        r_v = vci[4] / vci.mean()
        np.testing.assert_allclose(s0, [r_v, 0.0], atol=1e-12)

    def test_bias_prior_is_always_zero(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            s0 = compute_prior(rng.random(25), rng.random(25))
            assert s0[1] == 0.0


class TestSolveAffine:
    def test_exact_affine_relation_recovered(self):
        rng = np.random.default_rng(7)
        q = rng.uniform(0.0, 1.0, 25)
        sys = PatchSystem(
            p=2.0 * q + 1.0, q=q, w=distance_weights(5), s0=np.array([0.3, 0.0]), mu_c=1e-12
        )
        np.testing.assert_allclose(solve_affine(sys), [2.0, 1.0], atol=1e-6)

    def test_prior_dominates_for_large_mu(self):
        rng = np.random.default_rng(8)
        sys = random_system(rng, mu_c=1e12)
        sys.s0 = np.array([1.5, 0.0])
        assert np.linalg.norm(solve_affine(sys) - sys.s0) <= 1e-6

    def test_matches_least_squares_oracle(self):
        rng = np.random.default_rng(42)
        worst = 0.0
        for _ in range(200):
            for mu in (0.01, 0.1, 1.0):
                sys = random_system(rng, mu)
                worst = max(worst, np.abs(solve_affine(sys) - lstsq_oracle(sys)).max())
        assert worst <= 1e-8

    def test_rejects_nonpositive_mu(self):
        sys = random_system(np.random.default_rng(1), mu_c=0.1)
        sys.mu_c = 0.0
        with pytest.raises(ValueError):
            solve_affine(sys)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 100_000), mu=st.sampled_from([1e-3, 0.05, 1.0, 100.0]))
def test_solver_oracle_property(seed, mu):
    sys = random_system(np.random.default_rng(seed), mu)
    np.testing.assert_allclose(solve_affine(sys), lstsq_oracle(sys), atol=1e-8)


def smooth_random_plane(shape, seed, lo=0.1, hi=0.9):
    rng = np.random.default_rng(seed)
    x = rng.random(shape)
    x = (x + np.roll(x, 1, 0) + np.roll(x, 1, 1) + np.roll(x, 2, 1)) / 4.0
    x = (x - x.min()) / (x.max() - x.min())
    return lo + (hi - lo) * x


class TestContrastTransfer:
    def test_identical_planes_map_to_themselves(self):
        plane = smooth_random_plane((64, 64), seed=3)
        new, _ = contrast_transfer(plane, plane.copy(), m=5, mu_c=1e-6)
        np.testing.assert_allclose(new, plane, atol=1e-3)

    def test_global_affine_relation_is_reproduced(self):
        ngi = smooth_random_plane((64, 64), seed=4)
        target = np.clip(0.7 * ngi + 0.2, 0.0, 1.0)
        new, field = contrast_transfer(target, ngi, m=5, mu_c=1e-6)
        np.testing.assert_allclose(new, target, atol=1e-3)

    def test_constant_guide_stays_finite(self):
        vci = smooth_random_plane((32, 32), seed=5)
        ngi = np.full((32, 32), 0.5)
        new, field = contrast_transfer(vci, ngi, m=5, mu_c=0.05)
        assert np.isfinite(new).all()
        assert np.isfinite(field.slope).all()
        assert np.isfinite(field.bias).all()

    def test_output_is_affine_rerender_of_guide(self):
        # no visible pixel enters the output except through the two
        # per-pixel scalars
        vci = smooth_random_plane((32, 32), seed=6)
        ngi = smooth_random_plane((32, 32), seed=7)
        new, field = contrast_transfer(vci, ngi, m=5, mu_c=0.05)
        np.testing.assert_array_equal(
            new, np.clip(ngi * field.slope + field.bias, 0.0, 1.0)
        )

    def test_matches_per_pixel_solves(self):
        vci = smooth_random_plane((16, 16), seed=8)
        ngi = smooth_random_plane((16, 16), seed=9)
        new, field = contrast_transfer(vci, ngi, m=5, mu_c=0.05)
        for row in range(16):
            for col in range(16):
                s = solve_affine(patch_system_at(vci, ngi, row, col, 5, 0.05))
                assert abs(s[0] - field.slope[row, col]) < 1e-10
                assert abs(s[1] - field.bias[row, col]) < 1e-10

    def test_slope_field_brackets_one_for_identical_planes(self):
        plane = smooth_random_plane((48, 48), seed=10)
        _, field = contrast_transfer(plane, plane.copy(), m=5, mu_c=1e-3)
        interior = field.slope[2:-2, 2:-2]
        assert interior.min() <= 1.0 <= interior.max()
        np.testing.assert_allclose(interior, 1.0, atol=0.05)

    def test_rejects_mismatched_shapes(self):
        with pytest.raises(ValueError):
            contrast_transfer(np.zeros((8, 8)), np.zeros((8, 9)))

    def test_smooth_guide_output_is_deterministic_rerender(self):
        # noise in the visible plane reaches the output only through the
        # slope/bias fields: re-rendering with the returned field is bitwise
        rng = np.random.default_rng(11)
        ngi = smooth_random_plane((32, 32), seed=12)
        vci = np.clip(smooth_random_plane((32, 32), seed=13) + rng.normal(0, 0.05, (32, 32)), 0, 1)
        new, field = contrast_transfer(vci, ngi, m=5, mu_c=0.05)
        np.testing.assert_array_equal(new, np.clip(ngi * field.slope + field.bias, 0, 1))
