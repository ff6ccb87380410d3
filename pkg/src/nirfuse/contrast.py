"""Contrast transfer: per-pixel affine remapping of the gray guide image.

For every pixel, the patch of the near-infrared guide is regressed onto
the corresponding patch of the denoised visible luminance under
distance-based weights, regularized toward a local-contrast prior
(center-to-mean brightness ratio).  The fitted slope and bias re-render
the guide pixel, producing a noise-free luminance plane whose local
brightness and edges follow the visible image.  The slope field is kept:
it later drives the chrominance correction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .image import as_plane, extract_patch

EPS_AVG = 1e-4


@dataclass
class AffineMapField:
    """Per-pixel slope and bias planes of the fitted affine maps."""

    slope: np.ndarray
    bias: np.ndarray


@dataclass
class PatchSystem:
    """One pixel's regression data.

    p: target patch (visible luminance), flattened, length m^2.
    q: guide patch (near-infrared), flattened, length m^2; the design
       matrix is [q, 1] with the all-ones bias column kept implicit.
    w: diagonal weights in (0, 1], center weight maximal.
    s0: prior (slope, bias) pair.
    mu_c: prior strength, > 0.
    """

    p: np.ndarray
    q: np.ndarray
    w: np.ndarray
    s0: np.ndarray
    mu_c: float


def distance_weights(m: int) -> np.ndarray:
    """Flat m^2 weight sequence, 1 / (1 + distance to patch center)."""
    if m < 1 or m % 2 == 0:
        raise ValueError(f"patch side must be a positive odd integer, got {m}")
    r = m // 2
    d = np.arange(-r, r + 1, dtype=np.float64)
    dist = np.hypot(d[:, None], d[None, :])
    return (1.0 / (1.0 + dist)).ravel()


def compute_prior(ngi_patch: np.ndarray, vci_lum_patch: np.ndarray, eps_avg: float = EPS_AVG) -> np.ndarray:
    """Contrast-preserving prior (slope, bias) for one patch pair.

    Each image contributes its center-to-mean brightness ratio; the two
    ratios are blended by the patch-variance ratio so the patch with
    more local contrast dominates.  The bias prior is always zero.
    """
    q = np.asarray(ngi_patch, dtype=np.float64).ravel()
    p = np.asarray(vci_lum_patch, dtype=np.float64).ravel()
    if q.size != p.size:
        raise ValueError(f"patch sizes differ: {q.size} vs {p.size}")
    center = q.size // 2
    r_n = q[center] / max(q.mean(), eps_avg)
    r_v = p[center] / max(p.mean(), eps_avg)
    var_n, var_v = q.var(), p.var()
    total = var_n + var_v
    w1 = var_n / total if total > 0 else 0.5
    return np.array([w1 * r_n + (1.0 - w1) * r_v, 0.0])


def solve_affine(sys: PatchSystem) -> np.ndarray:
    """Closed-form regularized weighted least squares for one pixel.

    Solves (Q^T W Q + mu_c I) s = Q^T W p + mu_c s0 by explicit 2x2
    inversion; mu_c > 0 makes the system positive definite, so the
    solve never degenerates even for constant patches.
    """
    if not sys.mu_c > 0:
        raise ValueError(f"mu_c must be positive, got {sys.mu_c}")
    w, q, p = sys.w, sys.q, sys.p
    wq = w * q
    a11 = wq @ q + sys.mu_c
    a12 = wq.sum()
    a22 = w.sum() + sys.mu_c
    b1 = wq @ p + sys.mu_c * sys.s0[0]
    b2 = w @ p + sys.mu_c * sys.s0[1]
    det = a11 * a22 - a12 * a12
    return np.array([(a22 * b1 - a12 * b2) / det, (a11 * b2 - a12 * b1) / det])


def patch_system_at(
    vci_lum: np.ndarray,
    ngi: np.ndarray,
    row: int,
    col: int,
    m: int,
    mu_c: float,
    eps_avg: float = EPS_AVG,
) -> PatchSystem:
    """Build the regression system for one pixel from the two planes."""
    q = extract_patch(ngi, row, col, m).ravel()
    p = extract_patch(vci_lum, row, col, m).ravel()
    return PatchSystem(
        p=p,
        q=q,
        w=distance_weights(m),
        s0=compute_prior(q, p, eps_avg),
        mu_c=mu_c,
    )


def contrast_transfer(
    vci_lum_denoised: np.ndarray,
    ngi: np.ndarray,
    m: int = 5,
    mu_c: float = 0.05,
    eps_avg: float = EPS_AVG,
) -> tuple[np.ndarray, AffineMapField]:
    """Fit the per-pixel affine maps and re-render the guide plane.

    Returns the remapped guide (clamped to [0, 1]) and the slope/bias
    field.  Every pixel is solved independently; the computation below
    is the vectorized equivalent of building :func:`patch_system_at`
    and calling :func:`solve_affine` at each pixel.
    """
    p_img = as_plane(vci_lum_denoised)
    q_img = as_plane(ngi)
    if p_img.shape != q_img.shape:
        raise ValueError(f"plane shapes differ: {p_img.shape} vs {q_img.shape}")
    if not mu_c > 0:
        raise ValueError(f"mu_c must be positive, got {mu_c}")

    kernel = distance_weights(m).reshape(m, m)
    r = m // 2
    qp = np.pad(q_img, r, mode="edge")
    pp = np.pad(p_img, r, mode="edge")

    s_w = kernel.sum()
    s_wq = _local_weighted_sum(qp, kernel)
    s_wq2 = _local_weighted_sum(qp * qp, kernel)
    s_wp = _local_weighted_sum(pp, kernel)
    s_wqp = _local_weighted_sum(qp * pp, kernel)

    ones = np.ones((m, m))
    n = float(m * m)
    mean_q = _local_weighted_sum(qp, ones) / n
    mean_p = _local_weighted_sum(pp, ones) / n
    var_q = np.maximum(_local_weighted_sum(qp * qp, ones) / n - mean_q**2, 0.0)
    var_p = np.maximum(_local_weighted_sum(pp * pp, ones) / n - mean_p**2, 0.0)

    r_n = q_img / np.maximum(mean_q, eps_avg)
    r_v = p_img / np.maximum(mean_p, eps_avg)
    total = var_q + var_p
    w1 = np.divide(var_q, total, out=np.full_like(total, 0.5), where=total > 0)
    s0_slope = w1 * r_n + (1.0 - w1) * r_v

    a11 = s_wq2 + mu_c
    a12 = s_wq
    a22 = s_w + mu_c
    b1 = s_wqp + mu_c * s0_slope
    b2 = s_wp  # bias prior is zero
    det = a11 * a22 - a12 * a12
    slope = (a22 * b1 - a12 * b2) / det
    bias = (a11 * b2 - a12 * b1) / det

    new_lum = np.clip(q_img * slope + bias, 0.0, 1.0)
    return new_lum, AffineMapField(slope=slope, bias=bias)


def _local_weighted_sum(padded: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """Correlation of a replicate-padded plane with a small kernel."""
    m = kernel.shape[0]
    hh = padded.shape[0] - m + 1
    ww = padded.shape[1] - m + 1
    out = np.zeros((hh, ww))
    for u in range(m):
        for v in range(m):
            out += kernel[u, v] * padded[u : u + hh, v : v + ww]
    return out
