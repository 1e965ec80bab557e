"""Orthonormal frames: Gram-Schmidt against a metric, rotations, Haar draws.

Frames are stored row-wise: ``frame[i, :]`` holds the chart components of
the i-th frame vector, so orthonormality reads ``frame @ g @ frame.T = I``.
"""

from __future__ import annotations

import numpy as np

from .errors import NonOrthonormalFrameError, RankDeficientError

__all__ = [
    "gram_schmidt_frame",
    "gram_schmidt_frames",
    "rotate_frame",
    "haar_orthogonal",
    "haar_frames",
    "check_orthonormal",
    "point_rng",
]

RANK_TOL = 1e-10


def gram_schmidt_frame(g, vectors):
    """Orthonormalize ``vectors`` (rows) against the metric ``g``.

    Ascending order: vector 0 is normalized first, each later vector has the
    projections onto the earlier ones removed before its own normalization.
    Raises :class:`RankDeficientError` if a residual norm falls below 1e-10.
    """
    return gram_schmidt_frames(g[None, :, :], np.asarray(vectors, dtype=float)[None, :, :])[0]


def gram_schmidt_frames(g, vectors):
    """Batched metric Gram-Schmidt; ``g`` (p, n, n), ``vectors`` (p, n, n)."""
    g = np.asarray(g, dtype=float)
    out = np.array(vectors, dtype=float, copy=True)
    npts, n = g.shape[0], g.shape[1]
    for i in range(n):
        for j in range(i):
            # <v_i, e_j>_g e_j with e_j already unit
            coef = np.einsum("pa,pab,pb->p", out[:, i, :], g, out[:, j, :])
            out[:, i, :] -= coef[:, None] * out[:, j, :]
        sq = np.einsum("pa,pab,pb->p", out[:, i, :], g, out[:, i, :])
        if np.any(sq < RANK_TOL**2) or not np.all(np.isfinite(sq)):
            raise RankDeficientError(
                "Gram-Schmidt residual below tolerance at vector %d" % i
            )
        out[:, i, :] /= np.sqrt(sq)[:, None]
    return out


def check_orthonormal(g, frame, tol=1e-8):
    """Validate frame @ g @ frame.T = I; raises NonOrthonormalFrameError."""
    gram = frame @ g @ frame.T
    err = np.max(np.abs(gram - np.eye(len(frame))))
    if not err < tol:
        raise NonOrthonormalFrameError(
            "frame Gram matrix deviates from identity by %.3e" % err
        )
    return float(err)


def rotate_frame(frame, i, j, angle):
    """Rotate the frame by ``angle`` in the span of vectors i and j.

    A Givens rotation of two rows; metric-orthonormality is preserved since
    the rotation acts inside the frame's own span.
    """
    if i == j:
        raise ValueError("rotation plane needs two distinct frame indices")
    out = np.array(frame, dtype=float, copy=True)
    c, s = np.cos(angle), np.sin(angle)
    vi, vj = out[i].copy(), out[j].copy()
    out[i] = c * vi + s * vj
    out[j] = -s * vi + c * vj
    return out


def haar_orthogonal(n, rng):
    """One draw from the Haar measure on O(n).

    QR of a Gaussian matrix with the sign of R's diagonal pushed into Q,
    which removes the sign ambiguity that would otherwise bias the draw.
    """
    z = rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    q = q * np.sign(np.diag(r))[None, :]
    return q

def haar_frames(g, base_frames, rng):
    """Haar-random orthonormal frames on top of base orthonormal frames.

    ``base_frames[p]`` must already be g-orthonormal; left-multiplying by an
    orthogonal matrix keeps it so while uniformizing the orientation of the
    frame over O(n).  One independent draw per point.
    """
    base_frames = np.asarray(base_frames, dtype=float)
    npts, n = base_frames.shape[0], base_frames.shape[1]
    out = np.empty_like(base_frames)
    for p in range(npts):
        out[p] = haar_orthogonal(n, rng) @ base_frames[p]
    return out


def point_rng(seed, node_index):
    """Deterministic per-point generator, independent of batching/workers.

    Seeding by (seed, node_index) through SeedSequence spawn keys gives each
    grid node its own stream, so results do not depend on how points are
    chunked across threads.
    """
    ss = np.random.SeedSequence(seed, spawn_key=(node_index,))
    return np.random.Generator(np.random.PCG64(ss))
