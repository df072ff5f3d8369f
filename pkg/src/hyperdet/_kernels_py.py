"""Pure-numpy kernels: batched pencil determinants and adjugate gradients.

These are the hot operations of the tracker.  A compiled twin lives in
``_kernelcore.pyx``; both expose the same two functions and must agree to
floating-point accuracy.  Gradient ordering matches the pair packing:
d diagonal entries first, then the upper triangle of the symmetric part in
row-major order.
"""
from __future__ import annotations

import numpy as np

# Relative determinant floor below which the adjugate falls back to cofactors.
DET_FLOOR = 1e-300


def _pencils(diag: np.ndarray, sym: np.ndarray, pts: np.ndarray) -> np.ndarray:
    d = diag.shape[0]
    t, x, y = pts[:, 0], pts[:, 1], pts[:, 2]
    mats = y[:, None, None] * sym[None, :, :] + x[:, None, None] * np.diag(diag)[None, :, :]
    idx = np.arange(d)
    mats[:, idx, idx] += t[:, None]
    return mats


def _det_scale(mats: np.ndarray) -> np.ndarray:
    """Per-point magnitude scale for the determinant floor test."""
    d = mats.shape[1]
    biggest = np.abs(mats).reshape(mats.shape[0], -1).max(axis=1)
    return np.maximum(biggest, 1.0) ** d


def _cofactor_adjugate(mat: np.ndarray) -> np.ndarray:
    """Adjugate by explicit minors; only used when det underflows."""
    d = mat.shape[0]
    if d == 1:
        return np.ones((1, 1), dtype=np.complex128)
    adj = np.empty((d, d), dtype=np.complex128)
    rows = np.arange(d)
    for a in range(d):
        for b in range(d):
            minor = mat[np.ix_(rows != a, rows != b)]
            adj[b, a] = (-1) ** (a + b) * np.linalg.det(minor)
    return adj


def batch_det(diag: np.ndarray, sym: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """det(t*I + x*D + y*R) for every point row (t, x, y)."""
    diag = np.ascontiguousarray(diag, dtype=np.complex128)
    sym = np.ascontiguousarray(sym, dtype=np.complex128)
    pts = np.ascontiguousarray(pts, dtype=np.complex128)
    return np.linalg.det(_pencils(diag, sym, pts))


def batch_det_grad(diag: np.ndarray, sym: np.ndarray, pts: np.ndarray):
    """Determinants plus gradients w.r.t. the packed pair coordinates.

    Returns (dets, grads) with grads of shape (n_points, d*(d+3)//2).
    """
    diag = np.ascontiguousarray(diag, dtype=np.complex128)
    sym = np.ascontiguousarray(sym, dtype=np.complex128)
    pts = np.ascontiguousarray(pts, dtype=np.complex128)
    d = diag.shape[0]
    n = pts.shape[0]
    mats = _pencils(diag, sym, pts)
    dets = np.linalg.det(mats)

    adj = np.empty_like(mats)
    ok = np.abs(dets) > DET_FLOOR * _det_scale(mats)
    if d == 1:
        adj[:] = 1.0
    else:
        if np.all(ok):
            try:
                adj = np.linalg.inv(mats) * dets[:, None, None]
            except np.linalg.LinAlgError:
                ok = np.zeros(n, dtype=bool)
        else:
            safe = np.where(ok)[0]
            if safe.size:
                try:
                    adj[safe] = np.linalg.inv(mats[safe]) * dets[safe, None, None]
                except np.linalg.LinAlgError:
                    for i in safe:
                        try:
                            adj[i] = np.linalg.inv(mats[i]) * dets[i]
                        except np.linalg.LinAlgError:
                            ok[i] = False
        for i in np.where(~ok)[0]:
            adj[i] = _cofactor_adjugate(mats[i])

    x, y = pts[:, 1], pts[:, 2]
    m = d * (d + 3) // 2
    grads = np.empty((n, m), dtype=np.complex128)
    idx = np.arange(d)
    grads[:, :d] = x[:, None] * adj[:, idx, idx]
    jj, kk = np.triu_indices(d)
    weight = np.where(jj == kk, 1.0, 2.0)
    grads[:, d:] = y[:, None] * adj[:, jj, kk] * weight[None, :]
    return dets, grads
