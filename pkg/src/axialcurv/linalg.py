"""Small dense linear-algebra helpers: tolerances, ranks, orthonormal bases."""

import os

import numpy as np

DEFAULT_TOL = 1e-8


def get_tol(tol=None):
    """Return ``tol`` if given, else ``$AXIALCURV_TOL``, else the default 1e-8."""
    if tol is not None:
        return float(tol)
    env = os.environ.get("AXIALCURV_TOL")
    if env:
        return float(env)
    return DEFAULT_TOL


def singular_values(mat):
    mat = np.atleast_2d(np.asarray(mat, dtype=float))
    if mat.size == 0:
        return np.zeros(0)
    return np.linalg.svd(mat, compute_uv=False)


def numerical_rank(mat, tol=None, scale=0.0):
    """Count singular values above ``tol * max(sigma_max, scale)``.

    ``scale`` lets callers measure vanishing against the size of the whole jet
    rather than the matrix itself, so a uniformly tiny matrix has rank 0.
    """
    s = singular_values(mat)
    ref = max(s[0] if s.size else 0.0, scale)
    if ref == 0.0:
        return 0
    return int(np.sum(s > get_tol(tol) * ref))


def canonical_sign(v, tol=1e-12):
    """Flip ``v`` so that its first significant entry is positive."""
    v = np.asarray(v, dtype=float)
    big = np.max(np.abs(v)) if v.size else 0.0
    if big == 0.0:
        return v.copy()
    for x in v:
        if abs(x) > tol * big:
            return v.copy() if x > 0 else -v
    return v.copy()


def unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def span_basis(vectors, tol=None, scale=0.0):
    """Orthonormal basis (rows) of the span of ``vectors`` (rows), via SVD."""
    vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
    dim = vectors.shape[1]
    if vectors.shape[0] == 0:
        return np.zeros((0, dim))
    _, s, vt = np.linalg.svd(vectors, full_matrices=False)
    ref = max(s[0] if s.size else 0.0, scale)
    if ref == 0.0:
        return np.zeros((0, dim))
    r = int(np.sum(s > get_tol(tol) * ref))
    return np.array([canonical_sign(row) for row in vt[:r]]).reshape(r, dim)


def complete_basis(basis, dim, size=None):
    """Extend orthonormal rows ``basis`` with standard vectors in index order.

    Gram-Schmidt is applied twice per candidate for stability.  Returns the
    combined ``(size, dim)`` array (``size`` defaults to ``dim``).
    """
    size = dim if size is None else size
    out = [np.asarray(b, dtype=float) for b in np.atleast_2d(basis) if np.size(b)]
    for i in range(dim):
        if len(out) >= size:
            break
        e = np.zeros(dim)
        e[i] = 1.0
        for _ in range(2):
            for b in out:
                e = e - np.dot(b, e) * b
        nrm = np.linalg.norm(e)
        if nrm > 1e-6:
            out.append(e / nrm)
    return np.array(out).reshape(len(out), dim)


def cross_norm(u, w):
    """Norm of the generalized cross product: area of the parallelogram u, w."""
    u = np.asarray(u, dtype=float)
    w = np.asarray(w, dtype=float)
    nu = np.linalg.norm(u)
    if nu == 0.0:
        return 0.0
    e = u / nu
    return nu * float(np.linalg.norm(w - np.dot(e, w) * e))


def project_out(v, basis):
    """Component of ``v`` orthogonal to the rows of ``basis``."""
    v = np.asarray(v, dtype=float).copy()
    for b in np.atleast_2d(basis):
        if b.size:
            v = v - np.dot(b, v) * b
    return v
