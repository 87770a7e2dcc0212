"""Adapted axial frames for surfaces and for 3-manifolds with k = 1, 2."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classify import OrbitClass, classify, matrix_A, unbounded_direction
from .errors import UnsupportedError
from .jetcore import MongeJet
from .linalg import canonical_sign, complete_basis, get_tol, project_out, span_basis, unit
from .locus import AffineSpan, AxialSpace, affine_span, axial_dimension, axial_space, null_image, slice_ellipse


@dataclass(frozen=True)
class AdaptedFrame:
    l: int
    vectors: np.ndarray
    case: str
    unique: bool
    free_subspace: str = ""
    extended: np.ndarray | None = None
    extended_value: float | None = None
    notes: tuple = ()

    def to_dict(self) -> dict:
        out = {
            "vectors": self.vectors.tolist(),
            "case": self.case,
            "unique": self.unique,
            "free_subspace": self.free_subspace,
            "notes": list(self.notes),
        }
        if self.extended is not None:
            out["extended"] = {"vector": self.extended.tolist(), "value": self.extended_value}
        return out


def primary_axial_vector(m: MongeJet, tol: float | None = None) -> np.ndarray | None:
    c = null_image(m)
    nc = np.linalg.norm(c)
    if nc <= get_tol(tol) * max(m.scale, 1e-300):
        return None
    return c / nc


def _orient(vectors: np.ndarray, reference: np.ndarray) -> np.ndarray:
    """Flip the last vector if the frame is negatively oriented against ``reference``."""
    G = vectors @ reference.T
    if np.linalg.det(G) < 0:
        vectors = vectors.copy()
        vectors[-1] = -vectors[-1]
    return vectors


def _complement_in(space: np.ndarray, fixed: list[np.ndarray]) -> list[np.ndarray]:
    """Orthonormal vectors of ``space`` (rows) orthogonal to ``fixed``, canonical order."""
    out = []
    for d in space:
        w = project_out(d, np.array(fixed + out))
        if np.linalg.norm(w) > 1e-8:
            out.append(canonical_sign(unit(w)))
    return out


def _reference(m: MongeJet, ax: AxialSpace) -> np.ndarray:
    if ax.l == m.k + 1:
        return np.eye(m.k + 1)
    return np.array([canonical_sign(d) for d in ax.dirs])


def adapted_frame_n2(m: MongeJet, span: AffineSpan | None = None, ax: AxialSpace | None = None,
                     orbit: OrbitClass | None = None, tol: float | None = None) -> AdaptedFrame:
    tol = get_tol(tol)
    span = span or affine_span(m, tol)
    ax = ax or axial_space(m, span)
    orbit = orbit or classify(m, tol)
    ref = _reference(m, ax)
    eps = tol * max(m.scale, 1e-300)
    v1 = primary_axial_vector(m, tol)
    if v1 is not None:
        v2 = _complement_in(ax.dirs, [v1])[0]
        return AdaptedFrame(2, _orient(np.array([v1, v2]), ref), "a", True)
    if orbit.tag == "Line":
        v1 = canonical_sign(unit(m.a[:, 0, 1]))
        v2 = _complement_in(ax.dirs, [v1])[0]
        return AdaptedFrame(2, _orient(np.array([v1, v2]), ref), "b", True)
    y = m.a[:, 0, 0]
    if np.linalg.norm(y) > eps:
        v2 = unit(y)
        v1 = _complement_in(ax.dirs, [v2])[0]
        V = np.array([v1, v2])
        if np.linalg.det(V @ ref.T) < 0:
            V[0] = -V[0]
        free = "" if m.k == 1 else "plane of the axial space through the point"
        return AdaptedFrame(2, V, "c", m.k == 1, free)
    return AdaptedFrame(2, ax.dirs[:2].copy(), "d", False, "any orthonormal pair")


def _toward(v: np.ndarray, point: np.ndarray, eps: float) -> np.ndarray:
    """Sign of ``v`` fixed by the locus: positive projection of ``point`` when it is nonzero."""
    d = float(np.dot(v, point))
    if d < -eps:
        return -v
    if d > eps:
        return v
    return canonical_sign(v)


def _strip_sign(m: MongeJet, v: np.ndarray, eps: float) -> np.ndarray:
    """Orient a two-sided unbounded direction so that its single axial value is >= 0."""
    p, q = v @ m.a[:, 0, 2], v @ m.a[:, 1, 2]
    t = np.arctan2(-p, q)
    c, s = np.cos(t), np.sin(t)
    value = v @ (m.a[:, 0, 0] * c * c + 2 * m.a[:, 0, 1] * c * s + m.a[:, 1, 1] * s * s)
    return -v if value < -eps else canonical_sign(v) if abs(value) <= eps else v


def _rot90(v: np.ndarray) -> np.ndarray:
    return np.array([-v[1], v[0]])


def adapted_frame_n3k1(m: MongeJet, orbit: OrbitClass | None = None, span: AffineSpan | None = None,
                       ax: AxialSpace | None = None, tol: float | None = None) -> AdaptedFrame:
    if (m.n, m.k) != (3, 1):
        raise UnsupportedError("adapted_frame_n3k1 needs n=3, k=1")
    tol = get_tol(tol)
    orbit = orbit or classify(m, tol)
    scale = max(m.scale, 1e-300)
    v1 = primary_axial_vector(m, tol)
    if v1 is not None:
        return AdaptedFrame(2, np.array([v1, _rot90(v1)]), "i", True)
    if orbit.tag == "XZ_YZ":
        return AdaptedFrame(2, np.eye(2), "ii", False, "any orthonormal frame of the normal plane")
    if orbit.tag == "XZ_0":
        v1 = _strip_sign(m, unit(unbounded_direction(m)), tol * scale)
        return AdaptedFrame(2, np.array([v1, _rot90(v1)]), "iii", True)
    if orbit.tag != "ZERO":
        raise UnsupportedError(f"orbit {orbit.tag} has no frame rule")
    ell = slice_ellipse(m)
    major, minor, rank, s = ell.axes(tol, scale)
    if rank == 2:
        if s[0] - s[1] <= tol * scale:
            return AdaptedFrame(2, np.eye(2), "iv-circle", False, "circle: any orthonormal frame")
        v1 = _toward(unit(major), ell.center, tol * scale)
        return AdaptedFrame(2, np.array([v1, _rot90(v1)]), "iv-ellipse", True)
    if rank == 1:
        v1 = _toward(unit(major), ell.center, tol * scale)
        return AdaptedFrame(2, np.array([v1, _rot90(v1)]), "iv-segment", True)
    y = ell.center
    if np.linalg.norm(y) > tol * scale:
        v2 = unit(y)
        return AdaptedFrame(2, np.array([-_rot90(v2), v2]), "iv-point", True)
    return AdaptedFrame(2, np.eye(2), "iv-origin", False, "any orthonormal frame")


def _finish3(v1: np.ndarray, v2: np.ndarray) -> np.ndarray:
    return np.array([v1, v2, np.cross(v1, v2)])


def _canonical3(first: list[np.ndarray]) -> np.ndarray:
    V = complete_basis(np.array(first).reshape(len(first), 3), 3)
    return _orient(V, np.eye(3))


def _planar_rule(m: MongeJet, v1: np.ndarray, tol: float, case: str) -> AdaptedFrame:
    """Frame for a locus that is a slice ellipse swept along ``v1``."""
    scale = max(m.scale, 1e-300)
    proj = slice_ellipse(m).projected(v1[None, :])
    major, minor, rank, s = proj.axes(tol, scale)
    if rank >= 1:
        v2 = canonical_sign(unit(major))
        notes = ()
        unique = True
        if rank == 2:
            notes = ("locus is not planar; v2 follows the major axis of the swept ellipse",)
            unique = s[0] - s[1] > tol * scale
        return AdaptedFrame(3, _finish3(v1, v2), case, unique, "", notes=notes)
    c = proj.center
    if np.linalg.norm(c) > tol * scale:
        return AdaptedFrame(3, _finish3(v1, unit(c)), case + "-line", True)
    return AdaptedFrame(3, _canonical3([v1]), case + "-line-origin", False, "any plane containing the line")


def adapted_frame_n3k2(m: MongeJet, orbit: OrbitClass | None = None, span: AffineSpan | None = None,
                       ax: AxialSpace | None = None, tol: float | None = None) -> AdaptedFrame:
    if (m.n, m.k) != (3, 2):
        raise UnsupportedError("adapted_frame_n3k2 needs n=3, k=2")
    tol = get_tol(tol)
    orbit = orbit or classify(m, tol)
    scale = max(m.scale, 1e-300)
    tag = orbit.tag
    v1 = primary_axial_vector(m, tol)
    if tag == "XZ_YZ_Z2":
        return AdaptedFrame(3, _canonical3([v1]), "i", False, "any orthonormal pair orthogonal to v1")
    if tag == "Z2_YZ_0":
        cols = span_basis(matrix_A(m).T, tol, scale=scale)
        v2 = _complement_in(cols, [v1])[0]
        return AdaptedFrame(3, _finish3(v1, v2), "ii", True)
    if tag == "XZ_YZ_0":
        cols = span_basis(matrix_A(m).T, tol, scale=scale)
        return AdaptedFrame(3, _finish3(cols[0], cols[1]), "iii", False, "any orthonormal pair in the unbounded plane")
    if tag == "Z2_0_0":
        return _planar_rule(m, v1, tol, "iv")
    if tag == "XZ_0_0":
        return _planar_rule(m, _strip_sign(m, unit(unbounded_direction(m)), tol * scale), tol, "v")
    ell = slice_ellipse(m)
    major, minor, rank, s = ell.axes(tol, scale)
    if rank == 2:
        if s[0] - s[1] <= tol * scale:
            n3 = canonical_sign(unit(np.cross(ell.u, ell.w)))
            V = complete_basis(n3[None, :], 3)
            F = np.array([V[1], V[2], V[0]])
            if np.linalg.det(F) < 0:
                F[1] = -F[1]
            return AdaptedFrame(3, F, "vi-circle", False, "any orthonormal pair in the ellipse plane")
        v1 = _toward(unit(major), ell.center, tol * scale)
        v2 = _toward(unit(minor), ell.center, tol * scale)
        return AdaptedFrame(3, _finish3(v1, v2), "vi-ellipse", True)
    if rank == 1:
        v1 = _toward(unit(major), ell.center, tol * scale)
        c = project_out(ell.center, v1[None, :])
        if np.linalg.norm(c) > tol * scale:
            return AdaptedFrame(3, _finish3(v1, unit(c)), "vi-segment", True)
        return AdaptedFrame(3, _canonical3([v1]), "vi-segment-origin", False, "any plane containing the segment")
    y = ell.center
    if np.linalg.norm(y) > tol * scale:
        yu = unit(y)
        v1 = complete_basis(yu[None, :], 3)[1]
        return AdaptedFrame(3, _finish3(v1, yu), "vi-point", False, "v1 is any unit vector orthogonal to the point")
    return AdaptedFrame(3, np.eye(3), "vi-origin", False, "any orthonormal frame")


def extended_vector(m: MongeJet, span: AffineSpan | None = None, ax: AxialSpace | None = None,
                    tol: float | None = None):
    """Unit vector toward Aff_p outside the axial space, with the constant projection.

    Returns None unless n < k+1 and dim Aff_p = l.
    """
    span = span or affine_span(m, tol)
    ax = ax or axial_space(m, span)
    l = axial_dimension(m)
    if not (m.n < m.k + 1 and span.dim == l):
        return None
    p0 = span.closest_to_origin()
    if np.linalg.norm(p0) > span.tol * max(m.scale, 1e-300):
        v = unit(p0)
    else:
        v = complete_basis(ax.dirs, m.k + 1, size=l + 1)[l]
    return v, float(np.dot(span.base, v))


def adapted_frame(m: MongeJet, orbit: OrbitClass | None = None, span: AffineSpan | None = None,
                  ax: AxialSpace | None = None, tol: float | None = None) -> AdaptedFrame:
    tol = get_tol(tol)
    span = span or affine_span(m, tol)
    ax = ax or axial_space(m, span)
    orbit = orbit or classify(m, tol)
    if m.n == 2:
        frame = adapted_frame_n2(m, span, ax, orbit, tol)
    elif (m.n, m.k) == (3, 1):
        frame = adapted_frame_n3k1(m, orbit, span, ax, tol)
    elif (m.n, m.k) == (3, 2):
        frame = adapted_frame_n3k2(m, orbit, span, ax, tol)
    else:
        raise UnsupportedError(f"no adapted frame for (n,k)=({m.n},{m.k})")
    ext = extended_vector(m, span, ax, tol)
    if ext is not None:
        frame = AdaptedFrame(frame.l, frame.vectors, frame.case, frame.unique, frame.free_subspace,
                             ext[0], ext[1], frame.notes)
    return frame


__all__ = [
    "AdaptedFrame",
    "primary_axial_vector",
    "adapted_frame_n2",
    "adapted_frame_n3k1",
    "adapted_frame_n3k2",
    "adapted_frame",
    "extended_vector",
]
