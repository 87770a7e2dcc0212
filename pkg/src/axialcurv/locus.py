"""Curvature locus: evaluation, sampling, affine span, axial space, boundedness."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from .errors import DimensionError, InfiniteParamError, UndefinedError
from .jetcore import MongeJet
from .linalg import complete_basis, get_tol, project_out, span_basis


@dataclass(frozen=True)
class TangentParam:
    """A unit tangent direction: ``y`` for surfaces, ``(theta, gamma)`` for n=3.

    ``gamma`` (or ``y``) may be infinite, which encodes the null direction.
    """

    theta: float = 0.0
    gamma: float = 0.0

    @classmethod
    def surface(cls, y: float) -> "TangentParam":
        return cls(0.0, y)

    @property
    def y(self) -> float:
        return self.gamma

    @property
    def is_null(self) -> bool:
        return math.isinf(self.gamma)


def tangent_vector(m: MongeJet, t: TangentParam) -> np.ndarray:
    if t.is_null:
        raise InfiniteParamError("the null direction has no point on the unit cylinder; use null_image")
    if m.n == 2:
        return np.array([1.0, t.gamma])
    if m.n == 3:
        return np.array([math.cos(t.theta), math.sin(t.theta), t.gamma])
    raise DimensionError("tangent parameters cover n=2 and n=3")


def second_form(m: MongeJet, u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    return np.einsum("i,lij,j->l", u, m.a, u)


def locus_param(m: MongeJet, t: TangentParam) -> np.ndarray:
    return second_form(m, tangent_vector(m, t))


def null_image(m: MongeJet) -> np.ndarray:
    return m.a[:, -1, -1].copy()


@dataclass(frozen=True)
class GridSpec:
    theta_count: int = 360
    gamma_min: float = -10.0
    gamma_max: float = 10.0
    gamma_count: int = 201

    @classmethod
    def parse(cls, text: str, gamma_range: str | None = None) -> "GridSpec":
        """Parse the CLI forms ``"T,G,N"`` (theta count, gamma half-range, gamma count)."""
        t, g, n = (s.strip() for s in text.split(","))
        lo, hi = -float(g), float(g)
        if gamma_range:
            lo, hi = (float(s) for s in gamma_range.split(","))
        return cls(int(t), lo, hi, int(n))


@dataclass(frozen=True)
class CurvatureLocusSample:
    points: np.ndarray
    params: np.ndarray
    grid: GridSpec
    n: int


def sample_locus(m: MongeJet, grid: GridSpec | None = None) -> CurvatureLocusSample:
    grid = grid or GridSpec()
    gam = np.linspace(grid.gamma_min, grid.gamma_max, grid.gamma_count)
    if m.n == 2:
        u = np.stack([np.ones_like(gam), gam], axis=1)
        params = gam[:, None]
    elif m.n == 3:
        th = np.linspace(0.0, 2 * np.pi, grid.theta_count, endpoint=False)
        T, G = np.meshgrid(th, gam, indexing="ij")
        T, G = T.ravel(), G.ravel()
        u = np.stack([np.cos(T), np.sin(T), G], axis=1)
        params = np.stack([T, G], axis=1)
    else:
        raise DimensionError("sampling covers n=2 and n=3")
    pts = np.einsum("si,lij,sj->sl", u, m.a, u)
    return CurvatureLocusSample(pts, params, grid, m.n)


def write_csv(sample: CurvatureLocusSample, out=None) -> str | None:
    """Write the sample as CSV; returns the text when ``out`` is None."""
    dim = sample.points.shape[1]
    head = ["y"] if sample.n == 2 else ["theta", "gamma"]
    head += [f"c{i + 1}" for i in range(dim)]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(head)
    for p, q in zip(sample.params, sample.points):
        w.writerow([format(float(x), ".17g") for x in (*p, *q)])
    text = buf.getvalue()
    if out is None:
        return text
    if isinstance(out, (str, Path)):
        Path(out).write_text(text)
    else:
        out.write(text)
    return None


@dataclass(frozen=True)
class AffineSpan:
    base: np.ndarray
    dirs: np.ndarray
    dim: int
    tol: float

    def closest_to_origin(self) -> np.ndarray:
        return project_out(self.base, self.dirs)

    def distance(self, point) -> float:
        return float(np.linalg.norm(project_out(np.asarray(point) - self.base, self.dirs)))


def span_generators(m: MongeJet) -> np.ndarray:
    """Vectors whose span is the direction space of the affine hull of the locus."""
    n = m.n
    gens = [m.a[:, i, i] - m.a[:, 0, 0] for i in range(1, n - 1)]
    gens += [m.a[:, i, j] for i in range(n - 1) for j in range(i + 1, n)]
    gens.append(m.a[:, n - 1, n - 1])
    return np.array(gens)


def affine_span(m: MongeJet, tol: float | None = None) -> AffineSpan:
    tol = get_tol(tol)
    dirs = span_basis(span_generators(m), tol, scale=m.scale)
    return AffineSpan(m.a[:, 0, 0].copy(), dirs, dirs.shape[0], tol)


@dataclass(frozen=True)
class AxialSpace:
    dirs: np.ndarray
    l: int
    flag: str  # "equals_aff", "extended_through_origin" or "exceeds_l"


def axial_dimension(m: MongeJet) -> int:
    return min(m.n, m.k + 1)


def axial_space(m: MongeJet, span: AffineSpan | None = None) -> AxialSpace:
    span = span or affine_span(m)
    l = axial_dimension(m)
    if span.dim == l:
        return AxialSpace(span.dirs.copy(), l, "equals_aff")
    if span.dim > l:
        return AxialSpace(span.dirs.copy(), l, "exceeds_l")
    dirs = [d for d in span.dirs]
    p0 = span.closest_to_origin()
    if np.linalg.norm(p0) > span.tol * max(m.scale, 1e-300):
        dirs.append(p0 / np.linalg.norm(p0))
    basis = complete_basis(np.array(dirs).reshape(len(dirs), m.k + 1), m.k + 1, size=l)
    return AxialSpace(basis, l, "extended_through_origin")


class Boundedness(str, Enum):
    BOUNDED_BOTH = "BoundedBoth"
    UNBOUNDED_ABOVE = "UnboundedAbove"
    UNBOUNDED_BELOW = "UnboundedBelow"
    UNBOUNDED_BOTH = "UnboundedBoth"


def boundedness_diagnostic(m: MongeJet, v, tol: float | None = None) -> Boundedness:
    """How K_v = A(theta) + B(theta) gamma + C gamma^2 behaves as gamma grows."""
    if m.n != 3:
        raise DimensionError("boundedness diagnostic is defined for n=3")
    v = np.asarray(v, dtype=float)
    eps = get_tol(tol) * max(m.scale, 1e-300)
    C = float(v @ m.a[:, 2, 2])
    b = 2.0 * np.array([v @ m.a[:, 0, 2], v @ m.a[:, 1, 2]])
    if C > eps:
        return Boundedness.UNBOUNDED_ABOVE
    if C < -eps:
        return Boundedness.UNBOUNDED_BELOW
    if np.max(np.abs(b)) > eps:
        return Boundedness.UNBOUNDED_BOTH
    return Boundedness.BOUNDED_BOTH


@dataclass(frozen=True)
class SliceEllipse:
    """Image of the unit circle of the z=0 slice: center + u cos 2t + w sin 2t."""

    center: np.ndarray
    u: np.ndarray
    w: np.ndarray

    def point(self, theta):
        return self.center + self.u * np.cos(2 * theta) + self.w * np.sin(2 * theta)

    def axes(self, tol: float, scale: float):
        """Semi-axis vectors (major, minor) and the numerical rank of [u w]."""
        M = np.column_stack([self.u, self.w])
        U, s, Vt = np.linalg.svd(M, full_matrices=False)
        ref = max(scale, 1e-300)
        rank = int(np.sum(s > tol * ref))
        return U[:, 0] * s[0], U[:, 1] * s[1], rank, s

    def projected(self, basis) -> "SliceEllipse":
        """Remove the components along the rows of ``basis``."""
        return SliceEllipse(project_out(self.center, basis), project_out(self.u, basis), project_out(self.w, basis))


def slice_ellipse(m: MongeJet) -> SliceEllipse:
    if m.n != 3:
        raise DimensionError("slice ellipse is defined for n=3")
    a00, a11, a01 = m.a[:, 0, 0], m.a[:, 1, 1], m.a[:, 0, 1]
    return SliceEllipse((a00 + a11) / 2, (a00 - a11) / 2, a01.copy())


def umbilic_curvature(m: MongeJet, span: AffineSpan | None = None) -> float:
    span = span or affine_span(m)
    if not (m.k + 1 > m.n or span.dim < m.k + 1):
        raise UndefinedError("umbilic curvature needs a degenerate locus when the normal space has dim <= n")
    return float(np.linalg.norm(span.closest_to_origin()))
