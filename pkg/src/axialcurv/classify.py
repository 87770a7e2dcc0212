"""2-jet orbit classification and curvature-locus shape typing."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, UnsupportedError
from .jetcore import MongeJet
from .linalg import get_tol, singular_values
from .locus import slice_ellipse

NEAR_FACTOR = 10.0

N2_TAGS = ("NondegParabola", "HalfLine", "Line", "Point")
N3K1_TAGS = ("XZ_Z2", "XZ_YZ", "Z2_0", "XZ_0", "ZERO")
N3K2_TAGS = ("XZ_YZ_Z2", "Z2_YZ_0", "XZ_YZ_0", "Z2_0_0", "XZ_0_0", "ZERO")


@dataclass(frozen=True)
class OrbitClass:
    tag: str
    rank_A: int | None = None
    norm_a002: float | None = None
    minors: dict = field(default_factory=dict)
    singular_values: tuple = ()
    near_degenerate: bool = False
    warnings: tuple = ()

    def to_dict(self) -> dict:
        return {
            "tag": self.tag,
            "rank_A": self.rank_A,
            "norm_a002": self.norm_a002,
            "minors": dict(self.minors),
            "singular_values": list(self.singular_values),
            "near_degenerate": self.near_degenerate,
            "warnings": list(self.warnings),
        }


def _near(q: float, ref: float, tol: float) -> bool:
    """True when q sits in the band around the vanishing threshold tol * ref."""
    return 1e-3 * tol * ref < q <= NEAR_FACTOR * tol * ref


def matrix_A(m: MongeJet) -> np.ndarray:
    """Columns a_101, a_011, a_002 (raw Hessian entries xz, yz, zz)."""
    if m.n != 3:
        raise DimensionError("matrix A is defined for n=3")
    return np.column_stack([m.a[:, 0, 2], m.a[:, 1, 2], m.a[:, 2, 2]])


def _witnesses(m: MongeJet, tol: float):
    A = matrix_A(m)
    scale = max(m.scale, 1e-300)
    s = singular_values(A)
    rank = int(np.sum(s > tol * scale))
    c = float(np.linalg.norm(A[:, 2]))
    has_c = c > tol * scale
    warn = []
    if any(_near(x, scale, tol) for x in s):
        warn.append("a singular value of A is within 10x of the rank threshold")
    if _near(c, scale, tol):
        warn.append("|a_002| is within 10x of the vanishing threshold")
    return A, s, rank, c, has_c, warn


def orbit_n3k1(m: MongeJet, tol: float | None = None) -> OrbitClass:
    if (m.n, m.k) != (3, 1):
        raise DimensionError("orbit_n3k1 needs n=3, k=1")
    tol = get_tol(tol)
    A, s, rank, c, has_c, warn = _witnesses(m, tol)
    if rank == 2:
        tag = "XZ_Z2" if has_c else "XZ_YZ"
    elif rank == 1:
        tag = "Z2_0" if has_c else "XZ_0"
    else:
        tag = "ZERO"
    minors = {
        "alpha": float(A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]),
        "beta": float(A[0, 1] * A[1, 2] - A[0, 2] * A[1, 1]),
        "gamma": float(A[0, 0] * A[1, 2] - A[0, 2] * A[1, 0]),
    }
    return OrbitClass(tag, rank, c, minors, tuple(map(float, s)), bool(warn), tuple(warn))


def orbit_n3k2(m: MongeJet, tol: float | None = None) -> OrbitClass:
    if (m.n, m.k) != (3, 2):
        raise DimensionError("orbit_n3k2 needs n=3, k=2")
    tol = get_tol(tol)
    A, s, rank, c, has_c, warn = _witnesses(m, tol)
    if rank == 3:
        tag = "XZ_YZ_Z2"
    elif rank == 2:
        tag = "Z2_YZ_0" if has_c else "XZ_YZ_0"
    elif rank == 1:
        tag = "Z2_0_0" if has_c else "XZ_0_0"
    else:
        tag = "ZERO"
    return OrbitClass(tag, rank, c, {}, tuple(map(float, s)), bool(warn), tuple(warn))


def orbit_n2(m: MongeJet, tol: float | None = None) -> OrbitClass:
    if m.n != 2:
        raise DimensionError("orbit_n2 needs n=2")
    tol = get_tol(tol)
    scale = max(m.scale, 1e-300)
    a02, a11 = m.a[:, 1, 1], m.a[:, 0, 1]
    n02, n11 = float(np.linalg.norm(a02)), float(np.linalg.norm(a11))
    s = singular_values(np.vstack([a02, a11]))
    warn = []
    if n02 > tol * scale:
        parallel = s[1] <= tol * s[0]
        tag = "HalfLine" if parallel else "NondegParabola"
        if _near(s[1], s[0], tol):
            warn.append("a_02 and a_11 are nearly parallel")
    elif n11 > tol * scale:
        tag = "Line"
    else:
        tag = "Point"
    for q in (n02, n11):
        if _near(q, scale, tol):
            warn.append("a coefficient vector is within 10x of the vanishing threshold")
    minors = {"norm_a02": n02, "norm_a11": n11, "cross_a02_a11": float(s[0] * s[1]) if s.size > 1 else 0.0}
    return OrbitClass(tag, None, None, minors, tuple(map(float, s)), bool(warn), tuple(warn))


def classify(m: MongeJet, tol: float | None = None) -> OrbitClass:
    if m.n == 2:
        return orbit_n2(m, tol)
    if (m.n, m.k) == (3, 1):
        return orbit_n3k1(m, tol)
    if (m.n, m.k) == (3, 2):
        return orbit_n3k2(m, tol)
    raise UnsupportedError(f"no orbit classification for (n,k)=({m.n},{m.k}); supported: (2,k>=1), (3,1), (3,2)")


@dataclass(frozen=True)
class LocusShape:
    tag: str
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.tag}({self.detail})" if self.detail else self.tag


def unbounded_direction(m: MongeJet, tol: float | None = None) -> np.ndarray:
    """Unit direction spanning the column space of A when rank(A) = 1."""
    A = matrix_A(m)
    U, s, _ = np.linalg.svd(A)
    d = U[:, 0]
    c = A[:, 2] if np.linalg.norm(A[:, 2]) > 0 else A[:, np.argmax(np.linalg.norm(A, axis=0))]
    return d if np.dot(d, c) >= 0 else -d


def ellipse_kind(rank: int) -> str:
    return ("Point", "Segment", "Ellipse")[min(rank, 2)]


def locus_shape(m: MongeJet, orbit: OrbitClass | None = None, tol: float | None = None) -> LocusShape:
    tol = get_tol(tol)
    orbit = orbit or classify(m, tol)
    if m.n == 2:
        return LocusShape({"NondegParabola": "Parabola"}.get(orbit.tag, orbit.tag))
    if m.n != 3 or m.k not in (1, 2):
        raise UnsupportedError(f"no locus typing for (n,k)=({m.n},{m.k})")
    scale = max(m.scale, 1e-300)
    ell = slice_ellipse(m)
    tag = orbit.tag
    if tag == "ZERO":
        rank = ell.axes(tol, scale)[2]
        return LocusShape("RegularSurfaceLocus", ellipse_kind(rank))
    if m.k == 1:
        if tag == "XZ_Z2":
            return LocusShape("PlanarRegion")
        if tag == "XZ_YZ":
            return LocusShape("Plane")
        d = unbounded_direction(m)
        rank = ell.projected(d[None, :]).axes(tol, scale)[2]
        if tag == "Z2_0":
            return LocusShape("HalfStrip" if rank else "HalfLine")
        return LocusShape("Strip" if rank else "Line")
    if tag == "XZ_YZ_Z2":
        return LocusShape("ParabolaSweep", "unbounded in a plane, bounded below along a_002")
    if tag == "Z2_YZ_0":
        return LocusShape("ParabolaSweep", "one two-sided unbounded direction, one bounded")
    if tag == "XZ_YZ_0":
        return LocusShape("LineSweep", "unbounded in a plane")
    d = unbounded_direction(m)
    rank = ell.projected(d[None, :]).axes(tol, scale)[2]
    if tag == "Z2_0_0":
        return LocusShape(("HalfLine", "HalfStrip", "HalfCylinder")[rank], "planar" if rank < 2 else "non-planar")
    return LocusShape(("Line", "Strip", "Cylinder")[rank], "planar" if rank < 2 else "non-planar")


__all__ = [
    "OrbitClass",
    "LocusShape",
    "matrix_A",
    "orbit_n2",
    "orbit_n3k1",
    "orbit_n3k2",
    "classify",
    "locus_shape",
    "unbounded_direction",
]
