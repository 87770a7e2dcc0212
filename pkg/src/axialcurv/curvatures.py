"""Normal curvature functions, axial curvatures (closed form and brute force), slices."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .classify import OrbitClass, classify
from .errors import DegenerateError, DimensionError, NoCriticalValue, SingularCurveError, UnsupportedError
from .frames import AdaptedFrame, adapted_frame
from .jetcore import MongeJet, PolyMapGerm, jet2, z_reduced_coefficients, z_reduce
from .linalg import cross_norm, get_tol

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class NormalCurvatureForm:
    """K_v on the unit cylinder.

    Surfaces: K(y) = l + 2 m y + nn y^2.
    3-manifolds: K(theta, gamma) = A(theta) + B(theta) gamma + C gamma^2 with
    A = a c^2 + 2 b c s + d s^2 and B = 2 (p c + q s).
    """

    n: int
    coeffs: dict

    def __call__(self, theta: float, gamma: float = 0.0) -> float:
        if self.n == 2:
            y = gamma
            c = self.coeffs
            return c["l"] + 2 * c["m"] * y + c["nn"] * y * y
        return self.A(theta) + self.B(theta) * gamma + self.coeffs["C"] * gamma**2

    def A(self, t):
        a, b, d = self.coeffs["a"], self.coeffs["b"], self.coeffs["d"]
        c, s = np.cos(t), np.sin(t)
        return a * c * c + 2 * b * c * s + d * s * s

    def dA(self, t):
        a, b, d = self.coeffs["a"], self.coeffs["b"], self.coeffs["d"]
        return (d - a) * np.sin(2 * t) + 2 * b * np.cos(2 * t)

    def d2A(self, t):
        a, b, d = self.coeffs["a"], self.coeffs["b"], self.coeffs["d"]
        return 2 * (d - a) * np.cos(2 * t) - 4 * b * np.sin(2 * t)

    def B(self, t):
        return 2 * (self.coeffs["p"] * np.cos(t) + self.coeffs["q"] * np.sin(t))

    def dB(self, t):
        return 2 * (-self.coeffs["p"] * np.sin(t) + self.coeffs["q"] * np.cos(t))

    @property
    def xy_block(self) -> np.ndarray:
        c = self.coeffs
        return np.array([[c["a"], c["b"]], [c["b"], c["d"]]])

    @property
    def scale(self) -> float:
        return max(abs(float(x)) for x in self.coeffs.values())


def normal_curvature_form(m: MongeJet, v) -> NormalCurvatureForm:
    v = np.asarray(v, dtype=float)
    H = np.einsum("l,lij->ij", v, m.a)
    if m.n == 2:
        return NormalCurvatureForm(2, {"l": H[0, 0], "m": H[0, 1], "nn": H[1, 1]})
    if m.n == 3:
        return NormalCurvatureForm(3, {"a": H[0, 0], "b": H[0, 1], "d": H[1, 1],
                                       "p": H[0, 2], "q": H[1, 2], "C": H[2, 2]})
    raise DimensionError("normal curvature forms cover n=2 and n=3")


# --------------------------------------------------------------------------- oracle


@dataclass(frozen=True)
class OracleResult:
    values: list
    params: list
    types: list


def _roots(fn, lo: float, hi: float, count: int, scale: float) -> list[float]:
    """All roots of a smooth periodic function on [lo, hi) via grid scan plus refinement."""
    grid = np.linspace(lo, hi, count + 1)
    vals = fn(grid)
    roots = []
    thresh = 1e-12 * max(scale, 1e-300)
    for i in range(count):
        f0, f1 = vals[i], vals[i + 1]
        if abs(f0) <= thresh:
            roots.append(grid[i])
        elif f0 * f1 < 0:
            roots.append(brentq(fn, grid[i], grid[i + 1], xtol=1e-14, rtol=4 * np.finfo(float).eps))
    # tangential zeros: local minima of |fn| that touch zero without a sign change
    absv = np.abs(vals)
    for i in range(1, count):
        if absv[i] < absv[i - 1] and absv[i] <= absv[i + 1] and vals[i - 1] * vals[i + 1] > 0:
            res = minimize_scalar(lambda t: abs(fn(t)), bounds=(grid[i - 1], grid[i + 1]), method="bounded",
                                  options={"xatol": 1e-13})
            if abs(fn(res.x)) <= 1e-9 * max(scale, 1e-300):
                roots.append(float(res.x))
    return sorted(roots)


def _dedupe(items, key_scale: float):
    """Merge (value, param, type) triples whose values agree to 1e-8 relative."""
    out = []
    for val, par, typ in sorted(items, key=lambda x: (x[0], x[1].get("theta", x[1].get("y", 0.0)))):
        tol = 1e-8 * max(abs(val), 1e-6)
        if out and abs(out[-1][0] - val) <= tol:
            continue
        out.append((val, par, typ))
    return out


def _classify_hessian(hxx: float, hxy: float, hyy: float, scale: float) -> str:
    det = hxx * hyy - hxy * hxy
    eps = 1e-9 * max(scale, 1e-300) ** 2
    if det > eps:
        return "min" if hxx + hyy > 0 else "max"
    if det < -eps:
        return "saddle"
    return "degenerate"


def axial_oracle(m: MongeJet, v, grid: int = 4096, tol: float | None = None) -> OracleResult:
    """Brute-force critical values of K_v on the unit cylinder (null direction excluded)."""
    v = np.asarray(v, dtype=float)
    if np.any(~np.isfinite(v)) or np.any(~np.isfinite(m.a)):
        raise NoCriticalValue("non-finite input")
    tol = get_tol(tol)
    F = normal_curvature_form(m, v)
    eps = tol * max(m.scale, F.scale, 1e-300)
    if m.n == 2:
        l, mm, nn = F.coeffs["l"], F.coeffs["m"], F.coeffs["nn"]
        if abs(nn) > eps:
            y = -mm / nn
            items = [(l - mm * mm / nn, {"y": y}, "min" if nn > 0 else "max")]
        elif abs(mm) > eps:
            items = []
        else:
            items = [(l, {"y": 0.0}, "degenerate")]
        return _pack(items)

    scale = max(F.scale, 1e-300)
    C = F.coeffs["C"]
    items = []
    if abs(C) > eps:
        def dh(t):
            return F.dA(t) - F.B(t) * F.dB(t) / (2 * C)

        def h(t):
            return F.A(t) - F.B(t) ** 2 / (4 * C)

        if np.max(np.abs(dh(np.linspace(0, math.pi, 64)))) <= 1e-12 * scale:
            t = 0.0
            items.append((float(h(t)), {"theta": t, "gamma": float(-F.B(t) / (2 * C))}, "degenerate"))
            return _pack(items)
        for t in _roots(dh, 0.0, math.pi, grid // 2, scale):
            g = -F.B(t) / (2 * C)
            hxx = F.d2A(t) - F.B(t) * g  # B'' = -B
            typ = _classify_hessian(hxx, F.dB(t), 2 * C, scale)
            items.append((float(h(t)), {"theta": float(t), "gamma": float(g)}, typ))
    elif max(abs(F.coeffs["p"]), abs(F.coeffs["q"])) > eps:
        for t in _roots(F.B, 0.0, math.pi, grid // 2, scale):
            db = F.dB(t)
            g = -F.dA(t) / db
            items.append((float(F.A(t)), {"theta": float(t), "gamma": float(g)}, "saddle"))
    else:
        if np.max(np.abs(F.dA(np.linspace(0, math.pi, 64)))) <= 1e-12 * scale:
            items.append((float(F.A(0.0)), {"theta": 0.0, "gamma": 0.0}, "degenerate"))
        else:
            for t in _roots(F.dA, 0.0, math.pi, grid // 2, scale):
                d2 = F.d2A(t)
                typ = "min" if d2 > 1e-9 * scale else "max" if d2 < -1e-9 * scale else "degenerate"
                items.append((float(F.A(t)), {"theta": float(t), "gamma": 0.0}, typ))
    return _pack(items)


def _pack(items) -> OracleResult:
    items = _dedupe(items, 1.0)
    return OracleResult([x[0] for x in items], [x[1] for x in items], [x[2] for x in items])


# --------------------------------------------------------------------------- slices


@dataclass(frozen=True)
class RegularSliceJet:
    """Second-form blocks of the immersed (n-1)-manifold x_n = 0."""

    blocks: np.ndarray
    reduced: bool = False


def regular_slice(m: MongeJet) -> RegularSliceJet:
    return RegularSliceJet(m.a[:, : m.n - 1, : m.n - 1].copy())


def associated_slice(m: MongeJet, tol: float | None = None) -> RegularSliceJet:
    """Slice of the z-reduced jet, expressed in the original normal coordinates.

    For n=3 with a_002 != 0 the coordinate z is first re-chosen so that the
    last component has no xz, yz terms; otherwise the plain slice is returned.
    """
    if m.n != 3:
        return regular_slice(m)
    try:
        red, rec = z_reduce(m, tol)
    except DegenerateError:
        return regular_slice(m)
    R = rec.target_rotation[2:, 2:].T
    blocks = np.einsum("lj,lab->jab", R, red.a[:, :2, :2])
    return RegularSliceJet(blocks, True)


def principal_curvatures(slice_: RegularSliceJet, v) -> np.ndarray:
    S = np.einsum("l,lij->ij", np.asarray(v, dtype=float), slice_.blocks)
    return np.sort(np.linalg.eigvalsh(S))


def curve_curvature(f: PolyMapGerm, axis: int = 0, tol: float | None = None) -> float:
    """Curvature at t=0 of the coordinate curve t -> f(t e_axis)."""
    j = jet2(f)
    d1 = j.linear[:, axis]
    d2 = j.hess[:, axis, axis]
    n1 = np.linalg.norm(d1)
    if n1 <= get_tol(tol):
        raise SingularCurveError(f"curve along axis {axis} is singular at 0")
    return cross_norm(d1, d2) / n1**3


# --------------------------------------------------------------------------- closed forms


def _unique_values(vals, scale: float) -> list[float]:
    out = []
    for v in sorted(float(x) for x in vals):
        if out and abs(out[-1] - v) <= 1e-8 * max(abs(v), 1e-6):
            continue
        out.append(v)
    return out


def closed_form_direction(m: MongeJet, v, tol: float | None = None) -> list[float]:
    """Closed-form critical values of K_v for n=3 (eigenvalue forms)."""
    tol = get_tol(tol)
    F = normal_curvature_form(m, v)
    eps = tol * max(m.scale, 1e-300)
    C = F.coeffs["C"]
    b = np.array([F.coeffs["p"], F.coeffs["q"]])
    if abs(C) > eps:
        return _unique_values(np.linalg.eigvalsh(F.xy_block - np.outer(b, b) / C), m.scale)
    if np.max(np.abs(b)) > eps:
        t0 = math.atan2(-b[0], b[1])
        return [float(F.A(t0))]
    return _unique_values(np.linalg.eigvalsh(F.xy_block), m.scale)


def axial_closed_n3_primary(m: MongeJet, tol: float | None = None) -> list[float]:
    """Primary values from the z-reduced last component (2x2 eigenvalue problem)."""
    cf = z_reduced_coefficients(m)
    M = np.array([[cf["a200"], cf["a110"]], [cf["a110"], cf["a020"]]])
    return _unique_values(np.linalg.eigvalsh(M), m.scale)


def formula_m3_case_split(m: MongeJet, tol: float | None = None) -> dict:
    """Trigonometric case split for the primary values, kept as a cross-check.

    Case "2" reproduces the published statement (a single value a200 - |a110|);
    ``eigen`` holds the values the critical-point equation actually yields.
    """
    tol = get_tol(tol)
    cf = z_reduced_coefficients(m)
    a, b, d = cf["a200"], cf["a110"], cf["a020"]
    eps = tol * max(m.scale, 1e-300)

    def K(t):
        return a * math.cos(t) ** 2 + b * math.sin(2 * t) + d * math.sin(t) ** 2

    if abs(d - a) > eps:
        if abs(b) > eps:
            base = 0.5 * math.atan(2 * b / (a - d))
            vals = [K(base + j * math.pi / 2) for j in range(4)]
        else:
            vals = [a, d]
        case = "1"
        stated = _unique_values(vals, m.scale)
    else:
        case = "2"
        stated = [a - abs(b)]
    eigen = _unique_values([a + b, a - b] if case == "2" else stated, m.scale)
    return {"case": case, "stated": stated, "eigen": eigen,
            "discrepancy": case == "2" and abs(b) > eps}


def axial_closed_n2(m: MongeJet, frame: AdaptedFrame, orbit: OrbitClass | None = None,
                    tol: float | None = None) -> dict[int, list[float]]:
    """Closed-form primary and secondary values for surfaces."""
    tol = get_tol(tol)
    orbit = orbit or classify(m, tol)
    a20, a11, a02 = m.a[:, 0, 0], m.a[:, 0, 1], m.a[:, 1, 1]
    v2 = frame.vectors[1]
    out: dict[int, list[float]] = {1: [], 2: []}
    if orbit.tag in ("NondegParabola", "HalfLine"):
        n02 = np.linalg.norm(a02)
        out[1] = [float((a02 @ a20 - (a02 @ a11) ** 2 / n02**2) / n02)]
        if orbit.tag == "HalfLine":
            mag = cross_norm(a02, a20) / n02
            out[2] = [float(math.copysign(mag, a20 @ v2))]
    elif orbit.tag == "Line":
        mag = cross_norm(a11, a20) / np.linalg.norm(a11)
        out[2] = [float(math.copysign(mag, a20 @ v2))]
    else:
        out[1] = [0.0]
        out[2] = [float(np.linalg.norm(a20))]
    return out


def axial_closed_n3(m: MongeJet, frame: AdaptedFrame, tol: float | None = None) -> dict[int, list[float]]:
    if m.n != 3 or m.k not in (1, 2):
        raise UnsupportedError("closed forms cover n=3 with k=1, 2")
    out = {}
    for i, v in enumerate(frame.vectors, start=1):
        out[i] = closed_form_direction(m, v, tol)
    if np.linalg.norm(m.a[:, 2, 2]) > get_tol(tol) * max(m.scale, 1e-300):
        primary = axial_closed_n3_primary(m, tol)
        if np.allclose(frame.vectors[0], m.a[:, 2, 2] / np.linalg.norm(m.a[:, 2, 2]), atol=1e-12):
            out[1] = primary
    return out


# --------------------------------------------------------------------------- report


@dataclass
class AxialEntry:
    i: int
    direction: list
    values: list
    method: str
    agree: bool | None
    params: list
    types: list
    closed: list | None = None
    oracle: list | None = None
    label: str = ""

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "label": self.label,
            "direction": list(self.direction),
            "values": [float(v) for v in self.values],
            "method": self.method,
            "agree": self.agree,
            "params": list(self.params),
            "types": list(self.types),
            "closed": None if self.closed is None else [float(v) for v in self.closed],
            "oracle": None if self.oracle is None else [float(v) for v in self.oracle],
        }


@dataclass
class AxialCurvatureReport:
    entries: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def values(self, i: int) -> list[float]:
        for e in self.entries:
            if e.i == i:
                return list(e.values)
        raise KeyError(i)

    def total(self) -> int:
        return sum(len(e.values) for e in self.entries if e.label != "extended")

    def to_dict(self) -> dict:
        return {"axial": [e.to_dict() for e in self.entries], "notes": list(self.notes)}


def _match(closed: list[float], oracle: list[float], atol: float = 1e-8) -> bool:
    return all(any(abs(c - o) <= atol * max(1.0, abs(c)) for o in oracle) for c in closed)


def axial_report(m: MongeJet, frame: AdaptedFrame | None = None, orbit: OrbitClass | None = None,
                 tol: float | None = None, grid: int = 4096) -> AxialCurvatureReport:
    """Axial curvatures along every frame direction, closed form and oracle side by side."""
    tol = get_tol(tol)
    orbit = orbit or classify(m, tol)
    frame = frame or adapted_frame(m, orbit, tol=tol)
    if m.n == 2:
        closed = axial_closed_n2(m, frame, orbit, tol)
    elif m.n == 3 and m.k in (1, 2):
        closed = axial_closed_n3(m, frame, tol)
    else:
        closed = None
    report = AxialCurvatureReport()
    oracle_only = orbit.near_degenerate or closed is None
    if orbit.near_degenerate:
        report.notes.append("near a stratum boundary: closed forms not applied")
    for i, v in enumerate(frame.vectors, start=1):
        res = axial_oracle(m, v, grid, tol)
        if oracle_only:
            entry = AxialEntry(i, v.tolist(), res.values, "oracle", None, res.params, res.types, None, res.values)
        else:
            cv = closed[i]
            agree = _match(cv, res.values) and len(cv) == len(res.values)
            entry = AxialEntry(i, v.tolist(), res.values, "both", agree, res.params, res.types, cv, res.values)
        report.entries.append(entry)
    if frame.extended is not None:
        res = axial_oracle(m, frame.extended, grid, tol)
        ok = _match([frame.extended_value], res.values)
        report.entries.append(AxialEntry(frame.l + 1, frame.extended.tolist(), res.values, "both", ok,
                                         res.params, res.types, [frame.extended_value], res.values, "extended"))
    if m.n == 3 and np.linalg.norm(m.a[:, 2, 2]) > tol * max(m.scale, 1e-300):
        split = formula_m3_case_split(m, tol)
        if split["discrepancy"]:
            report.notes.append(
                "equal diagonal case: published single value a200-|a110| differs from the critical values a200+-a110"
            )
    return report


__all__ = [
    "NormalCurvatureForm",
    "normal_curvature_form",
    "OracleResult",
    "axial_oracle",
    "RegularSliceJet",
    "regular_slice",
    "associated_slice",
    "principal_curvatures",
    "curve_curvature",
    "closed_form_direction",
    "axial_closed_n2",
    "axial_closed_n3",
    "axial_closed_n3_primary",
    "formula_m3_case_split",
    "AxialEntry",
    "AxialCurvatureReport",
    "axial_report",
]
