"""Executable checks of the identities relating axial curvatures to other invariants."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .classify import classify
from .curvatures import (
    AxialCurvatureReport,
    associated_slice,
    axial_oracle,
    axial_report,
    curve_curvature,
)
from .errors import AxialCurvError
from .frames import adapted_frame
from .jetcore import Jet2, MongeJet, PolyMapGerm, monge_from_germ, monge_normalize
from .linalg import get_tol
from .locus import affine_span, axial_dimension, umbilic_curvature

PASS, FAIL, NA = "pass", "fail", "not-applicable"


@dataclass
class CheckResult:
    name: str
    status: str
    lhs: object = None
    rhs: object = None
    tol: float = 0.0
    witnesses: dict = field(default_factory=dict)
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "lhs": _plain(self.lhs),
            "rhs": _plain(self.rhs),
            "tol": self.tol,
            "witnesses": _plain(self.witnesses),
            "reason": self.reason,
        }


def _plain(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def _na(name: str, reason: str) -> CheckResult:
    return CheckResult(name, NA, reason=reason)


def _compare(name, lhs, rhs, tol, **wit) -> CheckResult:
    ok = abs(lhs - rhs) <= tol * max(1.0, abs(rhs))
    return CheckResult(name, PASS if ok else FAIL, lhs, rhs, tol, wit)


def _is_monge_input(f: PolyMapGerm, rec) -> bool:
    n = f.n
    return (np.allclose(rec.source_linear, np.eye(n), atol=1e-12)
            and np.allclose(rec.target_rotation, np.eye(f.target_dim), atol=1e-12))


def _value_at_theta(report: AxialCurvatureReport, i: int, theta: float, tol: float = 1e-6):
    """Value of the i-th entry whose critical angle equals ``theta`` modulo pi."""
    e = report.entries[i - 1]
    if len(e.values) == 1:
        return e.values[0]
    for val, par in zip(e.values, e.params):
        d = (par.get("theta", 0.0) - theta) % math.pi
        if min(d, math.pi - d) < tol:
            return val
    return None


# ------------------------------------------------------------------ curve identity


def check_curve_identity(f: PolyMapGerm, tol: float = 1e-8) -> CheckResult:
    """Squared curvature of the x-axis curve against the sum of squared axial values."""
    name = "curve_identity"
    try:
        m, rec = monge_from_germ(f)
    except AxialCurvError as exc:
        return _na(name, str(exc))
    if not _is_monge_input(f, rec):
        return _na(name, "germ is not given in Monge form")
    orbit = classify(m)
    eps = get_tol() * max(m.scale, 1e-300)
    if m.n == 2:
        if orbit.tag != "HalfLine" or np.linalg.norm(m.a[:, 0, 1]) > eps:
            return _na(name, "needs a half-line locus with a_11 = 0")
        rep = axial_report(m, orbit=orbit)
        k1, k2 = rep.values(1), rep.values(2)
        if len(k1) != 1 or len(k2) != 1:
            return _na(name, "axial values undefined")
        kappa = curve_curvature(f, 0)
        return _compare(name, kappa**2, k1[0] ** 2 + k2[0] ** 2, tol, kappa=kappa, k_a1=k1[0], k_a2=k2[0])
    if (m.n, m.k) == (3, 1):
        if orbit.tag != "Z2_0" or np.linalg.norm(m.a[:, 0, 1]) > eps or np.linalg.norm(m.a[:, 0, 2]) > eps:
            return _na(name, "needs the z^2 orbit with a_110 = a_101 = 0")
        rep = axial_report(m, orbit=orbit)
        k1, k2 = _value_at_theta(rep, 1, 0.0), _value_at_theta(rep, 2, 0.0)
        if k1 is None or k2 is None:
            return _na(name, "no critical value at theta = 0")
        kappa = curve_curvature(f, 0)
        return _compare(name, kappa**2, k1**2 + k2**2, tol, kappa=kappa, k1_a1=k1, k1_a2=k2)
    return _na(name, "covers surfaces and n=3, k=1")


# ------------------------------------------------------------------ Gaussian curvature


def check_gauss(m: MongeJet, tol: float = 1e-8, report: AxialCurvatureReport | None = None) -> CheckResult:
    name = "gauss"
    if (m.n, m.k) != (3, 1):
        return _na(name, "needs n=3, k=1")
    orbit = classify(m)
    if orbit.tag not in ("Z2_0", "ZERO"):
        return _na(name, f"orbit {orbit.tag} is not covered")
    blocks = associated_slice(m).blocks
    K = float(sum(np.linalg.det(b) for b in blocks))
    report = report or axial_report(m, orbit=orbit)
    k1, k2 = report.values(1), report.values(2)
    if not k1 or not k2:
        return _na(name, "axial values undefined")
    rhs = k1[0] * k1[-1] + k2[0] * k2[-1]
    return _compare(name, K, rhs, tol, k_a1=k1, k_a2=k2)


# ------------------------------------------------------------------ height function


def _morse_class(det: float, trace: float, eps: float) -> str:
    if det > eps:
        return "A1+"
    if det < -eps:
        return "A1-"
    return "A>=2"


def check_height_singularity(m: MongeJet, tol: float = 1e-8) -> CheckResult:
    name = "height_singularity"
    if m.n != 2:
        return _na(name, "needs a surface")
    orbit = classify(m)
    if orbit.tag not in ("NondegParabola", "HalfLine"):
        return _na(name, f"locus type {orbit.tag} is not covered")
    a02 = m.a[:, 1, 1]
    n02 = float(np.linalg.norm(a02))
    v1 = a02 / n02
    # rescale y by 1/sqrt(|a02|) so that the yy entry becomes 1
    s = 1.0 / math.sqrt(n02)
    hess = np.array([[v1 @ m.a[:, 0, 0], s * (v1 @ m.a[:, 0, 1])],
                     [s * (v1 @ m.a[:, 0, 1]), s * s * (v1 @ a02)]])
    det = float(np.linalg.det(hess))
    k1 = axial_report(m, orbit=orbit).values(1)[0]
    eps = tol * max(m.scale, 1.0)
    lhs = _morse_class(det, float(np.trace(hess)), eps)
    rhs = "A1+" if k1 > eps else "A1-" if k1 < -eps else "A>=2"
    ok = lhs == rhs and abs(det - k1) <= tol * max(1.0, abs(k1))
    return CheckResult(name, PASS if ok else FAIL, lhs, rhs, tol, {"hessian_det": det, "k_a1": k1})


# ------------------------------------------------------------------ umbilic relation


def designated_index(m: MongeJet, dim: int) -> int:
    return max(dim + 1, 2)


def check_umbilic_relation(m: MongeJet, tol: float = 1e-8, report: AxialCurvatureReport | None = None) -> CheckResult:
    name = "umbilic_relation"
    span = affine_span(m)
    try:
        ku = umbilic_curvature(m, span)
    except AxialCurvError as exc:
        return _na(name, str(exc))
    try:
        frame = adapted_frame(m, span=span)
    except AxialCurvError as exc:
        return _na(name, str(exc))
    report = report or axial_report(m, frame)
    l = axial_dimension(m)
    if m.n < m.k + 1 and span.dim == l:
        ext = [e for e in report.entries if e.label == "extended"]
        if not ext or len(ext[0].values) != 1:
            return CheckResult(name, FAIL, ku, None, tol, {"reason": "extended projection is not constant"})
        return _compare(name, ku, abs(ext[0].values[0]), tol, index=l + 1)
    i = designated_index(m, span.dim)
    vals = report.values(i)
    if len(vals) != 1:
        return CheckResult(name, FAIL, ku, vals, tol, {"index": i})
    zeros = {j: report.values(j) for j in range(i + 1, l + 1)}
    zeros_ok = all(len(v) == 1 and abs(v[0]) <= tol * max(1.0, m.scale) for v in zeros.values())
    res = _compare(name, ku, abs(vals[0]), tol, index=i, higher=zeros)
    if not zeros_ok:
        res.status = FAIL
        res.reason = "higher axial values are not zero"
    return res


# ------------------------------------------------------------------ normal sections


def section_jet(m: MongeJet, gamma: float) -> Jet2:
    """2-jet of s, z -> f(s cos(gamma), s sin(gamma), z) for a Monge-form 3-manifold."""
    J = np.array([[math.cos(gamma), 0.0], [math.sin(gamma), 0.0], [0.0, 1.0]])
    full = m.to_jet2()
    return Jet2(2, full.linear.shape[0] - 2, full.linear @ J, np.einsum("ba,mbc,cd->mad", J, full.hess, J))


def section_value(m: MongeJet, v: np.ndarray, gamma: float):
    """Axial value of the normal section at angle gamma along the lifted direction v."""
    sj = section_jet(m, gamma)
    sm, rec = monge_normalize(sj)
    target = np.concatenate([np.zeros(2), v])
    w = rec.target_rotation[:, 1:].T @ target
    vals = axial_oracle(sm, w).values
    return vals[0] if len(vals) == 1 else None


def _sweep_critical_values(fn, gammas: np.ndarray, vals: np.ndarray) -> list[float]:
    n = len(gammas)
    spread = np.max(vals) - np.min(vals)
    if spread <= 1e-10 * max(1.0, np.max(np.abs(vals))):
        return [float(vals[0])]
    out = []
    for i in range(n):
        a, b, c = vals[i - 1], vals[i], vals[(i + 1) % n]
        is_min = b <= min(a, c) and b < max(a, c)
        is_max = b >= max(a, c) and b > min(a, c)
        if is_min or is_max:
            lo, hi = gammas[i - 1], gammas[(i + 1) % n]
            if hi < lo:
                hi += 2 * math.pi
            sign = 1.0 if is_min else -1.0
            res = minimize_scalar(lambda g: sign * fn(g), bounds=(lo, hi), method="bounded",
                                  options={"xatol": 1e-12})
            out.append(float(sign * res.fun))
    out.sort()
    merged = []
    for x in out:
        if not merged or abs(x - merged[-1]) > 1e-8 * max(1.0, abs(x)):
            merged.append(x)
    return merged


def check_section_relation(m: MongeJet, tol: float = 1e-6, points: int = 720,
                           report: AxialCurvatureReport | None = None) -> CheckResult:
    name = "section_relation"
    if (m.n, m.k) != (3, 2):
        return _na(name, "needs n=3, k=2")
    frame = adapted_frame(m)
    report = report or axial_report(m, frame)
    grid = np.linspace(0.0, 2 * math.pi, points, endpoint=False)
    keep = np.array([min(abs(g - math.pi / 2), abs(g - 3 * math.pi / 2)) > 1e-9 for g in grid])
    grid = grid[keep]
    per_dir = {}
    status = NA
    for i, v in enumerate(frame.vectors, start=1):
        vals = [section_value(m, v, g) for g in grid]
        if any(x is None for x in vals):
            per_dir[i] = {"status": NA, "reason": "section axial value undefined for some angle"}
            continue
        fn = lambda g, v=v: section_value(m, v, g)
        crit = _sweep_critical_values(fn, grid, np.array(vals))
        target = report.values(i)
        ok = len(crit) == len(target) and all(abs(a - b) <= tol * max(1.0, abs(b)) for a, b in zip(crit, target))
        per_dir[i] = {"status": PASS if ok else FAIL, "sections": crit, "manifold": target}
        status = FAIL if (not ok or status == FAIL) else PASS
    lhs = {i: d.get("sections") for i, d in per_dir.items()}
    rhs = {i: d.get("manifold") for i, d in per_dir.items()}
    reason = "" if status != NA else "no direction has defined section values"
    return CheckResult(name, status, lhs, rhs, tol, {"directions": per_dir}, reason)


# ------------------------------------------------------------------ axis curve


def check_axis_curve(f: PolyMapGerm, tol: float = 1e-8) -> CheckResult:
    """Curvature of the y-axis curve against the single value in the two-sided unbounded direction."""
    name = "axis_curve"
    try:
        m, rec = monge_from_germ(f)
    except AxialCurvError as exc:
        return _na(name, str(exc))
    if (m.n, m.k) != (3, 1):
        return _na(name, "needs n=3, k=1")
    if not _is_monge_input(f, rec):
        return _na(name, "germ is not given in Monge form")
    orbit = classify(m)
    if orbit.tag not in ("XZ_Z2", "XZ_0"):
        return _na(name, f"orbit {orbit.tag} is not covered")
    eps = get_tol() * max(m.scale, 1e-300)
    frame = adapted_frame(m, orbit)
    i = 2 if orbit.tag == "XZ_Z2" else 1
    v = frame.vectors[i - 1]
    if abs(abs(v[0]) - 1.0) > 1e-12:
        return _na(name, "two-sided unbounded direction is not the first normal axis")
    if abs(m.a[0, 1, 2]) > eps or abs(m.a[1, 1, 1]) > eps:
        return _na(name, "needs a^1_011 = 0 and a^2_020 = 0")
    report = axial_report(m, frame, orbit)
    vals = report.values(i)
    if len(vals) != 1:
        return CheckResult(name, FAIL, None, vals, tol, {"index": i})
    kappa = curve_curvature(f, 1)
    return _compare(name, kappa, abs(vals[0]), tol, index=i)


# ------------------------------------------------------------------ segment endpoints


def check_segment_endpoints(m: MongeJet, tol: float = 1e-8, report: AxialCurvatureReport | None = None) -> CheckResult:
    name = "segment_endpoints"
    if (m.n, m.k) != (3, 1):
        return _na(name, "needs n=3, k=1")
    orbit = classify(m)
    if orbit.tag not in ("Z2_0", "ZERO"):
        return _na(name, f"orbit {orbit.tag} is not covered")
    S = associated_slice(m).blocks
    comm = float(np.linalg.norm(S[0] @ S[1] - S[1] @ S[0]))
    if comm >= 1e-10 * max(1.0, m.scale) ** 2:
        return _na(name, f"slice shape operators do not commute (|[S1,S2]| = {comm:.3g})")
    frame = adapted_frame(m, orbit)
    report = report or axial_report(m, frame, orbit)
    # curvature ellipse of the slice: center + u cos 2t + w sin 2t, a segment here
    a00, a11, a01 = S[:, 0, 0], S[:, 1, 1], S[:, 0, 1]
    center, u, w = (a00 + a11) / 2, (a00 - a11) / 2, a01
    M = np.column_stack([u, w])
    U, s, _ = np.linalg.svd(M)
    ends = [center + s[0] * U[:, 0], center - s[0] * U[:, 0]]
    ends = sorted([tuple(float(x) for x in frame.vectors @ p) for p in ends])
    pairs = []
    e1 = report.entries[0]
    for val, par in zip(e1.values, e1.params):
        other = _value_at_theta(report, 2, par["theta"])
        if other is not None:
            pairs.append((float(val), float(other)))
    if len(e1.values) == 1:
        pairs = [(e1.values[0], x) for x in report.values(2)]
    if len(pairs) == 1:
        pairs = pairs * 2
    pairs.sort()
    ok = len(pairs) == 2 and all(
        np.allclose(np.array(p), np.array(q), atol=tol * max(1.0, m.scale)) for p, q in zip(pairs, ends)
    )
    return CheckResult(name, PASS if ok else FAIL, ends, pairs, tol, {"commutator": comm})


# ------------------------------------------------------------------ driver


def run_checks(m: MongeJet, f: PolyMapGerm | None = None, report: AxialCurvatureReport | None = None) -> list[CheckResult]:
    out = []
    if f is not None:
        out.append(check_curve_identity(f))
        out.append(check_axis_curve(f))
    out.append(check_gauss(m, report=report))
    out.append(check_height_singularity(m))
    out.append(check_umbilic_relation(m, report=report))
    out.append(check_section_relation(m, report=report))
    out.append(check_segment_endpoints(m, report=report))
    return out


__all__ = [
    "CheckResult",
    "check_curve_identity",
    "check_gauss",
    "check_height_singularity",
    "check_umbilic_relation",
    "check_section_relation",
    "check_axis_curve",
    "check_segment_endpoints",
    "run_checks",
    "section_jet",
    "section_value",
]
