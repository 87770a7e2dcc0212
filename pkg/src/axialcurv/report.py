"""Full analysis pipeline and its JSON report."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .classify import classify, locus_shape
from .curvatures import associated_slice, axial_report, principal_curvatures
from .errors import UndefinedError, UnsupportedError
from .frames import adapted_frame
from .jetcore import PolyMapGerm, monge_from_germ
from .linalg import get_tol
from .locus import affine_span, axial_dimension, axial_space, umbilic_curvature
from .verify import designated_index, run_checks

SUPPORTED = "(n=2, any k>=1), (n=3, k=1), (n=3, k=2)"


@dataclass
class AnalysisReport:
    input: dict
    monge: dict
    orbit: dict
    locus_shape: str
    affine_span: dict
    axial_space: dict
    frame: dict
    axial: list
    umbilic: dict
    principal_comparison: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisReport":
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))


def _check_supported(n: int, k: int) -> None:
    if not (n == 2 or (n == 3 and k in (1, 2))):
        raise UnsupportedError(f"(n,k)=({n},{k}) is not supported; supported: {SUPPORTED}")


def analyze(f: PolyMapGerm, tol: float | None = None, grid: int = 4096, checks: bool = True) -> AnalysisReport:
    _check_supported(f.n, f.k)
    tol = get_tol(tol)
    m, rec = monge_from_germ(f, tol)
    orbit = classify(m, tol)
    shape = locus_shape(m, orbit, tol)
    span = affine_span(m, tol)
    ax = axial_space(m, span)
    frame = adapted_frame(m, orbit, span, ax, tol)
    axial = axial_report(m, frame, orbit, tol, grid)
    warnings = list(orbit.warnings) + list(axial.notes) + list(frame.notes)

    umb: dict = {"defined": False, "value": None, "focus": None}
    try:
        ku = umbilic_curvature(m, span)
        umb.update(defined=True, value=ku)
        l = axial_dimension(m)
        if m.n < m.k + 1 and span.dim == l:
            direction = frame.extended
        else:
            direction = frame.vectors[designated_index(m, span.dim) - 1]
        if ku > tol * max(m.scale, 1e-300) and direction is not None:
            sign = np.sign(np.dot(span.closest_to_origin(), direction)) or 1.0
            umb["focus"] = (sign * direction / ku).tolist()
    except UndefinedError as exc:
        umb["reason"] = str(exc)

    comparison = []
    if m.n == 3:
        sl = associated_slice(m, tol)
        for e in axial.entries[: frame.l]:
            pc = principal_curvatures(sl, np.array(e.direction)).tolist()
            coincide = len(pc) > 0 and all(any(abs(p - v) <= 1e-8 * max(1.0, abs(p)) for v in e.values) for p in pc) \
                and all(any(abs(p - v) <= 1e-8 * max(1.0, abs(p)) for p in pc) for v in e.values)
            comparison.append({"i": e.i, "principal": pc, "axial": list(e.values), "coincide": bool(coincide)})
            if not coincide:
                warnings.append(f"v{e.i}-principal curvatures of the slice {pc} do not coincide with the axial values {e.values}")

    results = [c.to_dict() for c in run_checks(m, f, axial)] if checks else []
    return AnalysisReport(
        input=f.to_dict(),
        monge={"n": m.n, "k": m.k, "a": m.a.tolist(), "transform": {
            "source_linear": rec.source_linear.tolist(),
            "source_quadratic": rec.source_quadratic.tolist(),
            "target_rotation": rec.target_rotation.tolist(),
            "order": rec.order,
        }},
        orbit=orbit.to_dict(),
        locus_shape=str(shape),
        affine_span={"base": span.base.tolist(), "dirs": span.dirs.tolist(), "dim": span.dim, "tol": span.tol},
        axial_space={"dirs": ax.dirs.tolist(), "l": ax.l, "flag": ax.flag},
        frame=frame.to_dict(),
        axial=[e.to_dict() for e in axial.entries],
        umbilic=umb,
        principal_comparison=comparison,
        checks=results,
        warnings=warnings,
    )


def format_table(report: AnalysisReport) -> str:
    lines = [
        f"orbit        {report.orbit['tag']}",
        f"locus        {report.locus_shape}",
        f"Aff_p dim    {report.affine_span['dim']}",
        f"frame case   {report.frame['case']} ({'unique' if report.frame['unique'] else 'free'})",
    ]
    for e in report.axial:
        vals = ", ".join(f"{v:.12g}" for v in e["values"]) or "none"
        label = f"{e['i']}" + (" (extended)" if e.get("label") == "extended" else "")
        lines.append(f"axial {label:<14} {vals}   [{e['method']}, agree={e['agree']}]")
    u = report.umbilic
    lines.append(f"umbilic      {u['value']:.12g}" if u["defined"] else "umbilic      undefined")
    for c in report.checks:
        lines.append(f"check {c['name']:<24} {c['status']}")
    for w in report.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines)
