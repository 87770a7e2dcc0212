"""Polynomial map germs, their 2-jets, Monge normalization and the z-reduction.

Coefficient convention: a MongeJet stores raw Hessians, so component n-1+l of
the map has 2-jet ``0.5 * x @ a[l] @ x``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import jsonschema
import numpy as np

from .errors import CorankError, DegenerateError, DimensionError, NotGermError, SchemaError
from .linalg import complete_basis, get_tol, numerical_rank

GERM_SCHEMA = {
    "type": "object",
    "required": ["n", "k", "components"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "k": {"type": "integer", "minimum": 1},
        "components": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["exp", "coeff"],
                    "properties": {
                        "exp": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                        "coeff": {
                            "oneOf": [
                                {"type": "number"},
                                {"type": "string", "pattern": r"^\s*[-+]?\d+(\s*/\s*[-+]?\d+)?\s*$"},
                            ]
                        },
                    },
                    "additionalProperties": False,
                },
            },
        },
        "name": {"type": "string"},
        "description": {"type": "string"},
    },
    "additionalProperties": True,
}

Term = tuple[tuple[int, ...], float]


def _coeff(value) -> float | Fraction:
    if isinstance(value, str):
        try:
            return Fraction(value.replace(" ", ""))
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational coefficient {value!r}") from exc
    return float(value)


@dataclass(frozen=True)
class PolyMapGerm:
    """Polynomial map (R^n, 0) -> (R^(n+k), 0), one term list per component."""

    n: int
    k: int
    components: tuple[tuple[Term, ...], ...]
    name: str = ""

    @property
    def target_dim(self) -> int:
        return self.n + self.k

    def to_dict(self) -> dict:
        comps = []
        for comp in self.components:
            terms = []
            for exp, c in comp:
                coeff = f"{c.numerator}/{c.denominator}" if isinstance(c, Fraction) else float(c)
                terms.append({"exp": list(exp), "coeff": coeff})
            comps.append(terms)
        out = {"n": self.n, "k": self.k, "components": comps}
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_monge(cls, m: "MongeJet", extra: dict[int, Sequence[Term]] | None = None, name: str = ""):
        """Germ whose 2-jet is exactly ``m``; ``extra`` adds higher-order terms per component."""
        n, N = m.n, m.n + m.k
        comps: list[list[Term]] = []
        for i in range(n - 1):
            e = [0] * n
            e[i] = 1
            comps.append([(tuple(e), 1.0)])
        for l in range(m.k + 1):
            terms = []
            for i in range(n):
                for j in range(i, n):
                    e = [0] * n
                    e[i] += 1
                    e[j] += 1
                    c = 0.5 * m.a[l, i, i] if i == j else m.a[l, i, j]
                    if c != 0.0:
                        terms.append((tuple(e), float(c)))
            comps.append(terms)
        for idx, terms in (extra or {}).items():
            comps[idx].extend((tuple(e), float(c)) for e, c in terms)
        assert len(comps) == N
        return cls(n, m.k, tuple(tuple(c) for c in comps), name)


def parse_germ(text: str | dict) -> PolyMapGerm:
    """Parse and validate a germ-description document (JSON text or dict)."""
    if isinstance(text, (str, bytes)):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
    else:
        doc = text
    try:
        jsonschema.validate(doc, GERM_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SchemaError(exc.message) from exc
    n, k = doc["n"], doc["k"]
    if len(doc["components"]) != n + k:
        raise SchemaError(f"expected {n + k} components, got {len(doc['components'])}")
    comps = []
    for ci, comp in enumerate(doc["components"]):
        merged: dict[tuple[int, ...], float | Fraction] = {}
        for term in comp:
            exp = tuple(term["exp"])
            if len(exp) != n:
                raise SchemaError(f"component {ci}: exponent {list(exp)} has length != n={n}")
            merged[exp] = merged.get(exp, 0) + _coeff(term["coeff"])
        if merged.get((0,) * n, 0) != 0:
            raise NotGermError(f"component {ci} has nonzero constant term")
        comps.append(tuple((e, c) for e, c in merged.items() if c != 0))
    germ = PolyMapGerm(n, k, tuple(comps), doc.get("name", ""))
    rank = numerical_rank(jet2(germ).linear)
    if rank != n - 1:
        raise CorankError(f"differential at 0 has rank {rank}, expected n-1={n - 1}")
    return germ


def load_germ(path: str | Path) -> PolyMapGerm:
    return parse_germ(Path(path).read_text())


def evaluate(f: PolyMapGerm, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.zeros(f.target_dim)
    for m, comp in enumerate(f.components):
        for exp, c in comp:
            out[m] += float(c) * np.prod(x ** np.array(exp))
    return out


@dataclass(frozen=True)
class Jet2:
    """First derivatives ``linear`` (N x n) and raw Hessians ``hess`` (N x n x n) at 0."""

    n: int
    k: int
    linear: np.ndarray
    hess: np.ndarray


def jet2(f: PolyMapGerm) -> Jet2:
    n, N = f.n, f.target_dim
    L = np.zeros((N, n))
    H = np.zeros((N, n, n))
    for m, comp in enumerate(f.components):
        for exp, c in comp:
            c = float(c)
            deg = sum(exp)
            nz = [i for i, e in enumerate(exp) if e]
            if deg == 1:
                L[m, nz[0]] += c
            elif deg == 2:
                if len(nz) == 1:
                    H[m, nz[0], nz[0]] += 2.0 * c
                else:
                    i, j = nz
                    H[m, i, j] += c
                    H[m, j, i] += c
    return Jet2(n, f.k, L, H)


@dataclass(frozen=True)
class MongeJet:
    """2-jet in Monge form; ``a[l]`` is the raw Hessian of normal component l."""

    n: int
    k: int
    a: np.ndarray

    def __post_init__(self):
        if self.n < 2 or self.k < 1:
            raise DimensionError(f"Monge jets need n >= 2 and k >= 1, got n={self.n}, k={self.k}")
        a = np.asarray(self.a, dtype=float)
        if a.shape != (self.k + 1, self.n, self.n):
            raise DimensionError(f"a must have shape {(self.k + 1, self.n, self.n)}, got {a.shape}")
        a = 0.5 * (a + np.swapaxes(a, 1, 2))
        a.setflags(write=False)
        object.__setattr__(self, "a", a)

    @property
    def scale(self) -> float:
        return float(np.max(np.abs(self.a))) if self.a.size else 0.0

    def coeff(self, i: int, j: int) -> np.ndarray:
        """Vector (a^1_ij, ..., a^{k+1}_ij) for 0-based tangent indices."""
        return self.a[:, i, j].copy()

    def to_jet2(self) -> Jet2:
        n, N = self.n, self.n + self.k
        L = np.zeros((N, n))
        L[: n - 1, : n - 1] = np.eye(n - 1)
        H = np.zeros((N, n, n))
        H[n - 1 :] = self.a
        return Jet2(n, self.k, L, H)

    @classmethod
    def from_symbols(cls, **vectors) -> "MongeJet":
        """Build from named coefficient vectors, e.g. ``a20=..., a11=..., a02=...``.

        For n=3 use ``a200, a110, a020, a101, a011, a002``; missing ones are zero.
        """
        names2 = {"a20": (0, 0), "a11": (0, 1), "a02": (1, 1)}
        names3 = {"a200": (0, 0), "a110": (0, 1), "a020": (1, 1), "a101": (0, 2), "a011": (1, 2), "a002": (2, 2)}
        n = 2 if set(vectors) <= set(names2) else 3
        table = names2 if n == 2 else names3
        unknown = set(vectors) - set(table)
        if unknown:
            raise DimensionError(f"unknown coefficient names {sorted(unknown)}")
        size = len(np.atleast_1d(next(iter(vectors.values()))))
        a = np.zeros((size, n, n))
        for key, vec in vectors.items():
            i, j = table[key]
            a[:, i, j] = vec
            a[:, j, i] = vec
        return cls(n, size - 1, a)


@dataclass(frozen=True)
class FundamentalForms:
    gram: np.ndarray
    H: np.ndarray

    def second_form(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        return np.einsum("i,lij,j->l", u, self.H, u)


def fundamental_forms(m: MongeJet) -> FundamentalForms:
    gram = np.eye(m.n)
    gram[-1, -1] = 0.0
    return FundamentalForms(gram, m.a.copy())


@dataclass(frozen=True)
class TransformRecord:
    """Coordinate change taking an input jet to the produced one.

    New map = target_rotation.T @ f(source_linear @ (x - 0.5 * sum_i e_i x^T S_i x)),
    with S = ``source_quadratic`` indexed over the first n-1 source axes.
    """

    source_linear: np.ndarray
    source_quadratic: np.ndarray
    target_rotation: np.ndarray
    order: str = "source_quadratic, source_linear, map, target_rotation^T"

    def replay(self, j: Jet2) -> Jet2:
        P, Q, S = self.source_linear, self.target_rotation, self.source_quadratic
        L = Q.T @ j.linear @ P
        H = np.einsum("jm,ab,jbc,cd->mad", Q, P.T, j.hess, P)
        H = H - np.einsum("mi,iab->mab", L[:, : S.shape[0]], S)
        return Jet2(j.n, j.k, L, H)


def _image_frame(L: np.ndarray, r: int) -> np.ndarray:
    """Orthonormal target frame whose first r columns span the image of L."""
    N = L.shape[0]
    U = np.linalg.svd(L)[0][:, :r]
    proj = U @ U.T
    tangent = []
    for i in range(N):
        v = proj[:, i].copy()
        for _ in range(2):
            for t in tangent:
                v -= np.dot(t, v) * t
        nv = np.linalg.norm(v)
        if nv > 1e-6:
            tangent.append(v / nv)
        if len(tangent) == r:
            break
    Q = complete_basis(np.array(tangent).reshape(len(tangent), N), N).T
    if np.linalg.det(Q) < 0:
        Q[:, -1] *= -1
    return Q


def monge_normalize(j: Jet2, tol: float | None = None) -> tuple[MongeJet, TransformRecord]:
    n = j.n
    rank = numerical_rank(j.linear, tol)
    if rank != n - 1:
        raise CorankError(f"differential has rank {rank}, expected {n - 1}")
    Q = _image_frame(j.linear, n - 1)
    B = Q[:, : n - 1].T @ j.linear
    kernel = np.linalg.svd(j.linear)[2][-1]
    kernel = kernel if kernel[np.argmax(np.abs(kernel))] > 0 else -kernel
    P = np.column_stack([np.linalg.pinv(B), kernel])
    H = np.einsum("jm,ab,jbc,cd->mad", Q, P.T, j.hess, P)
    S = H[: n - 1].copy()
    rec = TransformRecord(P, S, Q)
    return MongeJet(n, j.k, H[n - 1 :]), rec


def monge_from_germ(f: PolyMapGerm, tol: float | None = None) -> tuple[MongeJet, TransformRecord]:
    return monge_normalize(jet2(f), tol)


def z_reduced_coefficients(m: MongeJet) -> dict[str, float]:
    """Closed-form xx, yy, xy coefficients of the last component after the z-reduction."""
    if m.n != 3:
        raise DimensionError("z-reduction needs n=3")
    c = m.coeff(2, 2)
    nc = float(np.linalg.norm(c))
    cx, cy = np.dot(c, m.coeff(0, 2)), np.dot(c, m.coeff(1, 2))
    return {
        "a200": (np.dot(c, m.coeff(0, 0)) - cx**2 / nc**2) / nc,
        "a020": (np.dot(c, m.coeff(1, 1)) - cy**2 / nc**2) / nc,
        "a110": (np.dot(c, m.coeff(0, 1)) - cx * cy / nc**2) / nc,
    }


def _normal_rotation_to_last(c: np.ndarray) -> np.ndarray:
    """Rotation R (det +1) with R @ c = |c| e_last, built from Givens steps."""
    K = c.size
    R = np.eye(K)
    v = c.astype(float).copy()
    for m in range(K - 1):
        r = np.hypot(v[m], v[-1])
        if r == 0.0:
            continue
        cs, sn = v[-1] / r, v[m] / r
        G = np.eye(K)
        G[m, m], G[m, -1], G[-1, m], G[-1, -1] = cs, -sn, sn, cs
        R = G @ R
        v = G @ v
    if v[-1] < 0:
        flip = np.eye(K)
        flip[-1, -1] = -1.0
        flip[0, 0] = -1.0
        R = flip @ R
    return R


def z_reduce(m: MongeJet, tol: float | None = None) -> tuple[MongeJet, TransformRecord]:
    """Rotate normals so a_002 points along the last axis, then complete the square in z.

    The result has a[l][2][2] = 0 for l < k, a[k][2][2] = 1 and no xz, yz terms
    in the last component.
    """
    if m.n != 3:
        raise DimensionError("z-reduction needs n=3")
    if m.k < 1:
        raise DimensionError("z-reduction needs k >= 1")
    c = m.coeff(2, 2)
    if np.linalg.norm(c) <= get_tol(tol) * max(m.scale, 1e-300):
        raise DegenerateError("a_002 vanishes; z-reduction is not possible")
    R = _normal_rotation_to_last(c)
    rot = np.einsum("lj,jab->lab", R, m.a)
    cz = rot[-1, 2, 2]
    tx, ty = rot[-1, 0, 2] / cz, rot[-1, 1, 2] / cz
    M = np.array([[1.0, 0, 0], [0, 1.0, 0], [-tx, -ty, 1.0 / np.sqrt(cz)]])
    a = np.einsum("ba,lbc,cd->lad", M, rot, M)
    a[-1, 2, 2] = 1.0
    a[-1, 0, 2] = a[-1, 2, 0] = a[-1, 1, 2] = a[-1, 2, 1] = 0.0
    a[:-1, 2, 2] = 0.0
    Q = np.eye(3 + m.k)
    Q[2:, 2:] = R.T
    return MongeJet(3, m.k, a), TransformRecord(M, np.zeros((2, 3, 3)), Q)


def random_rotation(dim: int, rng: np.random.Generator) -> np.ndarray:
    Q, R = np.linalg.qr(rng.standard_normal((dim, dim)))
    Q = Q * np.sign(np.diag(R))
    if np.linalg.det(Q) < 0:
        Q[:, 0] *= -1
    return Q


def transform_jet(j: Jet2, source: np.ndarray, rotation: np.ndarray) -> Jet2:
    """Jet of ``rotation @ f(source @ x)``."""
    L = rotation @ j.linear @ source
    H = np.einsum("mj,ab,jbc,cd->mad", rotation, source.T, j.hess, source)
    return Jet2(j.n, j.k, L, H)


__all__ = [
    "GERM_SCHEMA",
    "PolyMapGerm",
    "Jet2",
    "MongeJet",
    "FundamentalForms",
    "TransformRecord",
    "parse_germ",
    "load_germ",
    "evaluate",
    "jet2",
    "monge_normalize",
    "monge_from_germ",
    "fundamental_forms",
    "z_reduce",
    "z_reduced_coefficients",
    "random_rotation",
    "transform_jet",
    "get_tol",
]
