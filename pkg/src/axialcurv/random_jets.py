"""Random Monge 2-jets drawn inside a prescribed orbit, away from its boundary.

Used by the test suite and the demos. Every generator rejects draws whose
witness quantities (norms, singular values) fall below ``margin``, so the
orbit tag is stable under the default tolerance.
"""

from __future__ import annotations

import numpy as np

from .classify import N2_TAGS, N3K1_TAGS, N3K2_TAGS
from .jetcore import MongeJet, random_rotation
from .linalg import singular_values

MARGIN = 0.1


def _sym(rng, n):
    s = rng.uniform(-2, 2, (n, n))
    return s + s.T


def _n2(tag: str, k: int, rng) -> MongeJet:
    N = k + 1
    a20, a11, a02 = (rng.uniform(-2, 2, N) for _ in range(3))
    if tag == "HalfLine":
        a11 = rng.uniform(-2, 2) * a02
    elif tag == "Line":
        a02 = np.zeros(N)
    elif tag == "Point":
        a02 = np.zeros(N)
        a11 = np.zeros(N)
    return MongeJet.from_symbols(a20=a20, a11=a11, a02=a02)


def _n3_columns(tag: str, N: int, rng):
    """Columns (a101, a011, a002) realising the rank pattern of ``tag``."""
    g = lambda: rng.uniform(-2, 2, N)
    c = lambda: rng.uniform(-2, 2)
    z = np.zeros(N)
    if tag in ("XZ_Z2", "XZ_YZ_Z2"):
        return g(), g(), g()
    if tag == "XZ_YZ":
        return g(), g(), z
    if tag == "Z2_YZ_0":
        a011, a002 = g(), g()
        return c() * a011 + c() * a002, a011, a002
    if tag == "XZ_YZ_0":
        return g(), g(), z
    if tag in ("Z2_0", "Z2_0_0"):
        a002 = g()
        return c() * a002, c() * a002, a002
    if tag in ("XZ_0", "XZ_0_0"):
        a101 = g()
        return a101, c() * a101, z
    if tag == "ZERO":
        return z, z, z
    raise ValueError(f"unknown tag {tag}")


def _n3(tag: str, k: int, rng) -> MongeJet:
    N = k + 1
    a = np.zeros((N, 3, 3))
    for l in range(N):
        a[l, :2, :2] = _sym(rng, 2) / 2
    a101, a011, a002 = _n3_columns(tag, N, rng)
    a[:, 0, 2] = a[:, 2, 0] = a101
    a[:, 1, 2] = a[:, 2, 1] = a011
    a[:, 2, 2] = a002
    return MongeJet(3, k, a)


def _well_separated(m: MongeJet, tag: str, margin: float) -> bool:
    if m.n == 2:
        a02, a11 = m.a[:, 1, 1], m.a[:, 0, 1]
        checks = []
        if tag in ("NondegParabola", "HalfLine"):
            checks.append(np.linalg.norm(a02))
        if tag == "NondegParabola":
            checks.append(singular_values(np.vstack([a02, a11]))[-1])
        if tag == "Line":
            checks.append(np.linalg.norm(a11))
        return all(q > margin for q in checks)
    A = np.column_stack([m.a[:, 0, 2], m.a[:, 1, 2], m.a[:, 2, 2]])
    s = singular_values(A)
    rank = {"XZ_Z2": 2, "XZ_YZ": 2, "Z2_0": 1, "XZ_0": 1, "ZERO": 0,
            "XZ_YZ_Z2": 3, "Z2_YZ_0": 2, "XZ_YZ_0": 2, "Z2_0_0": 1, "XZ_0_0": 1}[tag]
    if rank and s[rank - 1] <= margin:
        return False
    if np.linalg.norm(m.a[:, 2, 2]) > 0 and np.linalg.norm(m.a[:, 2, 2]) <= margin:
        return False
    return True


def random_jet(n: int, k: int, tag: str, rng: np.random.Generator, margin: float = MARGIN) -> MongeJet:
    """Random Monge jet in orbit ``tag`` with witnesses at least ``margin`` from zero."""
    make = _n2 if n == 2 else _n3
    for _ in range(1000):
        m = make(tag, k, rng)
        if _well_separated(m, tag, margin):
            return m
    raise RuntimeError(f"could not draw a well separated {tag} jet")


def tags_for(n: int, k: int) -> tuple[str, ...]:
    if n == 2:
        return N2_TAGS
    return N3K1_TAGS if k == 1 else N3K2_TAGS


def random_source_change(n: int, rng: np.random.Generator, low: float = 0.5, high: float = 2.0) -> np.ndarray:
    """Well conditioned invertible matrix with singular values in [low, high]."""
    U, V = random_rotation(n, rng), random_rotation(n, rng)
    return U @ np.diag(rng.uniform(low, high, n)) @ V
