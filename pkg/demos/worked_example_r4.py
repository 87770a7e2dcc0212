"""A singular 3-manifold in R^4, from germ to axial curvatures.

Run with ``python demos/worked_example_r4.py``.
"""

# %% Load the germ
# The map is (x, y, x^2/2 + 7y^2/2, 3x^2/2 + xy + y^2/2 + z^2/2). Its differential
# drops rank along z, so the point is a corank-1 singularity.
from importlib import resources

import numpy as np

from axialcurv.curvatures import normal_curvature_form, principal_curvatures, regular_slice
from axialcurv.jetcore import load_germ, monge_from_germ
from axialcurv.report import analyze, format_table

path = resources.files("axialcurv") / "fixtures" / "r4_z2_worked.json"
f = load_germ(path)
report = analyze(f)
print(format_table(report))

# %% The normal curvature function along v1
# Only the z^2 term feeds the null direction, so v1 points along the last normal axis.
# Along v1 the curvature function is a quadratic form in (cos t, sin t) plus gamma^2.
v1 = np.array(report.frame["vectors"][0])
m, _ = monge_from_germ(f)
F = normal_curvature_form(m, v1)
print("\nK_v1 coefficients:", {k: round(float(v), 12) for k, v in F.coeffs.items()})

# %% Compare with the slice z = 0
# On this orbit the primary values are the principal curvatures of the regular surface
# obtained by freezing z, and the secondary values follow the same rule along v2.
sl = regular_slice(m)
for i, v in enumerate(report.frame["vectors"], start=1):
    print(f"v{i} = {v}: slice principal curvatures {principal_curvatures(sl, v)}, "
          f"axial values {report.axial[i - 1]['values']}")

# %% Gaussian curvature of the slice
gauss = [c for c in report.checks if c["name"] == "gauss"][0]
print(f"\nGaussian curvature {gauss['lhs']:.12g} vs product of axial values {gauss['rhs']:.12g}: {gauss['status']}")
