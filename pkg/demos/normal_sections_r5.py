"""Axial curvatures of a 3-manifold in R^5 read off its normal sections.

Cutting the manifold with the hyperplane spanned by (cos g, sin g, 0) and z gives a
singular surface in R^4. Its axial value along the lifted direction v1, swept over g,
has the same critical values as the manifold itself.
"""

# %% Setup
from importlib import resources

import numpy as np

from axialcurv.frames import adapted_frame
from axialcurv.curvatures import axial_report
from axialcurv.jetcore import load_germ, monge_from_germ
from axialcurv.verify import check_section_relation, section_value

f = load_germ(resources.files("axialcurv") / "fixtures" / "r5_z2_worked.json")
m, _ = monge_from_germ(f)
frame = adapted_frame(m)
report = axial_report(m, frame)
v1 = frame.vectors[0]
print("v1 =", v1, " axial values along v1:", report.values(1))

# %% Sweep the section angle
# The angle pi/2 is skipped: there the section degenerates.
gammas = np.linspace(0, np.pi, 13)[:-1]
for g in gammas:
    if abs(g - np.pi / 2) < 1e-9:
        continue
    print(f"g = {g:5.3f}   section value {section_value(m, v1, g): .9f}")

# %% Critical values of the sweep against the manifold
res = check_section_relation(m)
for i, d in res.witnesses["directions"].items():
    print(f"direction {i}: {d['status']}  sections {d.get('sections')}  manifold {d.get('manifold')}")
