"""Sample the curvature locus of every bundled germ and summarise its shape.

Each locus is written as CSV next to this script (``demos/out``) so it can be plotted
with any external tool. The summary checks, per frame direction, whether the sampled
projection stays bounded as the cylinder height range grows.
"""

# %% Setup
from pathlib import Path

import numpy as np

from axialcurv.cli import corpus_paths
from axialcurv.classify import classify, locus_shape
from axialcurv.frames import adapted_frame
from axialcurv.jetcore import load_germ, monge_from_germ
from axialcurv.locus import GridSpec, sample_locus, write_csv

out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)


def growth(m, v, small=5.0, large=50.0):
    """Ratio of projection ranges for two gamma ranges; about 1 when bounded."""
    spans = []
    for g in (small, large):
        pts = sample_locus(m, GridSpec(72, -g, g, 101)).points @ v
        spans.append(np.ptp(pts))
    return spans[1] / max(spans[0], 1e-12)


# %% Walk the corpus
for path in corpus_paths():
    m, _ = monge_from_germ(load_germ(path))
    orbit = classify(m)
    shape = locus_shape(m, orbit)
    write_csv(sample_locus(m, GridSpec(120, -3, 3, 61)), out / f"{path.stem}.csv")
    row = f"{path.stem:<28} {orbit.tag:<15} {str(shape):<40}"
    if m.n == 3:
        frame = adapted_frame(m, orbit)
        row += " growth " + " ".join(f"{growth(m, v):7.1f}" for v in frame.vectors)
    print(row)

print(f"\nCSV files written to {out}")
