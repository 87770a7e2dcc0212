"""Regenerate the bundled fixture corpus.

Each fixture is NAME.json (the germ) plus NAME.expected.json (hand-derived
values that the tests assert against). Expected values here are written by
hand, never computed by the library.
"""

import json
import math
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "axialcurv" / "fixtures"


def comp(*terms):
    """terms: (coeff, exponent tuple); coeff may be a 'p/q' string."""
    return [{"exp": list(e), "coeff": c} for c, e in terms]


X, Y, Z = (1, 0, 0), (0, 1, 0), (0, 0, 1)
XX, XY, YY = (2, 0, 0), (1, 1, 0), (0, 2, 0)
XZ, YZ, ZZ = (1, 0, 1), (0, 1, 1), (0, 0, 2)
x, y = (1, 0), (0, 1)
xx, xy, yy = (2, 0), (1, 1), (0, 2)

FIXTURES = {}


def add(name, n, k, components, description, expected):
    FIXTURES[name] = (
        {"name": name, "description": description, "n": n, "k": k, "components": components},
        expected,
    )


# surfaces in R^3 (n=2, k=1); the normal plane holds the 2-jet of the last two components
add("surface_parabola_k1", 2, 1,
    [comp((1, x)), comp((1, xx), (1, yy)), comp((1, xy), ("1/2", xx))],
    "surface whose curvature locus is a non-degenerate parabola",
    {"orbit": "NondegParabola", "shape": "Parabola"})
add("surface_halfline_k1", 2, 1,
    [comp((1, x)), comp((1, xx), (1, yy), (1, xy)), comp((2, xx))],
    "surface whose curvature locus is a half-line",
    {"orbit": "HalfLine", "shape": "HalfLine"})
add("surface_line_k1", 2, 1,
    [comp((1, x)), comp((1, xx), (1, xy)), comp((2, xx))],
    "surface whose curvature locus is a line",
    {"orbit": "Line", "shape": "Line"})
add("surface_point_k1", 2, 1,
    [comp((1, x)), comp(("1/2", xx)), comp((1, xx))],
    "surface whose curvature locus is a single point (1,2)",
    {"orbit": "Point", "shape": "Point",
     "axial": {"1": [0.0], "2": [math.sqrt(5.0)]}})

# frontal surface in R^4 with a cuspidal edge along the x axis
add("cuspidal_edge_r4", 2, 2,
    [comp((1, x)), comp(("3/2", xx), (1, yy)), comp((2, xx)), comp((1, (0, 3)))],
    "singular surface in R^4 whose x axis is a curve with curvature 5",
    {"orbit": "HalfLine", "axial": {"1": [3.0], "2": [4.0]}, "curve_curvature": 5.0,
     "umbilic": 4.0})
add("surface_offset_parabola_r4", 2, 2,
    [comp((1, x)), comp(("1/2", xx), (1, yy)), comp((1, xy)), comp((1, xx))],
    "singular surface in R^4 whose locus plane sits at distance 2 from the origin",
    {"orbit": "NondegParabola", "umbilic": 2.0})

# 3-manifolds in R^4
add("r4_planar_region", 3, 1,
    [comp((1, X)), comp((1, Y)),
     comp(("3/2", XX), (1, XY), ("1/2", YY), ("1/2", ZZ)),
     comp((1, XX), ("5/2", YY), ("1/2", XZ))],
    "3-manifold in R^4 whose curvature locus is a planar region",
    {"orbit": "XZ_Z2", "shape": "PlanarRegion"})
add("r4_plane", 3, 1,
    [comp((1, X)), comp((1, Y)),
     comp(("3/2", XX), ("1/2", XY), ("1/2", YY), ("1/2", YZ)),
     comp((1, XX), ("5/2", YY), ("1/2", XZ))],
    "3-manifold in R^4 whose curvature locus is the whole normal plane",
    {"orbit": "XZ_YZ", "shape": "Plane"})
add("r4_xzyz_worked", 3, 1,
    [comp((1, X)), comp((1, Y)),
     comp(("3/2", XX), (1, XY), ("1/2", YY), ("1/2", YZ)),
     comp((1, XX), ("5/2", YY), ("1/2", XZ))],
    "3-manifold in R^4 whose axial value along (1,0) differs from the slice principal curvatures",
    {"orbit": "XZ_YZ", "shape": "Plane",
     "oracle": {"direction": [1.0, 0.0], "values": [3.0]},
     "slice_principal": {"direction": [1.0, 0.0], "values": [2 - math.sqrt(2), 2 + math.sqrt(2)]}})
add("r4_half_strip", 3, 1,
    [comp((1, X)), comp((1, Y)),
     comp(("3/2", XX), (1, XY), ("1/2", YY), ("1/2", ZZ)),
     comp((1, XX), ("5/2", YY))],
    "3-manifold in R^4 whose curvature locus is a half-strip",
    {"orbit": "Z2_0", "shape": "HalfStrip"})
add("r4_strip", 3, 1,
    [comp((1, X)), comp((1, Y)),
     comp(("3/2", XX), ("1/2", XY), ("1/2", YY)),
     comp((1, XX), ("5/2", YY), ("1/2", XZ))],
    "3-manifold in R^4 whose curvature locus is a strip",
    {"orbit": "XZ_0", "shape": "Strip", "frame_v1": [0.0, 1.0]})
add("r4_ellipse", 3, 1,
    [comp((1, X)), comp((1, Y)),
     comp(("3/2", XX), (1, XY), ("1/2", YY)),
     comp((1, XX), ("5/2", YY))],
    "3-manifold in R^4 whose curvature locus is an ellipse",
    {"orbit": "ZERO", "shape": "Ellipse"})
add("r4_z2_worked", 3, 1,
    [comp((1, X)), comp((1, Y)),
     comp(("1/2", XX), ("7/2", YY)),
     comp(("3/2", XX), (1, XY), ("1/2", YY), ("1/2", ZZ))],
    "3-manifold in R^4 with z^2 in the last component; slice z=0 has Gaussian curvature 9",
    {"orbit": "Z2_0", "frame_v1": [0.0, 1.0], "frame_v2": [-1.0, 0.0],
     "axial": {"1": [2 + math.sqrt(2), 2 - math.sqrt(2)], "2": [-1.0, -7.0]},
     "gauss": 9.0})
add("frontal_cuspidal_crosscap", 3, 1,
    [comp((1, X)), comp((1, Y)),
     comp((1, XX), ("3/2", YY), ("1/2", ZZ)),
     comp(("1/2", XX), ("-1/2", YY), ("1/2", (0, 1, 3)))],
    "frontal 3-manifold in R^4 with a curve of cuspidal cross-caps along the x axis",
    {"orbit": "Z2_0", "curve_curvature": math.sqrt(5.0)})
add("frontal_swallowtail", 3, 1,
    [comp((1, X)), comp((1, Y)),
     comp(("1/2", XX), (1, XY), ("3/2", YY), (1, XZ), (2, (0, 0, 3))),
     comp(("1/2", XX), ("1/2", XY), ("1/2", (1, 0, 2)), ("3/2", (0, 0, 4)))],
    "frontal 3-manifold in R^4 with a curve of swallowtails along the y axis",
    {"orbit": "XZ_0", "curve_curvature": 3.0})

# 3-manifolds in R^5
add("r5_xzyzz2", 3, 2,
    [comp(("1/2", X)), comp(("1/2", Y)),
     comp(("1/2", XX), ("1/2", ZZ)),
     comp(("1/2", XY), ("1/2", XZ)),
     comp(("3/2", XX), ("1/2", YY), ("1/2", YZ))],
    "3-manifold in R^5 of the most generic type",
    {"orbit": "XZ_YZ_Z2", "shape": "ParabolaSweep"})
add("r5_xzyz0", 3, 2,
    [comp(("1/2", X)), comp(("1/2", Y)),
     comp(("1/2", XZ)), comp(("1/2", YZ)),
     comp(("1/2", XX), ("3/2", XY), ("1/2", YY))],
    "3-manifold in R^5 whose locus is unbounded in a plane",
    {"orbit": "XZ_YZ_0", "shape": "LineSweep"})
add("r5_half_strip", 3, 2,
    [comp(("1/2", X)), comp(("1/2", Y)),
     comp(("3/2", XX), (1, XY), ("1/2", YY), ("1/2", ZZ)),
     comp((1, XX), ("5/2", YY)),
     comp(("1/2", XX), (1, YY))],
    "3-manifold in R^5 whose locus is a planar half-strip",
    {"orbit": "Z2_0_0", "shape": "HalfStrip", "planar": True})
add("r5_z2_worked", 3, 2,
    [comp((1, X)), comp((1, Y)), comp((1, XX)), comp((1, YY)),
     comp(("3/2", XX), (1, XY), ("1/2", YY), ("1/2", ZZ))],
    "3-manifold in R^5 whose normal sections are singular surfaces in R^4",
    {"orbit": "Z2_0_0", "frame_v1": [0.0, 0.0, 1.0],
     "axial": {"1": [2 + math.sqrt(2), 2 - math.sqrt(2)]}})
add("r4_zero", 3, 1,
    [comp((1, X)), comp((1, Y)), comp((1, (3, 0, 0))), comp((1, (0, 0, 3)))],
    "3-manifold in R^4 with vanishing second order part",
    {"orbit": "ZERO", "shape": "Point"})


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, (germ, expected) in FIXTURES.items():
        (OUT / f"{name}.json").write_text(json.dumps(germ, indent=2) + "\n")
        (OUT / f"{name}.expected.json").write_text(json.dumps(expected, indent=2, sort_keys=True) + "\n")
    print(f"wrote {len(FIXTURES)} fixtures to {OUT}")


if __name__ == "__main__":
    main()
