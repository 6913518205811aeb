# %% [markdown]
# # Changing the norm changes the fractal
#
# Any centrally symmetric score works for the sort: an Lp quasi-norm, an Lp
# norm applied after a linear map, or the gauge of a star-shaped polygon.

# %%
import math

import numpy as np

from kaleidoscope import FractalSpec, LpNorm, PolygonNorm, StarPolygon, TransformedLpNorm, build, rotation

N = 257
norms = {
    "L1": LpNorm(1),
    "L0.5 rotated 15 deg": TransformedLpNorm(0.5, rotation(15)),
    "L2 squashed": TransformedLpNorm(2, [[0.5, 0], [0, 1]]),
    "4-point star": PolygonNorm(StarPolygon.star(4, 1.0, 0.4, phase=math.pi / 8)),
}
masks = {k: build(FractalSpec(N, N, norm=v)) for k, v in norms.items()}
for k, m in masks.items():
    print(f"{k:22s} R = {m.R:3d}  fraction = {m.support.mean():.3f}")

# %%
from _show import show

show("03_norms", [m.support for m in masks.values()], list(masks))
