# %% [markdown]
# # A ChaoS fractal, two ways
#
# Sort the Farey directions by length, keep the shortest ones until the Katz
# number reaches 1, and draw each as a periodic line on the torus. The same
# mask comes out of superposing the scaled copies m*v of the short vectors.

# %%
import numpy as np

from kaleidoscope import FractalSpec, LpNorm, build, sampling_fraction
from kaleidoscope.builder import build_from_scaled_images, select_vectors

N = 97
spec = FractalSpec(N, N, norm=LpNorm(2), katz=1.0)
vecs, R, K = select_vectors(spec)
print(f"R = {R} lines, Katz = {K:.3f}")
print("first vectors:", vecs[:8].tolist())

# %%
lines = build(spec)
scaled = build_from_scaled_images(FractalSpec(N, N, norm=LpNorm(2), katz=1.0, mode="scaled"))
print("same support:", np.array_equal(lines.support, scaled.support))
print(f"sampled {sampling_fraction(lines):.1%} of k-space, origin hit {lines.counts[0, 0]} times")

# %%
from _show import show

show("02_chaos", [lines.support, np.log1p(lines.counts)], ["support", "log hit count"])
