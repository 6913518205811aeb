# %% [markdown]
# # Fractals from a hand-made pattern
#
# Skip the lines and pick the central pattern directly. Its copies under the
# multipliers L that divide N+1 or N-1 are unity-smear kaleidoscope
# transforms, so they tile the grid with shrunken copies.

# %%
import numpy as np

from kaleidoscope import FractalSpec, PatternRecipe, build, unity_smear_multipliers
from kaleidoscope.patterns import block, bowtie, spiral

print([u.multiplier for u in unity_smear_multipliers(728, 1)])

# %% [markdown]
# The middle ninth of a 728 grid with the sigma = +1 multipliers (powers of 3,
# since 729 = 3^6) approximates a Sierpinski carpet.

# %%
carpet = build(FractalSpec(728, 728, norm=None, mode="explicit", unity_only=True, smear=1,
                           pattern=PatternRecipe("block", {"half_width": 121})))
print("multipliers:", carpet.multipliers)

# %%
bow = build(FractalSpec(1069, 1069, norm=None, mode="explicit", unity_only=True,
                        pattern=PatternRecipe("bowtie", {"half_width": 60})))
spi = build(FractalSpec(1069, 1069, norm=None, mode="explicit", unity_only=True,
                        pattern=PatternRecipe("spiral", {"radius": 90, "turns": 3})))
print(len(spiral(90, 3)), "spiral points,", spi.support.sum(), "sampled")

# %%
from _show import show

show("05_explicit", [carpet.support, bow.support, spi.support], ["carpet", "bowtie", "spiral"])
