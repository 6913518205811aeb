# %% [markdown]
# # The kaleidoscope transform
#
# A kaleidoscope transform with downsample factor nu and smear sigma splits a
# signal into nu decimated copies and lays them out sigma apart. With
# sigma = 1 this is plain "downsample and concatenate".

# %%
import numpy as np

from kaleidoscope import KaleidoscopeParams, downsample_concat_oracle, kappa_table, kt_1d, kt_2d

x = np.arange(12)
p = KaleidoscopeParams(12, 3, 1)
print(kt_1d(x, p))
print(downsample_concat_oracle(x, 3))

# %% [markdown]
# When N = L*nu - sigma the mapping is just multiplication by L mod N.

# %%
N, nu, sigma = 97, 4, 3
L = (N + sigma) // nu
print(L, np.array_equal(kappa_table(KaleidoscopeParams(N, nu, sigma)), (L * np.arange(N)) % N))

# %% [markdown]
# In 2D the transform is separable. A smooth test image turns into a grid of
# small copies; a smear of -1 flips their order.

# %%
from _show import show

yy, xx = np.mgrid[:120, :120]
img = np.exp(-((xx - 40) ** 2 + (yy - 70) ** 2) / 200.0) + (np.abs(xx - yy) < 3)
up = KaleidoscopeParams(120, 4, 1)
down = KaleidoscopeParams(120, 4, -1)
show("01_kt", [img, kt_2d(img, up, up), kt_2d(img, down, down)], ["image", "nu=4, sigma=1", "nu=4, sigma=-1"])
