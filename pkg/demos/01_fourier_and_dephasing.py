# %% [markdown]
# # Fourier matrices, tensor products and dephasing
#
# A complex Hadamard matrix is a unitary whose entries all have modulus
# 1/sqrt(N). Its columns form a basis unbiased to the computational one.

# %%
import numpy as np

from chm import dephase, fourier, is_hadamard, tensor, unbiasedness

np.set_printoptions(precision=3, suppress=True)

f4 = fourier(4)
print(np.round(2 * f4, 3))
print(is_hadamard(f4))

# %% [markdown]
# Tensor products of Hadamard matrices are Hadamard.

# %%
h = tensor(fourier(2), fourier(3))
r = is_hadamard(h)
print("F2 x F3 Hadamard:", r.is_hadamard, "unitarity residual", r.max_unitarity_residual)
print("unbiased to identity:", unbiasedness(np.eye(6), h))

# %% [markdown]
# Scramble row and column phases, then remove them again.

# %%
rng = np.random.default_rng(0)
left = np.exp(1j * rng.uniform(0, 2 * np.pi, 4))
right = np.exp(1j * rng.uniform(0, 2 * np.pi, 4))
scrambled = left[:, None] * f4 * right[None, :]
d, d_left, d_right = dephase(scrambled)
print("recovered F_4:", np.allclose(d, f4))
