# %% [markdown]
# # The one-parameter family in dimension 4
#
# Every 4x4 complex Hadamard matrix is equivalent to H(z) for some unimodular
# z. The family passes through F_4 (z = i) and the real matrix F_2 x F_2
# (z = 1), which are not equivalent to each other.

# %%
import numpy as np

from chm import (DitaSpec, dephased_bound, dita, equivalent_bruteforce, fourier, hadamard4,
                 is_hadamard, tensor)

for label, z in (("i", 1j), ("1", 1.0)):
    print(f"H({label}):")
    print(np.round(2 * hadamard4(z), 3))

print("H(i) ~ F_4:", equivalent_bruteforce(hadamard4(1j), fourier(4)).status)
print("H(1) ~ F_2 x F_2:", equivalent_bruteforce(hadamard4(1), tensor(fourier(2), fourier(2))).status)
print("F_4 ~ F_2 x F_2:", equivalent_bruteforce(fourier(4), tensor(fourier(2), fourier(2))).status)

# %% [markdown]
# The family is one-dimensional, which is exactly the first-order bound at N = 4.

# %%
print("dephased bound at N=4:", dephased_bound(4))
worst = max(is_hadamard(hadamard4(np.exp(2j * np.pi * k / 64))).max_unitarity_residual for k in range(64))
print("worst unitarity residual on a 64-point circle:", worst)

# %% [markdown]
# The warped tensor product of F_2 with two copies of F_2 and one free phase
# reproduces the same family.

# %%
theta = 0.8
m = dita(DitaSpec(fourier(2), [fourier(2)] * 2, [[0.0, theta]]))
print(np.round(2 * m, 3))
