# %% [markdown]
# # Complementary bases in the body of quantum states
#
# An orthonormal basis is a regular simplex inscribed in the set of density
# matrices. Two unbiased bases give simplices in totally orthogonal planes, and
# a complete set of N + 1 MUBs fills all N^2 - 1 directions.

# %%
import numpy as np

from chm import basis_simplex, fourier, mub_prime, span_rank, sphere_radii, total_orthogonality

for n in (2, 3, 4, 6):
    r_out, r_in, ratio = sphere_radii(n)
    print(f"N={n}: outsphere {r_out:.4f}  insphere {r_in:.4f}  ratio {ratio:.12f}")

# %%
s_id = basis_simplex(np.eye(5))
s_f = basis_simplex(fourier(5))
print("Gram matrix of the computational simplex:")
print(np.round(s_id.gram(), 4))
print("totally orthogonal to the Fourier simplex:", total_orthogonality(s_id, s_f))

# %%
for p in (2, 3, 5, 7):
    mubs = mub_prime(p)
    rank = span_rank([basis_simplex(b) for b in mubs.bases])
    print(f"p={p}: {len(mubs.bases)} bases, worst deviation {mubs.worst_deviation:.1e}, span rank {rank} of {p * p - 1}")
