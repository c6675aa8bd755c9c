# %% [markdown]
# # How many Hadamard matrices sit next to the Fourier matrix?
#
# To first order, the smooth families through F_N span a space whose dimension
# is the gcd sum minus the 2N - 1 trivial phases. Going to higher orders, the
# expansion can get stuck: the order at which this first happens depends on
# the prime factorization of N.

# %%
from chm import continue_orders, conjectured_dimension, defect_numeric

print(" N  D1  bound  kernel")
for n in (4, 5, 6, 8, 9, 10, 12, 15, 30):
    r = defect_numeric(n)
    print(f"{n:2d} {r.d1_formula:3d} {r.dephased_bound:6d} {r.kernel_dim_numeric:7d}")

# %% [markdown]
# Order-by-order continuation from random tangent directions.

# %%
cases = {30: 4, 12: 6, 20: 6, 15: 7, 14: 9, 6: 8, 10: 12}
for n, max_order in cases.items():
    r = continue_orders(n, max_order, samples=5, seed=0)
    print(f"N={n:2d}: breakdown at order {r.breakdown_order}")

# %% [markdown]
# For N = p1 * p2**2 a non-affine family of this dimension is expected:

# %%
for p1, p2 in ((3, 2), (5, 2), (2, 3)):
    print(p1 * p2**2, conjectured_dimension(p1, p2))
