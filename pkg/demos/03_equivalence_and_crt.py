# %% [markdown]
# # When is F_a x F_b equivalent to F_ab?
#
# Exactly when gcd(a, b) = 1. For coprime factors the Chinese remainder
# theorem gives the permutations explicitly; otherwise an invariant tells the
# matrices apart.

# %%
from math import gcd

from chm import (crt_certificate, equivalent_bruteforce, fourier, invariant_distinguish, tensor,
                 verify_certificate)

cert = crt_certificate(3, 4)
print("row permutation:", cert.p_left.tolist())
print("column permutation:", cert.p_right.tolist())
print("P1 F_12 P2 == F_3 x F_4:", verify_certificate(fourier(12), tensor(fourier(3), fourier(4)), cert, 1e-12))

# %% [markdown]
# For small N the exhaustive oracle decides equivalence outright.

# %%
for a, b in [(2, 2), (2, 3), (1, 5)]:
    v = equivalent_bruteforce(fourier(a * b), tensor(fourier(a), fourier(b)))
    print(f"F_{a * b} vs F_{a} x F_{b}: gcd={gcd(a, b)} -> {v.status}")

# %% [markdown]
# Beyond N = 6 only the fingerprint screen is available: it can prove two
# matrices distinct, never equivalent.

# %%
print("F_8 vs F_2 x F_4:", invariant_distinguish(fourier(8), tensor(fourier(2), fourier(4))).status)
print("F_12 vs F_3 x F_4:", invariant_distinguish(fourier(12), tensor(fourier(3), fourier(4))).status)
