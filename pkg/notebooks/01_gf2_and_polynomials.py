# %% [markdown]
# # Matrices over GF(2) and polynomials in z
#
# Rows are packed into Python ints, so a product or a rank is a handful of
# XORs.  Polynomials use the same trick: bit i is the coefficient of z^i.

# %%
import numpy as np

from lftstat.gf2 import BitMatrix, rank, rref
from lftstat.poly import LocalFrac, Poly2, PolyMatrix, det, localize_invariant_factors, smith_normal_form

m = BitMatrix.from_strings(["0110", "0000", "1011", "1101"])
print("rank", rank(m))
print("\n".join(rref(m).to_strings()))

# %%
# 1 + 1 = 0 in the field
a = BitMatrix.from_lists([[1, 1], [0, 1]])
print((a @ BitMatrix.column([1, 1])).to_lists())

# %% [markdown]
# Polynomials print lowest degree first, so ``"011"`` is z + z^2.

# %%
z = Poly2.z()
p = Poly2.from_string("011")
print(p == z + z**2, p.degree, str(p * (1 + z)))

# %%
# 1/(1+z) is a legitimate element of the local ring; 1/z is not
x = LocalFrac(1, 1 + z)
print(x * (1 + z) == LocalFrac(1))

# %% [markdown]
# ## Smith normal form
#
# ``U M V`` is diagonal, each factor divides the next, and both multipliers
# have determinant 1.  Over the local ring only the power of z in each factor
# survives.

# %%
M = PolyMatrix([[1, z.bits], [z.bits, (z**2 + z**3).bits]])
s = smith_normal_form(M)
print([str(f) for f in s.factors])
print(s.u @ M @ s.v == s.diagonal(2, 2), det(s.u), det(s.v))
print(localize_invariant_factors(s.factors).multiplicities)

# %%
rng = np.random.default_rng(0)
R = PolyMatrix(rng.integers(0, 32, size=(4, 3)).tolist())
print([str(f) for f in smith_normal_form(R).factors])
