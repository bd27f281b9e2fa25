# %% [markdown]
# # Linear finite transducers
#
# An LFT updates its state by ``s' = A s + B x`` and emits ``y = C s + D x``.
# The unit delay outputs its previous input.

# %%
from lftstat import transducer as tr
from lftstat.gf2 import BitMatrix

delay = tr.unit_delay()
word = [BitMatrix.column([b]) for b in (1, 0, 1)]
out = tr.run(delay, BitMatrix.zeros(1, 1), word)
print([y[0, 0] for y in out])

# %% [markdown]
# ## Injectivity with delay
#
# The transfer matrix H(z) decides everything.  The delay is injective with
# delay 1 and not with delay 0, because its single invariant factor is z.

# %%
fh, f = tr.transfer_numerator(delay)
print(fh.to_strings(), str(f))
print(tr.h_invariant_profile(delay, cap=3))
print([tr.is_injective_with_delay(delay, tau) for tau in range(3)])

# %%
# the brute-force oracle agrees on a random example
import numpy as np
from lftstat.estimator import random_lft

rng = np.random.default_rng(3)
t = random_lft(2, 3, 3, rng)
print(t.to_json())
print(tr.min_injectivity_delay(t))
print([tr.brute_force_injective(t, tau) for tau in range(4)])
print([tr.is_injective_with_delay(t, tau) for tau in range(4)])

# %% [markdown]
# A left inverse H' with ``H' H = z^tau I`` exists exactly when the LFT is
# injective with delay tau.

# %%
tau = tr.min_injectivity_delay(t)
if tau is not None:
    from lftstat.poly import FracMatrix, LocalFrac

    hp = tr.left_inverse_transfer(t, tau)
    print(hp @ tr.transfer_matrix(t) == FracMatrix.scalar(2, LocalFrac(1 << tau)))

# %% [markdown]
# ## Equivalence classes
#
# Two LFTs are equivalent when they realise the same family of word
# functions.  A class is sized by the rank of the diagnostic matrix
# ``[C; CA; ...; CA^(n-1)]``.

# %%
print(tr.diagnostic_matrix(t).to_strings(), tr.diagnostic_rank(t), tr.class_size(t))
canon = [u for u in tr.all_lfts(1, 1, 2) if tr.is_canonical(u)]
print(len(canon), "canonical LFTs with l=m=1, n=2")
