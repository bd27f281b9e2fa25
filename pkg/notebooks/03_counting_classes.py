# %% [markdown]
# # Counting equivalence classes
#
# Every non-trivial size-n LFT is equivalent to a unique minimal one of some
# size i <= n.  Peeling off the trivial and non-minimal ones leaves the
# canonical count ``CT = (LT - TT - TNM) / EC``.

# %%
from lftstat.census import CountParams, closed_form_counts, ct_canonical_count, tnm_count, total_classes

for n in range(1, 5):
    p = CountParams(2, 5, n)
    c = closed_form_counts(p)
    print(n, ct_canonical_count(p), c.lt == c.tt + tnm_count(2, 5, n) + c.ec * ct_canonical_count(p))

# %%
# the formulas hold over any prime field
print(ct_canonical_count(CountParams(1, 1, 2, q=3)))

# %% [markdown]
# ## Brute force at small sizes
#
# The census enumerates all LFTs and groups them by their observable
# behaviour, then counts how many classes are injective.

# %%
from lftstat.estimator import exhaustive_census

c = exhaustive_census(1, 1, 2, range(4))
print(c.to_dict())
print(total_classes(CountParams(1, 1, 2)), total_classes(CountParams(1, 1, 2), include_trivial=True))
