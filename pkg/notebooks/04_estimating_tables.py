# %% [markdown]
# # Estimating the proportion of injective classes
#
# Drawing LFTs uniformly over-represents large classes.  Weighting each
# injective draw by ``1/p`` of its class removes the bias, and the weight
# only depends on the diagnostic rank.

# %%
from lftstat.estimator import estimate_for_taus, exhaustive_census, required_sample_size

exact = exhaustive_census(1, 5, 1, [10]).injective_classes[10]
rep = estimate_for_taus(5000, 1, 5, 1, [10], seed=1)[0]
print(exact, rep.estimate_decimal)

# %% [markdown]
# All delays are read from one sample, so the row is monotone in tau.

# %%
reps = estimate_for_taus(5000, 2, 5, 2, range(6), seed=7, percentage=True)
for r in reps:
    print(r.tau, r.percentage_decimal)

# %%
# 99% confidence, 1% margin; the published runs used 20000 samples
print(required_sample_size(0.99, 0.01), required_sample_size(0.99, 0.01, z_decimals=None))

# %% [markdown]
# ## A small table
#
# ``lft table percentage -l 2 -m 5 -n 1..3 --tau 0..3`` prints the same grid
# from the shell.

# %%
from lftstat.tables import TableSpec, build_table, render

spec = TableSpec("percentage", m=5, l_values=[2], n_values=[1, 2], tau_values=[0, 1, 2], samples=2000, seed=0)
print(render(build_table(spec)))
