# %% [markdown]
# Degree histograms and power-law fits for a growing network.

# %%
from netmorph import GenSpec, ccdf, degree_histogram, fit_power_law, generate

g = generate(GenSpec("BA", 50_000, m=3, seed=0))
hist = degree_histogram(g)

# %%
for k, frac in ccdf(hist)[:10]:
    print(f"P(K >= {k:3d}) = {frac:.4f}")

# %% [markdown]
# Two estimators over the same KS-chosen cutoff: discrete MLE and a
# least-squares line through the log CCDF.

# %%
for method in ("mle", "ccdf-regression"):
    fit = fit_power_law(hist, method=method)
    print(method, fit.to_dict())

# %%
er = degree_histogram(generate(GenSpec("ER", 50_000, p=6 / 50_000, seed=0)))
print("ER max degree:", max(er.degrees), " BA max degree:", max(hist.degrees))
