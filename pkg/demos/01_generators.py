# %% [markdown]
# Random graph models side by side: degree spread, clustering and reach.

# %%
import numpy as np

from netmorph import GenSpec, clustering_coefficient, generate, hop_plot

specs = [
    GenSpec("ER", 2000, p=0.004, seed=1),
    GenSpec("WS", 2000, k=8, p=0.05, seed=1),
    GenSpec("NWS", 2000, k=8, p=0.05, seed=1),
    GenSpec("BA", 2000, m=4, seed=1),
    GenSpec("HK", 2000, m=4, p_t=0.8, seed=1),
]

# %%
print(f"{'model':5} {'edges':>6} {'<k>':>6} {'k_max':>6} {'C':>7} {'d(0.9)':>7}")
for spec in specs:
    g = generate(spec)
    deg = g.degrees()
    d = hop_plot(g).effective_diameter
    print(f"{spec.model:5} {g.edge_count:6d} {deg.mean():6.2f} {deg.max():6d} "
          f"{clustering_coefficient(g):7.4f} {d:7.3f}")

# %% [markdown]
# Rewiring sweep: clustering collapses much later than path length does.

# %%
base = generate(GenSpec("WS", 1000, k=10, p=0.0))
c0, d0 = clustering_coefficient(base), hop_plot(base).effective_diameter
for p in np.logspace(-4, 0, 9):
    g = generate(GenSpec("WS", 1000, k=10, p=float(p), seed=3))
    print(f"p={p:8.5f}  C/C0={clustering_coefficient(g) / c0:.3f}  "
          f"d/d0={hop_plot(g).effective_diameter / d0:.3f}")
